"""Heun parameter maps, local series, reductions and complex levels."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from dshydrogen import heun, make_params
from dshydrogen.errors import ConvergenceError, DomainError, RangeError
from dshydrogen.heun import (HeunParams, ads_free_spectrum, ds_complex_levels,
                             heun_local_series, heun_series,
                             hypergeometric_reduction, map_heun_ads,
                             map_heun_ds, radial_from_heun, time_decay_rate)
from dshydrogen.params import Geometry


def ode_residual(hp, x, h=1e-3):
    """Relative defect of the Heun equation with stencil derivatives."""
    ev = lambda z: heun_local_series(hp, z, tol=1e-14)[0]
    H = ev(x)
    Hm2, Hm1, Hp1, Hp2 = ev(x - 2 * h), ev(x - h), ev(x + h), ev(x + 2 * h)
    d1 = (Hm2 - 8 * Hm1 + 8 * Hp1 - Hp2) / (12 * h)
    d2 = (-Hm2 + 16 * Hm1 - 30 * H + 16 * Hp1 - Hp2) / (12 * h * h)
    P = hp.gamma / x + hp.delta / (x - 1) + hp.eps / (x + 1)
    Q = (hp.lam * hp.beta * x - hp.q) / (x * (x - 1) * (x + 1))
    return abs(d2 + P * d1 + Q * H) / (abs(d2) + abs(P * d1) + abs(Q * H) + 1e-300)


class TestDeSitterMap:
    def test_zero_coupling_kills_q_on_diagonal_branches(self):
        p = make_params("ds", E=1.7, alpha=0.0, M=4.0, l=1)
        assert map_heun_ds(p, "++").q == 0
        assert map_heun_ds(p, "--").q == 0

    def test_plus_plus_branch_table(self):
        p = make_params("ds", E=2.0, alpha=0.1, M=5.0, l=0)
        hp = map_heun_ds(p, "++")
        A = p.A
        assert hp.q == pytest.approx(2 * 0.1 * (2.0 - 1j * (A + 1)), abs=1e-14)
        root = 1j * math.sqrt(25 - 2.25)
        assert hp.lam == pytest.approx(1.5 + A + 2j + root, abs=1e-13)
        assert hp.beta == pytest.approx(1.5 + A + 2j - root, abs=1e-13)

    @pytest.mark.parametrize("branch,sB,sC", [
        ("++", 1, 1), ("--", -1, -1), ("+-", 1, -1), ("-+", -1, 1)])
    def test_generic_q_equals_branch_expansion(self, branch, sB, sC):
        p = make_params("ds", E=1.3, alpha=0.22, M=2.2, l=1)
        hp = map_heun_ds(p, branch)
        A = p.A
        # expanded forms of the four-branch table
        if branch in ("++", "--"):
            expected = 2 * p.alpha * (p.E - sB * 1j * (A + 1))
        else:
            expected = 2 * p.E * (p.alpha - sB * 1j * (A + 1))
        assert hp.q == pytest.approx(expected, rel=1e-13)
        assert hp.gamma == pytest.approx(2 + 2 * A)
        assert hp.delta == pytest.approx(1 + sB * 1j * (p.E + p.alpha))
        assert hp.eps == pytest.approx(1 + sC * 1j * (p.E - p.alpha))

    def test_fuchs_relation_all_branches(self):
        p = make_params("ds", E=0.9, alpha=0.3, M=1.7, l=2)
        for branch in heun.BRANCHES:
            hp = map_heun_ds(p, branch)
            assert abs(hp.fuchs_defect()) <= 1e-12
            prod = (1.5 + hp.A + hp.B + hp.C) ** 2 - (2.25 - p.M ** 2)
            assert hp.lam * hp.beta == pytest.approx(prod, rel=1e-12)

    def test_conjugation_between_diagonal_branches(self):
        p = make_params("ds", E=1.1, alpha=0.15, M=3.0, l=0)
        pp, mm = map_heun_ds(p, "++"), map_heun_ds(p, "--")
        assert mm.q == pytest.approx(pp.q.conjugate(), rel=1e-14)
        got = sorted((complex(mm.lam), complex(mm.beta)), key=lambda z: z.imag)
        ref = sorted((pp.lam.conjugate(), pp.beta.conjugate()), key=lambda z: z.imag)
        for g, r in zip(got, ref):
            assert g == pytest.approx(r, rel=1e-13)


class TestAntiDeSitterMap:
    def test_minus_minus_alpha_zero(self):
        M, l, E = 2.0, 1, 3.3
        p = make_params("ads", E=E, alpha=0.0, M=M, l=l)
        hp = map_heun_ads(p, "--")
        assert hp.q == 0
        assert hp.lam == pytest.approx(1.5 + l - E + math.sqrt(M * M + 2.25), rel=1e-14)

    def test_plus_minus_branch(self):
        p = make_params("ads", E=1.0, alpha=0.2, M=2.0, l=1)
        hp = map_heun_ads(p, "+-")
        A = p.A
        assert hp.q == pytest.approx(-2 * 1.0 * (1j * 0.2 + (A + 1)), rel=1e-13)
        assert hp.lam == pytest.approx(1.5 + A + 1j * 0.2 + math.sqrt(4 + 2.25), rel=1e-13)

    def test_fuchs_relation_all_branches(self):
        p = make_params("ads", E=2.4, alpha=0.12, M=1.1, l=1)
        for branch in heun.BRANCHES:
            assert abs(map_heun_ads(p, branch).fuchs_defect()) <= 1e-12

    def test_wrong_geometry_rejected(self):
        p = make_params("ads", E=1.0, alpha=0.0, M=1.0, l=0)
        with pytest.raises(DomainError):
            map_heun_ds(p, "++")


class TestLocalSeries:
    def test_value_and_slope_at_origin(self):
        p = make_params("ds", E=1.5, alpha=0.25, M=2.0, l=0)
        hp = map_heun_ds(p, "++")
        H, dH = heun_local_series(hp, 0.0)
        assert H == 1.0
        # series seed: c1 = -q/gamma
        assert dH == pytest.approx(-hp.q / hp.gamma, rel=1e-14)

    def test_constant_solution(self):
        hp = HeunParams(q=0.0, lam=0.0, beta=2.5, gamma=2.0, delta=1.0, eps=1.0,
                        A=0.0, B=0.0, C=0.0, branch="++", geometry=Geometry.DE_SITTER)
        for x in (0.1, 0.5, -0.7, 0.3j):
            H, dH = heun_local_series(hp, x)
            assert H == pytest.approx(1.0, abs=1e-14)
            assert abs(dH) <= 1e-14

    def test_recurrence_residual_of_coefficients(self):
        p = make_params("ds", E=1.1, alpha=0.2, M=2.5, l=1)
        series = heun_series(map_heun_ds(p, "-+"))
        for n in range(1, 60):
            assert series.recurrence_residual(n) <= 1e-14

    def test_ode_residual_random_parameter_sets(self):
        rng = np.random.default_rng(5)
        worst = 0.0
        for _ in range(40):
            geometry = rng.choice(["ds", "ads"])
            branch = rng.choice(list(heun.BRANCHES))
            l = int(rng.integers(0, 3))
            p = make_params(geometry, E=rng.uniform(0.3, 4.0),
                            alpha=rng.uniform(0.0, min(0.4, l + 0.45)),
                            M=rng.uniform(0.3, 5.0), l=l)
            hp = (map_heun_ds if geometry == "ds" else map_heun_ads)(p, branch)
            z = rng.uniform(0.05, 0.6) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            worst = max(worst, ode_residual(hp, z))
        assert worst <= 1e-8

    def test_nonconvergence_reports_achieved_error(self):
        p = make_params("ds", E=1.0, alpha=0.1, M=2.0, l=0)
        hp = map_heun_ds(p, "++")
        with pytest.raises(RangeError):
            heun_local_series(hp, 1.2)
        with pytest.raises(ConvergenceError) as info:
            heun_local_series(hp, 0.999999, tol=1e-15)
        assert info.value.achieved is not None

    def test_log_case_rejected(self):
        hp = HeunParams(q=0.1, lam=1.0, beta=1.0, gamma=0.0, delta=1.0, eps=1.0,
                        A=0.0, B=0.0, C=0.0, branch="++", geometry=Geometry.DE_SITTER)
        with pytest.raises(DomainError):
            heun_local_series(hp, 0.1)


class TestHypergeometricDegeneration:
    def test_heun_equals_gauss_function_of_x_squared(self):
        p = make_params("ads", E=3.7, alpha=0.0, M=2.0, l=1)
        hp = map_heun_ads(p, "--")
        hr = hypergeometric_reduction(p)
        for x in (0.1, 0.35, 0.5, 0.3j, 0.25 + 0.3j):
            H, _ = heun_local_series(hp, x, tol=1e-14)
            ref = complex(mpmath.hyp2f1(hr.a_param, hr.b_param, hr.c_param,
                                        complex(x) ** 2))
            assert H == pytest.approx(ref, rel=1e-8, abs=1e-10)

    def test_c_parameter(self):
        for l in range(4):
            p = make_params("ads", E=2.0, alpha=0.0, M=1.0, l=l)
            assert hypergeometric_reduction(p).c_param == l + 1.5

    def test_quantization_recovers_spectrum(self):
        M, l, n = 3.0, 2, 1
        E = ads_free_spectrum(n, l, M)
        hr = hypergeometric_reduction(make_params("ads", E=E, alpha=0.0, M=M, l=l))
        assert hr.a_param == pytest.approx(-n, abs=1e-12)
        # sum identity a + b = 3/2 + l - E
        assert hr.a_param + hr.b_param == pytest.approx(1.5 + l - E, rel=1e-12)

    def test_alpha_nonzero_rejected(self):
        p = make_params("ads", E=2.0, alpha=0.1, M=1.0, l=0)
        with pytest.raises(DomainError):
            hypergeometric_reduction(p)


class TestRadialFromHeun:
    def test_regular_at_origin(self):
        p = make_params("ds", E=1.2, alpha=0.2, M=2.0, l=0)
        hp = map_heun_ds(p, "++")
        for x in (1e-4, 1e-3):
            f = radial_from_heun(hp, x)
            assert abs(f) * math.sqrt(x) <= 1.0  # f ~ x^A with A > -1/2

    def test_branch_conjugation_real_axis(self):
        p = make_params("ds", E=1.4, alpha=0.18, M=2.3, l=1)
        f_pp = radial_from_heun(map_heun_ds(p, "++"), 0.3)
        f_mm = radial_from_heun(map_heun_ds(p, "--"), 0.3)
        assert f_pp == pytest.approx(f_mm.conjugate(), rel=1e-12)

    def test_radial_ode_residual(self):
        p = make_params("ds", E=2.0, alpha=0.1, M=5.0, l=1)
        hp = map_heun_ds(p, "++")
        E, alpha, M, ll = p.E, p.alpha, p.M, p.l * (p.l + 1)
        h = 1e-3
        for x in (0.1, 0.2, 0.3):
            fm2, fm1, f0, fp1, fp2 = (radial_from_heun(hp, x + k * h, tol=1e-14)
                                       for k in (-2, -1, 0, 1, 2))
            d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
            d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
            phi = 1 - x * x
            P = 2 * (1 - 2 * x * x) / (x * phi)
            Q = (E + alpha / x) ** 2 / phi ** 2 - (M * M + ll / (x * x)) / phi
            res = abs(d2 + P * d1 + Q * f0) / (abs(d2) + abs(P * d1) + abs(Q * f0))
            assert res <= 1e-7


class TestFreeSpectrum:
    def test_small_mass_limit(self):
        assert ads_free_spectrum(0, 0, 1e-9) == pytest.approx(3.0, abs=1e-9)

    def test_forced_arithmetic(self):
        assert ads_free_spectrum(1, 2, 2.0) == pytest.approx(2 + 2 + 1.5 + 2.5)

    def test_input_validation(self):
        with pytest.raises(DomainError):
            ads_free_spectrum(-1, 0, 1.0)
        with pytest.raises(DomainError):
            ads_free_spectrum(0, 0, 0.0)


class TestComplexLevels:
    def test_forced_arithmetic(self):
        p = make_params("ds", E=1.0, alpha=0.0, M=2.0, l=0)
        E = ds_complex_levels(0, 0, p, "--")
        assert E == pytest.approx(complex(math.sqrt(1.75), -1.5), rel=1e-14)

    def test_minus_minus_always_decays(self):
        p = make_params("ds", E=1.0, alpha=0.2, M=3.0, l=1)
        for n in range(4):
            for l in range(3):
                E = ds_complex_levels(n, l, p, "--")
                assert E.imag < 0.0
                assert E.real == pytest.approx(math.sqrt(9.0 - 2.25), rel=1e-14)

    def test_branches_are_exact_negatives(self):
        p = make_params("ds", E=1.0, alpha=0.1, M=2.5, l=0)
        for n in (0, 1, 5):
            assert ds_complex_levels(n, 0, p, "++") == -ds_complex_levels(n, 0, p, "--")

    def test_time_decay_identity(self):
        rho = 7.0
        p = make_params("ds", E=1.0, alpha=0.05, M=2.0, l=1, rho=rho)
        E = ds_complex_levels(2, 1, p, "--")
        kappa = 1.5 + 2 + p.A
        for t in (0.5, 3.0, 20.0):
            norm = abs(cmath.exp(-1j * (E / rho) * t)) ** 2
            assert norm == pytest.approx(math.exp(-2 * (t / rho) * kappa), rel=1e-13)
        assert time_decay_rate(E, rho) == pytest.approx(2 * kappa / rho, rel=1e-13)

    def test_mass_gap_required(self):
        p = make_params("ds", E=1.0, alpha=0.0, M=1.0, l=0)
        with pytest.raises(DomainError):
            ds_complex_levels(0, 0, p, "--")

    def test_off_diagonal_branch_rejected(self):
        p = make_params("ds", E=1.0, alpha=0.0, M=2.0, l=0)
        with pytest.raises(DomainError):
            ds_complex_levels(0, 0, p, "+-")
