"""Turning-point machinery: momentum, quartic, classification, tortoise."""

import math

import numpy as np
import pytest

from dshydrogen import (Geometry, WellTopology, classify_turning_points,
                        horizon_velocity, make_classical, momentum_squared,
                        quartic_coefficients, tortoise, tortoise_inverse,
                        tortoise_momentum_squared)
from dshydrogen.classical import quartic_roots
from dshydrogen.errors import RangeError, RegimeError


def bisect_roots(cp, lo, hi, n_grid=20000):
    """Independent turning-point oracle: bisection on momentum sign changes."""
    xs = np.linspace(lo, hi, n_grid)
    vals = np.array([momentum_squared(cp, x) for x in xs])
    roots = []
    for i in range(len(xs) - 1):
        if vals[i] == 0.0:
            roots.append(xs[i])
        elif vals[i] * vals[i + 1] < 0.0:
            a, b = xs[i], xs[i + 1]
            for _ in range(80):
                m = 0.5 * (a + b)
                if momentum_squared(cp, a) * momentum_squared(cp, m) <= 0.0:
                    b = m
                else:
                    a = m
            roots.append(0.5 * (a + b))
    return roots


class TestMomentumSquared:
    def test_minkowski_rest_particle(self):
        cp = make_classical("flat", epsilon=1.0, L=0.0, e2=0.0, M=1.0, rho=1.0)
        for r in (0.1, 1.0, 17.3):
            assert momentum_squared(cp, r) == 0.0

    def test_ds_free_particle_limits(self):
        cp = make_classical("ds", epsilon=1.2, L=1.0, e2=0.0, M=1.0, rho=1.0)
        assert momentum_squared(cp, 1e-6) < 0.0          # ~ -L^2/r^2
        assert momentum_squared(cp, 1.0 - 1e-6) > 0.0    # blows up at the horizon

    def test_ds_value_against_high_precision(self):
        cp = make_classical("ds", epsilon=2.0, L=1.0, e2=0.1, M=1.0, rho=100.0)
        # arbitrary-precision evaluation of the defining expression
        assert momentum_squared(cp, 1.0) == pytest.approx(2.4106821123156420052, rel=1e-15)

    def test_poles_reported(self):
        cp = make_classical("ds", epsilon=1.0, L=1.0, e2=0.0, M=1.0, rho=2.0)
        with pytest.raises(RangeError):
            momentum_squared(cp, 0.0)
        with pytest.raises(RangeError):
            momentum_squared(cp, 2.0)


class TestQuarticCoefficients:
    def test_ds_free_particle_biquadratic_roots(self):
        eps, L, M, rho = 1.4, 1.0, 1.0, 7.0
        cp = make_classical("ds", eps, L, 0.0, M, rho)
        roots = quartic_roots(cp)
        A = (eps**2 - M**2) / M**2 + L**2 / (M**2 * rho**2)
        inner = math.sqrt(A**2 / 4 + L**2 / (M**2 * rho**2))
        expected = rho * math.sqrt(-A / 2 + inner)
        reals = sorted(z.real for z in roots if abs(z.imag) < 1e-10)
        assert max(reals) == pytest.approx(expected, rel=1e-12)
        assert min(reals) == pytest.approx(-expected, rel=1e-12)

    @pytest.mark.parametrize("geometry", ["ds", "ads"])
    def test_vieta_identities(self, geometry):
        rng = np.random.default_rng(11)
        for _ in range(50):
            e2 = rng.uniform(0.01, 0.4)
            cp = make_classical(geometry, rng.uniform(0.3, 1.6),
                                rng.uniform(2 * e2, 3.0), e2, 1.0,
                                rng.uniform(10, 1e4))
            c = quartic_coefficients(cp)
            roots = quartic_roots(cp)
            assert abs(np.sum(roots)) <= 1e-10 * max(1.0, np.max(np.abs(roots)))
            prod = complex(np.prod(roots))
            target = c.c0 / c.c4
            assert prod == pytest.approx(target, rel=1e-10)

    def test_roots_are_momentum_zeros(self):
        cp = make_classical("ds", 0.9, 2.0, 0.01, 1.0, 50.0)
        c = quartic_coefficients(cp)
        scale = max(abs(v) for v in (c.c4, c.c2, c.c1, c.c0))
        for z in quartic_roots(cp):
            if abs(z.imag) < 1e-10 and 0 < z.real < cp.rho:
                # residual measured on the cleared polynomial scale
                poly = np.polyval(c.as_array(), z.real)
                assert abs(poly) <= 1e-9 * scale

    def test_flat_rejected(self):
        cp = make_classical("flat", 1.0, 1.0, 0.1, 1.0, 1.0)
        with pytest.raises(Exception):
            quartic_coefficients(cp)


class TestClassification:
    def test_ds_free_particle(self):
        cp = make_classical("ds", 1.3, 1.0, 0.0, 1.0, 20.0)
        qr, well = classify_turning_points(cp)
        assert qr.topology is WellTopology.FREE_PARTICLE
        assert qr.sign_pattern.count("z") == 2
        assert sorted(s for s in qr.sign_pattern if s != "z") == ["+", "-"]
        assert well is None

    def test_ads_patterns(self):
        # bound regime: flat-space well pair positive, far pair complex
        cp = make_classical("ads", 0.999, 1.0, 0.05, 1.0, 1000.0)
        qr, well = classify_turning_points(cp)
        assert qr.sign_pattern == "zz++"
        assert well is None
        # above the mass gap all four roots are real: the unique pattern
        cp2 = make_classical("ads", 1.4, 1.0, 0.05, 1.0, 100.0)
        qr2, _ = classify_turning_points(cp2)
        assert qr2.sign_pattern == "--++"
        assert qr2.topology is WellTopology.PURE_WELL
        reals = sorted(z.real for z in qr2.roots)
        assert reals[3] > reals[2] > 0

    def test_ds_barrier_well_with_bisection_oracle(self):
        cp = make_classical("ds", 0.995, 1.0, 0.2, 1.0, 1e4)
        qr, well = classify_turning_points(cp)
        assert qr.topology is WellTopology.BARRIER_WELL
        assert qr.sign_pattern == "-+++"
        oracle = bisect_roots(cp, 1e-3, cp.rho * (1 - 1e-9))
        assert len(oracle) == 3
        for got, ref in zip((well.r1, well.r2, well.r3), oracle):
            assert got == pytest.approx(ref, rel=1e-6)
        assert 0 < well.r1 < well.r2 < well.r3 < cp.rho
        assert well.well_interval == (well.r1, well.r2)
        assert well.barrier_interval == (well.r2, well.r3)

    def test_inner_forbidden_mirror(self):
        # negative energies mirror the barrier well through r -> -r
        cp = make_classical("ds", -0.995, 1.0, 0.2, 1.0, 1e4)
        qr, well = classify_turning_points(cp)
        assert qr.topology is WellTopology.INNER_FORBIDDEN
        assert qr.sign_pattern == "---+"
        assert well is None

    def test_fall_to_center_rejected(self):
        cp = make_classical("ds", 0.9, 0.1, 0.4, 1.0, 100.0)
        with pytest.raises(RegimeError, match="L\\^2"):
            classify_turning_points(cp)

    def test_real_tol_threshold_sensitivity(self):
        # a complex pair close to the axis flips to 'real' for loose tolerance
        cp = make_classical("ads", 0.9497, 0.826, 0.266, 1.0, 100.0)
        qr_tight, _ = classify_turning_points(cp, real_tol=1e-8)
        assert qr_tight.sign_pattern == "zz++"
        qr_loose, _ = classify_turning_points(cp, real_tol=1e12)
        assert "z" not in qr_loose.sign_pattern

    @pytest.mark.parametrize("geometry,n_draws", [("ds", 2000), ("ads", 2000)])
    def test_sign_pattern_exclusions_random(self, geometry, n_draws):
        rng = np.random.default_rng(42 if geometry == "ds" else 43)
        forbidden_ds = {"--++", "----", "++++"}
        allowed_ads = {"--++"}
        for _ in range(n_draws):
            e2 = rng.uniform(0.005, 0.45)
            L = rng.uniform(max(1.05 * e2, 0.5), 3.0)
            base = math.sqrt(max(0.0, 1.0 - e2 * e2 / (L * L)))
            u = rng.uniform(base * 1.001, 1.8)
            cp = make_classical(geometry, u * 1.0, L, e2, 1.0,
                                rng.uniform(20.0, 1e4))
            qr, _ = classify_turning_points(cp)
            pat = qr.sign_pattern
            if geometry == "ds":
                assert pat not in forbidden_ds
                if "z" not in pat:
                    assert pat in ("-+++", "---+")
            else:
                if "z" not in pat:
                    assert pat in allowed_ads
                else:
                    # complex pair on the left, both real roots positive
                    assert pat in ("zz++", "zzzz")
                    if pat == "zz++":
                        rez = [z.real for z in qr.roots
                               if abs(z.imag) > 1e-8 * (1 + abs(z.real))]
                        assert all(r < 0 for r in rez)


class TestTortoise:
    def test_fixed_points(self):
        assert tortoise(0.0, 5.0) == 0.0
        assert tortoise(0.999999 * 5.0, 5.0) > 6.0 * 5.0
        assert tortoise(50.0, 100.0) == pytest.approx(54.93061443340548457, rel=1e-14)

    def test_round_trip(self):
        rho = 3.7
        for x in np.linspace(0.0, 1.0 - 1e-6, 200):
            r = x * rho
            assert tortoise_inverse(tortoise(r, rho), rho) == pytest.approx(r, abs=1e-13 * rho)

    def test_monotone(self):
        rho = 2.0
        rs = [tortoise(r, rho) for r in np.linspace(0.0, rho * (1 - 1e-8), 100)]
        assert all(b > a for a, b in zip(rs, rs[1:]))

    def test_range_error(self):
        with pytest.raises(RangeError):
            tortoise(2.0, 2.0)


class TestTortoiseMomentum:
    def test_horizon_limit(self):
        cp = make_classical("ds", 0.8, 1.0, 0.1, 1.0, 10.0)
        target = (cp.epsilon + cp.e2 / cp.rho) ** 2
        got = tortoise_momentum_squared(cp, (1.0 - 1e-8) * cp.rho)
        assert abs(got - target) <= 1e-5 * target

    def test_small_r_free(self):
        cp = make_classical("ds", 1.0, 0.5, 0.0, 1.0, 1e6)
        r = 1.0
        assert tortoise_momentum_squared(cp, r) == pytest.approx(
            momentum_squared(cp, r), rel=1e-10)

    def test_definition(self):
        cp = make_classical("ds", 0.9, 1.2, 0.2, 1.0, 8.0)
        r = 3.0
        phi = 1.0 - (r / cp.rho) ** 2
        assert tortoise_momentum_squared(cp, r) == phi * phi * momentum_squared(cp, r)


class TestHorizonVelocity:
    def test_boundary(self):
        cp = make_classical("ds", 1.0, 1.0, 0.0, 1.0, 10.0)
        v, sub = horizon_velocity(cp)
        assert v == pytest.approx(1.0) and sub is False

    def test_forced_arithmetic(self):
        cp = make_classical("ds", 0.5, 1.0, 1.0, 1.0, 10.0)
        v, sub = horizon_velocity(cp)
        assert v == pytest.approx(0.6) and sub is True

    def test_matches_proper_velocity_limit(self):
        cp = make_classical("ds", 0.7, 1.3, 0.15, 1.0, 25.0)
        v, _ = horizon_velocity(cp)
        r = (1.0 - 1e-9) * cp.rho
        v2 = (cp.epsilon + cp.e2 / r) ** 2 / cp.M ** 2 \
            - (1.0 + cp.L ** 2 / (cp.M ** 2 * r * r)) * (1.0 - (r / cp.rho) ** 2)
        assert v == pytest.approx(math.sqrt(v2), rel=1e-7)
