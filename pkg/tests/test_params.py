"""Parameter records, validation and the origin exponent."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dshydrogen import (Geometry, classical_from_quantum, exponent_A,
                        make_classical, make_params, params_from_physical,
                        params_to_physical)
from dshydrogen.errors import DomainError


def test_valid_record_trivial():
    p = make_params("ads", E=3.0, alpha=0.0, M=1.0, l=0)
    assert p.geometry is Geometry.ANTI_DE_SITTER
    assert p.E == 3.0 and p.alpha == 0.0 and p.M == 1.0 and p.l == 0


def test_alpha_wall_rejected():
    with pytest.raises(DomainError, match=r"\(l\+1/2\)\^2 - alpha\^2"):
        make_params("ds", E=1.0, alpha=0.6, M=5.0, l=0)


def test_valid_record_with_exponent():
    p = make_params("ds", E=10.0, alpha=1.0 / 137.0, M=100.0, l=1)
    # independent arbitrary-precision evaluation of -1/2 + sqrt(9/4 - (1/137)^2)
    assert p.A == pytest.approx(0.99998224011366265014, abs=1e-15)


@pytest.mark.parametrize("l,alpha,expected", [
    (0, 0.0, 0.0),
    (2, 0.0, 2.0),
    (0, 0.3, -0.5 + math.sqrt(0.25 - 0.09)),
])
def test_exponent_examples(l, alpha, expected):
    assert exponent_A(l, alpha) == pytest.approx(expected, abs=1e-15)


@given(l=st.integers(min_value=0, max_value=40))
def test_exponent_reduces_to_l_at_zero_coupling(l):
    assert exponent_A(l, 0.0) == pytest.approx(float(l), abs=1e-12)


def test_exponent_domain_error():
    with pytest.raises(DomainError):
        exponent_A(1, 1.5)


@pytest.mark.parametrize("kwargs", [
    dict(E=1.0, alpha=-0.1, M=1.0, l=0),
    dict(E=1.0, alpha=0.1, M=0.0, l=0),
    dict(E=1.0, alpha=0.1, M=1.0, l=-1),
    dict(E=1.0, alpha=0.1, M=1.0, l=0, rho=0.0),
])
def test_rejects_bad_inputs(kwargs):
    with pytest.raises(DomainError):
        make_params("ds", **kwargs)


@settings(max_examples=200, deadline=None)
@given(
    eps=st.floats(min_value=1e-3, max_value=1e3),
    e2=st.floats(min_value=0.0, max_value=0.49),
    M_phys=st.floats(min_value=1e-3, max_value=1e3),
    rho=st.floats(min_value=1e-2, max_value=1e6),
    l=st.integers(min_value=0, max_value=5),
)
def test_physical_round_trip(eps, e2, M_phys, rho, l):
    p = params_from_physical("ads", eps, e2, M_phys, l, rho)
    eps2, e22, M2, rho2 = params_to_physical(p)
    assert eps2 == pytest.approx(eps, rel=1e-14)
    assert e22 == pytest.approx(e2, rel=1e-14, abs=1e-300)
    assert M2 == pytest.approx(M_phys, rel=1e-14)
    assert rho2 == rho


def test_classical_from_quantum_langer():
    p = make_params("ds", E=995.0, alpha=0.1, M=1000.0, l=1, rho=1000.0)
    cp = classical_from_quantum(p)
    assert cp.L == 1.5
    assert cp.epsilon == pytest.approx(0.995)
    assert cp.M == pytest.approx(1.0)
    assert cp.e2 == 0.1 and cp.rho == 1000.0
    cp2 = classical_from_quantum(p, langer=False)
    assert cp2.L == pytest.approx(math.sqrt(2.0))


def test_geometry_parse_and_classical_validation():
    assert Geometry.parse("DS") is Geometry.DE_SITTER
    assert Geometry.parse("flat") is Geometry.MINKOWSKI
    with pytest.raises(DomainError):
        Geometry.parse("hyperbolic")
    with pytest.raises(DomainError):
        make_classical("ds", 1.0, -1.0, 0.1, 1.0, 1.0)
