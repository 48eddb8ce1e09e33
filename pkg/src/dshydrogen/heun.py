"""Reduction of the radial problems to the general Heun equation.

In the dimensionless variable (x = r/rho for de Sitter, x = i r/rho for
anti-de Sitter) the substitution peeling the local exponents,

    f = x^A (1 - x)^B (1 + x)^C H(x)      (de Sitter)
    f = x^A (x - 1)^B (x + 1)^C H(x)      (anti-de Sitter),

turns the radial equation into the general Heun equation with regular
singular points {0, 1, -1, infinity},

    H'' + (gamma/x + delta/(x-1) + eps/(x+1)) H'
        + (lambda beta x - q) / (x (x-1)(x+1)) H = 0,

with gamma = 2 + 2A, delta = 1 + 2B, eps = 1 + 2C and the exponent pair
lambda, beta = 3/2 + A + B + C +/- sqrt(9/4 -/+ M^2) (upper sign inside
the root: de Sitter).  A is fixed to the positive branch
-1/2 + sqrt((l+1/2)^2 - alpha^2) so f vanishes at the origin; the signs
of B and C are free, giving four solution branches per geometry:

    de Sitter:       B = +/- (i/2)(E + alpha),  C = +/- (i/2)(E - alpha),
                     q = 2 (E alpha - (1 + A)(B - C))
    anti-de Sitter:  B = +/- (1/2)(E + i alpha), C = +/- (1/2)(E - i alpha),
                     q = -2 (i E alpha + (1 + A)(B - C)).

Only the exponent-zero Frobenius solution at x = 0 is evaluated here
(three-term recurrence, radius of convergence 1); continuation toward
the horizon is the job of the direct integrator in
:mod:`dshydrogen.spectral`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError, RangeError
from .params import Geometry, PhysicalParams, exponent_A

__all__ = [
    "BRANCHES",
    "HeunParams",
    "HeunSeries",
    "HypergeometricReduction",
    "map_heun_ds",
    "map_heun_ads",
    "heun_series",
    "heun_local_series",
    "radial_from_heun",
    "ads_free_spectrum",
    "hypergeometric_reduction",
    "ds_complex_levels",
    "time_decay_rate",
]

BRANCHES = ("++", "--", "+-", "-+")

MAX_SERIES_TERMS = 10_000


def _parse_branch(branch) -> tuple[int, int]:
    if isinstance(branch, (tuple, list)) and len(branch) == 2:
        sB, sC = int(branch[0]), int(branch[1])
        if sB in (-1, 1) and sC in (-1, 1):
            return sB, sC
    if isinstance(branch, str) and len(branch) == 2 and set(branch) <= {"+", "-"}:
        return (1 if branch[0] == "+" else -1, 1 if branch[1] == "+" else -1)
    raise DomainError(f"branch must be one of {BRANCHES} (or a sign pair), got {branch!r}")


@dataclass(frozen=True)
class HeunParams:
    """Parameters of the general Heun equation with singularities {0, 1, -1, inf}.

    `a` is the third finite singular point, fixed to -1 here.  The
    peeling exponents (A, B, C), the originating sign branch and the
    geometry ride along so radial reconstruction needs no extra state.
    """

    q: complex
    lam: complex
    beta: complex
    gamma: complex
    delta: complex
    eps: complex
    A: complex
    B: complex
    C: complex
    branch: str
    geometry: Geometry
    a: float = -1.0

    def fuchs_defect(self) -> complex:
        """gamma + delta + eps - lambda - beta - 1; zero for a consistent set."""
        return self.gamma + self.delta + self.eps - self.lam - self.beta - 1.0


def _assemble(q, lam, beta, A, B, C, branch, geometry) -> HeunParams:
    return HeunParams(
        q=complex(q), lam=complex(lam), beta=complex(beta),
        gamma=complex(2 + 2 * A), delta=complex(1 + 2 * B), eps=complex(1 + 2 * C),
        A=complex(A), B=complex(B), C=complex(C),
        branch=branch, geometry=geometry,
    )


def map_heun_ds(params: PhysicalParams, branch) -> HeunParams:
    """de Sitter map onto Heun parameters for one (sign B, sign C) branch."""
    if params.geometry is not Geometry.DE_SITTER:
        raise DomainError("map_heun_ds needs de Sitter parameters")
    sB, sC = _parse_branch(branch)
    E, alpha, M = params.E, params.alpha, params.M
    A = exponent_A(params.l, alpha)
    B = sB * 0.5j * (E + alpha)
    C = sC * 0.5j * (E - alpha)
    root = cmath.sqrt(complex(2.25 - M * M))
    base = 1.5 + A + B + C
    q = 2.0 * (E * alpha - (1.0 + A) * (B - C))
    name = ("+" if sB > 0 else "-") + ("+" if sC > 0 else "-")
    return _assemble(q, base + root, base - root, A, B, C, name, Geometry.DE_SITTER)


def map_heun_ads(params: PhysicalParams, branch) -> HeunParams:
    """anti-de Sitter map; the Heun variable is x = i r/rho."""
    if params.geometry is not Geometry.ANTI_DE_SITTER:
        raise DomainError("map_heun_ads needs anti-de Sitter parameters")
    sB, sC = _parse_branch(branch)
    E, alpha, M = params.E, params.alpha, params.M
    A = exponent_A(params.l, alpha)
    B = sB * 0.5 * (E + 1j * alpha)
    C = sC * 0.5 * (E - 1j * alpha)
    root = math.sqrt(M * M + 2.25)
    base = 1.5 + A + B + C
    q = -2.0 * (1j * E * alpha + (1.0 + A) * (B - C))
    name = ("+" if sB > 0 else "-") + ("+" if sC > 0 else "-")
    return _assemble(q, base + root, base - root, A, B, C, name, Geometry.ANTI_DE_SITTER)


class HeunSeries:
    """Frobenius solution H = sum c_k x^k at x = 0 with H(0) = 1.

    Coefficients obey the three-term recurrence (from the equation
    cleared of denominators, i.e. multiplied by x (x-1)(x+1))

        (n+1)(n+gamma) c_{n+1} =
            ((delta - eps) n - q) c_n + (n-1+lambda)(n-1+beta) c_{n-1},

    extended lazily and cached on the instance; instances themselves are
    cached per parameter set, so sharing across threads costs only
    redundant extension work, never wrong values.
    """

    def __init__(self, params: HeunParams):
        g = params.gamma
        if abs(g.imag) < 1e-300 and g.real <= 0 and abs(g.real - round(g.real)) < 1e-12:
            raise DomainError(
                f"gamma = {g} is a non-positive integer: the exponent-zero "
                "Frobenius solution degenerates (logarithmic case, unsupported)"
            )
        self.params = params
        self._coeffs = [complex(1.0)]
        self.trunc_error_estimate = math.inf

    @property
    def coeffs(self) -> np.ndarray:
        return np.array(self._coeffs)

    def _extend(self, upto: int) -> None:
        p = self.params
        c = self._coeffs
        while len(c) <= upto:
            n = len(c) - 1
            prev = c[n - 1] if n >= 1 else 0.0
            num = ((p.delta - p.eps) * n - p.q) * c[n] \
                + (n - 1 + p.lam) * (n - 1 + p.beta) * prev
            c.append(num / ((n + 1) * (n + p.gamma)))

    def recurrence_residual(self, n: int) -> float:
        """Relative defect of coefficient n+1 in the recurrence (roundoff scale)."""
        self._extend(n + 1)
        p = self.params
        c = self._coeffs
        prev = c[n - 1] if n >= 1 else 0.0
        lhs = (n + 1) * (n + p.gamma) * c[n + 1]
        rhs = ((p.delta - p.eps) * n - p.q) * c[n] + (n - 1 + p.lam) * (n - 1 + p.beta) * prev
        scale = max(abs(lhs), abs(rhs), 1e-300)
        return abs(lhs - rhs) / scale

    def evaluate(self, x: complex, tol: float = 1e-12) -> tuple[complex, complex]:
        """Evaluate (H, dH/dx) by adaptive partial sums.

        Stops once two consecutive terms together drop below
        tol * |partial sum|; raises :class:`ConvergenceError` carrying
        the achieved estimate if the hard cap is hit first (|x| too
        close to the unit circle).
        """
        x = complex(x)
        if abs(x) >= 1.0:
            raise RangeError(
                f"|x| = {abs(x)} >= 1: outside the convergence disc set by the "
                "singular points at +/-1"
            )
        H = complex(0.0)
        dH = complex(0.0)
        xk = complex(1.0)      # x^k
        term_prev = math.inf
        k = 0
        while k < MAX_SERIES_TERMS:
            self._extend(k)
            ck = self._coeffs[k]
            term = ck * xk
            H += term
            if k >= 1:
                dH += k * ck * xk / x if x != 0 else (ck if k == 1 else 0.0)
            size = abs(term)
            if k >= 8 and size + term_prev <= tol * max(abs(H), 1e-300):
                self.trunc_error_estimate = size + term_prev
                return H, dH
            term_prev = size
            xk *= x
            k += 1
        self.trunc_error_estimate = term_prev
        raise ConvergenceError(
            f"Heun series did not meet tol={tol} within {MAX_SERIES_TERMS} terms "
            f"at |x| = {abs(x)}; achieved ~{term_prev:.3e}",
            achieved=term_prev,
        )


@lru_cache(maxsize=256)
def heun_series(params: HeunParams) -> HeunSeries:
    """Cached series handle for a parameter set."""
    return HeunSeries(params)


def heun_local_series(params: HeunParams, x: complex, tol: float = 1e-12):
    """Evaluate the exponent-zero local solution: returns (H, dH/dx)."""
    return heun_series(params).evaluate(x, tol=tol)


def radial_from_heun(params: HeunParams, x: complex, tol: float = 1e-12) -> complex:
    """Radial function f(x) = peel(x) * H(x) for the stored geometry.

    de Sitter expects real x in (0, 1); anti-de Sitter expects
    x = i r/rho on the positive imaginary axis.  Complex powers use
    principal branches.
    """
    x = complex(x)
    H, _ = heun_local_series(params, x, tol=tol)
    if params.geometry is Geometry.DE_SITTER:
        peel = x ** params.A * (1 - x) ** params.B * (1 + x) ** params.C
    else:
        peel = x ** params.A * (x - 1) ** params.B * (x + 1) ** params.C
    return peel * H


def ads_free_spectrum(n: int, l: int, M: float) -> float:
    """Exact anti-de Sitter spectrum at zero coupling:

    E_n = 2n + l + 3/2 + sqrt(9/4 + M^2).
    """
    if n != int(n) or n < 0 or l != int(l) or l < 0:
        raise DomainError(f"n and l must be non-negative integers, got n={n}, l={l}")
    if M <= 0:
        raise DomainError(f"M must be > 0, got {M}")
    return 2.0 * n + l + 1.5 + math.sqrt(2.25 + M * M)


@dataclass(frozen=True)
class HypergeometricReduction:
    """Gauss-function data of the zero-coupling anti-de Sitter problem.

    In y = x^2 the radial solution is f = y^A (y-1)^B 2F1(a, b; c; y)
    with A = l/2, B = -E/2; polynomial truncation a = -n reproduces
    :func:`ads_free_spectrum`.
    """

    a_param: float
    b_param: float
    c_param: float
    A: float
    B: float


def hypergeometric_reduction(params: PhysicalParams) -> HypergeometricReduction:
    """Parameters (a, b, c) of the alpha = 0 anti-de Sitter reduction.

    a, b = (3/2 + l - E -/+ ... )/2:
        a = (3/2 + l - E + sqrt(9/4 + M^2)) / 2
        b = (3/2 + l - E - sqrt(9/4 + M^2)) / 2
        c = l + 3/2
    """
    if params.geometry is not Geometry.ANTI_DE_SITTER:
        raise DomainError("the hypergeometric reduction applies to anti-de Sitter")
    if params.alpha != 0.0:
        raise DomainError(f"the reduction needs alpha = 0, got {params.alpha}")
    E, M, l = params.E, params.M, params.l
    root = math.sqrt(2.25 + M * M)
    return HypergeometricReduction(
        a_param=0.5 * (1.5 + l - E + root),
        b_param=0.5 * (1.5 + l - E - root),
        c_param=l + 1.5,
        A=l / 2.0,
        B=-E / 2.0,
    )


def ds_complex_levels(n: int, l: int, params: PhysicalParams, branch) -> complex:
    """Speculative complex de Sitter levels from polynomial truncation.

    Setting lambda = -n in the (+,+) or (-,-) branch gives

        (+,+):  E = +i (3/2 + n + A) - sqrt(M^2 - 9/4)
        (-,-):  E = -i (3/2 + n + A) + sqrt(M^2 - 9/4),

    exact mutual negatives.  Truncation of the exponent pair alone does
    not guarantee a genuinely polynomial solution (the accessory
    parameter would have to satisfy a separate determinant condition,
    which is not checked here).

    Raises
    ------
    DomainError
        If M <= 3/2, where sqrt(M^2 - 9/4) leaves the real axis.
    """
    sB, sC = _parse_branch(branch)
    if sB != sC:
        raise DomainError("complex levels exist only for the (+,+) and (-,-) branches")
    if n != int(n) or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    M = params.M
    if M <= 1.5:
        raise DomainError(
            f"M = {M} <= 3/2: sqrt(M^2 - 9/4) must be real for these levels"
        )
    A = exponent_A(l, params.alpha)
    gamma_r = math.sqrt(M * M - 2.25)
    kappa = 1.5 + n + A
    if sB > 0:
        return complex(-gamma_r, +kappa)
    return complex(+gamma_r, -kappa)


def time_decay_rate(E: complex, rho: float) -> float:
    """Decay rate of |exp(-i eps t)|^2 for eps = E/rho: returns -2 Im(E)/rho.

    Positive for the (-,-) branch levels, whose norm decays like
    exp(-2 (t/rho)(3/2 + n + A)).
    """
    return -2.0 * E.imag / rho
