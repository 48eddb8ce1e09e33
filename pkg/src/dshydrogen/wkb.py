"""Quasi-classical machinery: turning-point expansions, energy levels, tunneling.

Large curvature radius rho puts the Coulomb well at r << rho, so the
quartic turning points split into a flat-space pair r01 < r02 plus a far
pair of order rho.  Quantizing the radial action

    S(eps, rho) = int_{r1}^{r2} |p_r| dr = pi (n + 1/2)

at leading order gives the flat-space level

    eps0 = M [1 + e^4 / ((n + 1/2) + sqrt((l+1/2)^2 - e^4))^2]^(-1/2),

which for the scalar Coulomb problem coincides with the exact flat
spectrum (Langer angular momentum L = l + 1/2).  The order rho^-2 term of
the expanded action integral has the closed form implemented in
:func:`delta_correction`; it enters with opposite signs in de Sitter and
anti-de Sitter, eps = eps0 + Delta/rho^2 (dS) and eps0 - Delta/rho^2
(AdS).  A quadrature of the exact action is provided as an independent
cross-check oracle.

Natural units hbar = c = 1; the Compton wavelength used by the rough
decay estimate is 1/M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad
from scipy.optimize import brentq

from .classical import WellDiagnostics, classify_turning_points, momentum_squared
from .errors import ConvergenceError, DomainError, RangeError, RegimeError, TopologyError
from .params import ClassicalParams, Geometry, make_classical

__all__ = [
    "TurningExpansion",
    "WkbLevel",
    "flat_turning_points",
    "ds_turning_expansion",
    "ads_turning_expansion",
    "approx_momentum",
    "wkb_eps0",
    "delta_correction",
    "wkb_energy_ds",
    "wkb_energy_ads",
    "quantization_residual",
    "action_integral",
    "action_quantized_energy",
    "tunneling_probability",
    "rough_decay_estimate",
]

# Validity knob for the "well far from the horizon scale" region r << rho.
WELL_REGION_FRACTION = 0.1


@dataclass(frozen=True)
class TurningExpansion:
    """Perturbative turning points r_i = r0i +/- Delta_i/rho^2.

    r01 < r02 are the flat-space well edges, Delta1/Delta2 their
    curvature shifts (+ sign in de Sitter, - in anti-de Sitter), and
    r3/r4 the far roots: real ~ +/-rho in de Sitter, a conjugate pair
    with imaginary leading part +/- i rho sqrt(1 - eps^2/M^2) in
    anti-de Sitter.
    """

    r01: float
    r02: float
    Delta1: float
    Delta2: float
    r3: complex
    r4: complex
    rho: float
    geometry: Geometry

    @property
    def r1(self) -> float:
        sign = 1.0 if self.geometry is Geometry.DE_SITTER else -1.0
        return self.r01 + sign * self.Delta1 / self.rho ** 2

    @property
    def r2(self) -> float:
        sign = 1.0 if self.geometry is Geometry.DE_SITTER else -1.0
        return self.r02 + sign * self.Delta2 / self.rho ** 2


@dataclass(frozen=True)
class WkbLevel:
    """Quasi-classical energy level eps = eps0 +/- Delta_corr/rho^2."""

    n: int
    l: int
    eps0: float
    Delta_corr: float
    eps: float
    geometry: Geometry


def _flat_discriminant(eps: float, L: float, e2: float, M: float) -> float:
    return e2 * e2 * eps * eps - (L * L - e2 * e2) * (M * M - eps * eps)


def flat_turning_points(cp: ClassicalParams) -> tuple[float, float]:
    """Both positive roots of the flat-space momentum, bound regime.

    Solves (eps^2 - M^2) r^2 + 2 eps e^2 r + (e^4 - L^2) = 0 for
    L^2 > e^4 and eps < M:

        r_-/+ = [e^2 eps -/+ sqrt(e^4 eps^2 - (L^2 - e^4)(M^2 - eps^2))]
                / (M^2 - eps^2).

    Raises
    ------
    RegimeError
        If L^2 <= e^4, eps >= M, or the discriminant is not positive
        (no classical well).
    """
    eps, L, e2, M = cp.epsilon, cp.L, cp.e2, cp.M
    if L * L <= e2 * e2:
        raise RegimeError(f"L^2 = {L*L} <= e^4 = {e2*e2}: fall-to-center regime rejected")
    if eps >= M:
        raise RegimeError(f"bound regime needs eps < M, got eps={eps}, M={M}")
    disc = _flat_discriminant(eps, L, e2, M)
    if disc <= 0.0:
        raise RegimeError(
            f"no classical well: discriminant e^4 eps^2 - (L^2-e^4)(M^2-eps^2) = {disc} <= 0"
        )
    s = math.sqrt(disc)
    d = M * M - eps * eps
    return (e2 * eps - s) / d, (e2 * eps + s) / d


def _delta_shift(r0: float, eps: float, L: float, e2: float, M: float) -> float:
    """Curvature shift coefficient of a flat turning point,

    Delta = -r0^2 (L^2 + M^2 r0^2) / [2 e^2 eps + 2 r0 (eps^2 - M^2)].
    """
    denom = 2.0 * e2 * eps + 2.0 * r0 * (eps * eps - M * M)
    return -r0 * r0 * (L * L + M * M * r0 * r0) / denom


def _turning_expansion(cp: ClassicalParams, geometry: Geometry) -> TurningExpansion:
    eps, L, e2, M, rho = cp.epsilon, cp.L, cp.e2, cp.M, cp.rho
    r01, r02 = flat_turning_points(cp)
    d1 = _delta_shift(r01, eps, L, e2, M)
    d2 = _delta_shift(r02, eps, L, e2, M)
    s = math.sqrt(1.0 - eps * eps / (M * M))
    shift = e2 * eps / (M * M - eps * eps)
    if geometry is Geometry.DE_SITTER:
        r3: complex = rho * s - shift
        r4: complex = -rho * s - shift
    else:
        r3 = complex(-shift, rho * s)
        r4 = complex(-shift, -rho * s)
    exp = TurningExpansion(r01=r01, r02=r02, Delta1=d1, Delta2=d2,
                           r3=r3, r4=r4, rho=rho, geometry=geometry)
    guard = r02 + abs(d2) / rho ** 2
    if guard >= abs(r3) / 2.0:
        raise RegimeError(
            f"large-rho expansion outside its regime: r02 + |Delta2|/rho^2 = {guard} "
            f"is not below |r3|/2 = {abs(r3)/2.0}"
        )
    return exp


def ds_turning_expansion(cp: ClassicalParams) -> TurningExpansion:
    """de Sitter expansion r_i = r0i + Delta_i/rho^2, far roots ~ +/-rho."""
    return _turning_expansion(cp, Geometry.DE_SITTER)


def ads_turning_expansion(cp: ClassicalParams) -> TurningExpansion:
    """anti-de Sitter mirror (rho^2 -> -rho^2): r_i = r0i - Delta_i/rho^2."""
    return _turning_expansion(cp, Geometry.ANTI_DE_SITTER)


def momentum_prefactor_A(eps: float, M: float) -> float:
    """Curvature prefactor A = 1 - 1/(2(1 - eps^2/M^2)) of the well momentum."""
    return 1.0 - 1.0 / (2.0 * (1.0 - eps * eps / (M * M)))


def approx_momentum(cp: ClassicalParams, r: float,
                    max_r_fraction: float = WELL_REGION_FRACTION) -> float:
    """Approximate |p_r| inside the well for r << rho.

    p_r ~ M sqrt((r - r1)(r2 - r)) / r * sqrt(1 - eps^2/M^2)
          * (1 +/- A r^2/rho^2)      (+ de Sitter, - anti-de Sitter)

    Valid only for r below ``max_r_fraction * rho`` (configurable; the
    expansion gives no sharper boundary).
    """
    if not 0.0 < r < max_r_fraction * cp.rho:
        raise RangeError(
            f"approx_momentum needs 0 < r < {max_r_fraction} * rho = "
            f"{max_r_fraction * cp.rho}, got {r}"
        )
    if cp.geometry is Geometry.DE_SITTER:
        exp = ds_turning_expansion(cp)
        sign = +1.0
    elif cp.geometry is Geometry.ANTI_DE_SITTER:
        exp = ads_turning_expansion(cp)
        sign = -1.0
    else:
        raise DomainError("approx_momentum needs a curved geometry")
    product = (r - exp.r1) * (exp.r2 - r)
    if product < 0.0:
        raise RangeError(f"r = {r} lies outside the well [{exp.r1}, {exp.r2}]")
    s = math.sqrt(1.0 - cp.epsilon ** 2 / cp.M ** 2)
    A = momentum_prefactor_A(cp.epsilon, cp.M)
    return cp.M * math.sqrt(product) / r * s * (1.0 + sign * A * r * r / cp.rho ** 2)


def wkb_eps0(n: int, l: int, e2: float, M: float) -> float:
    """Flat-space quasi-classical level (exact for the scalar Coulomb problem).

    eps0 = M [1 + e^4/((n + 1/2) + sqrt((l+1/2)^2 - e^4))^2]^(-1/2).
    """
    if e2 <= 0.0:
        raise DomainError("the Coulomb level formula needs e^2 > 0; "
                          "use the free-particle results instead")
    L = l + 0.5
    if e2 * e2 >= L * L:
        raise DomainError(
            f"e^4 = {e2*e2} >= (l+1/2)^2 = {L*L}: radicand of the level formula"
        )
    denom = (n + 0.5 + math.sqrt(L * L - e2 * e2)) ** 2
    return M / math.sqrt(1.0 + e2 * e2 / denom)


def delta_correction(n: int, l: int, e2: float, M: float) -> float:
    """Order rho^-2 coefficient of the quantized action, de Sitter sign.

    Expanding the exact action S(eps, rho) = S0(eps) + S1(eps)/rho^2 and
    solving S = pi(n + 1/2) gives eps = eps0 + Delta/rho^2 with

        Delta = -(eps0 / (2 M^2)) [ M^2 m^2 + (M^2 - eps0^2) h^2
                                    + (3/2) M^2 h^2 + L^2 ],

    written via the well midpoint m = e^2 eps0/(M^2 - eps0^2) and
    half-width h, h^2 = m^2 - (L^2 - e^4)/(M^2 - eps0^2).  The
    anti-de Sitter coefficient is exactly -Delta (rho^2 -> -rho^2), so
    the two geometries shift eps0 antisymmetrically at this order.
    Validated against brute-force quadrature of the exact action.
    """
    L = l + 0.5
    eps0 = wkb_eps0(n, l, e2, M)
    d = M * M - eps0 * eps0
    m = e2 * eps0 / d
    pi0 = (L * L - e2 * e2) / d
    h2 = m * m - pi0
    return -(eps0 / (2.0 * M * M)) * (d * h2 + M * M * m * m + 1.5 * M * M * h2 + L * L)


def _wkb_level(n: int, l: int, cp_template: ClassicalParams,
               geometry: Geometry) -> WkbLevel:
    e2, M, rho = cp_template.e2, cp_template.M, cp_template.rho
    eps0 = wkb_eps0(n, l, e2, M)
    delta = delta_correction(n, l, e2, M)
    sign = 1.0 if geometry is Geometry.DE_SITTER else -1.0
    return WkbLevel(n=n, l=l, eps0=eps0, Delta_corr=delta,
                    eps=eps0 + sign * delta / rho ** 2, geometry=geometry)


def wkb_energy_ds(n: int, l: int, cp_template: ClassicalParams) -> WkbLevel:
    """de Sitter quasi-classical level eps = eps0 + Delta/rho^2.

    The template supplies (e2, M, rho); the angular momentum is the
    Langer value L = l + 1/2 regardless of cp_template.L.
    """
    return _wkb_level(n, l, cp_template, Geometry.DE_SITTER)


def wkb_energy_ads(n: int, l: int, cp_template: ClassicalParams) -> WkbLevel:
    """anti-de Sitter quasi-classical level eps = eps0 - Delta/rho^2."""
    return _wkb_level(n, l, cp_template, Geometry.ANTI_DE_SITTER)


def quantization_residual(n: int, l: int, e2: float, M: float, rho: float,
                          geometry: Geometry, eps: float) -> float:
    """Balance of the residue-form quantization at the expanded turning points.

    Evaluates sqrt(M^2 - eps^2) [ (r1 + r2)/2 - sqrt(r1 r2)
    -/+ (A/rho^2) r1 r2 (r1 + r2)/2 ] - (n + 1/2) with
    r_i = r0i +/- Delta_i/rho^2 (upper signs de Sitter).  The square
    root of the product enters with the sign the closed-form level
    requires (the bound regime makes both sides of the raw residue
    equation imaginary; the real form below is the meaningful balance).
    """
    cp = make_classical(geometry, eps, l + 0.5, e2, M, rho)
    exp = (ds_turning_expansion if geometry is Geometry.DE_SITTER
           else ads_turning_expansion)(cp)
    r1, r2 = exp.r1, exp.r2
    A = momentum_prefactor_A(eps, M)
    sign = 1.0 if geometry is Geometry.DE_SITTER else -1.0
    bracket = 0.5 * (r1 + r2) - math.sqrt(r1 * r2) \
        - sign * (A / rho ** 2) * r1 * r2 * 0.5 * (r1 + r2)
    return math.sqrt(M * M - eps * eps) * bracket - (n + 0.5)


def _well_pair(cp: ClassicalParams) -> tuple[float, float]:
    """Exact well edges from the quartic (the two smallest positive roots)."""
    qr, well = classify_turning_points(cp)
    if well is not None:
        return well.r1, well.r2
    pos = sorted(z.real for z in qr.roots
                 if abs(z.imag) <= 1e-8 * (1 + abs(z.real)) and z.real > 0)
    if len(pos) < 2:
        raise TopologyError(
            f"no classical well for these parameters (pattern {qr.sign_pattern!r})"
        )
    return pos[0], pos[1]


def action_integral(cp: ClassicalParams) -> float:
    """Exact radial action over the well, int_{r1}^{r2} |p_r| dr, by quadrature.

    Cross-check oracle for the closed forms; the sin^2 substitution
    removes the square-root endpoint singularities.
    """
    r1, r2 = _well_pair(cp)

    def integrand(theta: float) -> float:
        r = r1 + (r2 - r1) * math.sin(theta) ** 2
        p2 = momentum_squared(cp, r)
        return math.sqrt(max(p2, 0.0)) * (r2 - r1) * math.sin(2.0 * theta)

    val, _ = quad(integrand, 0.0, math.pi / 2.0, limit=200,
                  epsabs=1e-13, epsrel=1e-12)
    return val


def action_quantized_energy(n: int, l: int, e2: float, M: float, rho: float,
                            geometry: Geometry,
                            bracket_halfwidth: float | None = None) -> float:
    """Solve int |p_r| dr = pi (n + 1/2) on the exact momentum (oracle).

    Searches near the closed-form level; ``bracket_halfwidth`` overrides
    the automatic bracket.
    """
    eps0 = wkb_eps0(n, l, e2, M)
    delta = delta_correction(n, l, e2, M)
    if bracket_halfwidth is None:
        bracket_halfwidth = max(8.0 * abs(delta) / rho ** 2, 1e-7 * eps0)
    target = math.pi * (n + 0.5)

    def f(eps: float) -> float:
        cp = make_classical(geometry, eps, l + 0.5, e2, M, rho)
        return action_integral(cp) - target

    lo = eps0 - bracket_halfwidth
    hi = min(eps0 + bracket_halfwidth, M * (1.0 - 1e-12))
    return brentq(f, lo, hi, xtol=1e-14)


def tunneling_probability(cp: ClassicalParams,
                          diagnostics: WellDiagnostics) -> tuple[float, float]:
    """Barrier penetration factor W = exp(-2 int_{r2}^{r3} sqrt(-p_r^2) dr).

    Returns (W, integral).  Needs the de Sitter barrier-well topology;
    the substitution r = r2 + (r3 - r2) sin^2(theta) regularizes the
    square-root endpoints before quadrature.  W = 1 when the barrier
    degenerates (r2 = r3).
    """
    if cp.geometry is not Geometry.DE_SITTER:
        raise TopologyError("tunneling needs the de Sitter barrier-well topology")
    r2, r3 = diagnostics.r2, diagnostics.r3
    if not (0.0 < r2 <= r3 < cp.rho):
        raise TopologyError(f"invalid barrier interval [{r2}, {r3}] for rho={cp.rho}")
    if r3 - r2 <= 1e-15 * r3:
        return 1.0, 0.0

    def integrand(theta: float) -> float:
        r = r2 + (r3 - r2) * math.sin(theta) ** 2
        p2 = momentum_squared(cp, r)
        return math.sqrt(max(-p2, 0.0)) * (r3 - r2) * math.sin(2.0 * theta)

    val, err = quad(integrand, 0.0, math.pi / 2.0, limit=200,
                    epsabs=1e-12, epsrel=1e-10)
    if not math.isfinite(val):
        raise ConvergenceError("barrier quadrature failed", achieved=err)
    return math.exp(-2.0 * val), val


def rough_decay_estimate(cp: ClassicalParams) -> float:
    """Order-of-magnitude decay factor exp(-2 rho / lambda_C), lambda_C = 1/M."""
    return math.exp(-2.0 * cp.rho * cp.M)
