"""Classical squared radial momentum and its turning-point structure.

The squared radial momentum of a charge in the static de Sitter metric is

    p_r^2 = (eps + e^2/r)^2 / (1 - r^2/rho^2)^2
            - (M^2 + L^2/r^2) / (1 - r^2/rho^2),

the anti-de Sitter form follows by rho^2 -> -rho^2, and the Minkowski
limit drops the metric factors.  Clearing denominators turns p_r^2 = 0
into a quartic in r whose root sign pattern decides whether the motion
sees a well plus barrier (de Sitter), a plain well (anti-de Sitter) or no
bound region at all.  Everything here is in natural units hbar = c = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, RangeError, RegimeError, TopologyError
from .params import ClassicalParams, Geometry

__all__ = [
    "QuarticCoeffs",
    "QuarticRoots",
    "WellDiagnostics",
    "WellTopology",
    "momentum_squared",
    "quartic_coefficients",
    "quartic_roots",
    "classify_turning_points",
    "tortoise",
    "tortoise_inverse",
    "tortoise_momentum_squared",
    "horizon_velocity",
]

# A root counts as real when |Im| <= REAL_TOL * (1 + |Re|); tests probe
# sensitivity at this threshold.
REAL_TOL = 1e-8


class WellTopology(Enum):
    BARRIER_WELL = "BarrierWell"          # de Sitter (-,+,+,+)
    INNER_FORBIDDEN = "InnerForbidden"    # de Sitter (-,-,-,+)
    PURE_WELL = "PureWell"                # anti-de Sitter (-,-,+,+)
    COMPLEX_PAIR = "ComplexPair"
    FREE_PARTICLE = "FreeParticle"        # e^2 = 0


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients c4 r^4 + c3 r^3 + c2 r^2 + c1 r + c0 of p_r^2 = 0."""

    c4: float
    c3: float
    c2: float
    c1: float
    c0: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c4, self.c3, self.c2, self.c1, self.c0])


@dataclass(frozen=True)
class QuarticRoots:
    """Roots of the cleared quartic, sorted by real part.

    sign_pattern uses one symbol per root: '-' or '+' for real roots,
    'z' for a member of a complex-conjugate pair.
    """

    roots: tuple[complex, complex, complex, complex]
    sign_pattern: str
    topology: WellTopology


@dataclass(frozen=True)
class WellDiagnostics:
    """Ordered physical turning points of the de Sitter barrier-well case.

    The well is [r1, r2], the barrier [r2, r3]; 0 < r1 < r2 < r3 < rho.
    """

    r1: float
    r2: float
    r3: float

    @property
    def well_interval(self) -> tuple[float, float]:
        return (self.r1, self.r2)

    @property
    def barrier_interval(self) -> tuple[float, float]:
        return (self.r2, self.r3)


def momentum_squared(cp: ClassicalParams, r: float) -> float:
    """Evaluate p_r^2 at radius r for the record's geometry.

    Raises
    ------
    RangeError
        At the poles r = 0 and (de Sitter) r = rho, or outside the
        static patch r > rho in de Sitter.
    """
    if r <= 0.0:
        raise RangeError(f"r must be > 0 (pole of e^2/r and L^2/r^2 at 0), got {r}")
    drive = (cp.epsilon + cp.e2 / r) ** 2
    rest = cp.M ** 2 + (cp.L / r) ** 2
    if cp.geometry is Geometry.MINKOWSKI:
        return drive - rest
    x2 = (r / cp.rho) ** 2
    if cp.geometry is Geometry.DE_SITTER:
        phi = 1.0 - x2
        if phi <= 0.0:
            raise RangeError(f"r = {r} is at or beyond the horizon rho = {cp.rho}")
    else:
        phi = 1.0 + x2
    return drive / phi ** 2 - rest / phi


def quartic_coefficients(cp: ClassicalParams) -> QuarticCoeffs:
    """Quartic obtained by clearing denominators in p_r^2 = 0.

    de Sitter:      M^2 r^4 + (L^2 + rho^2(eps^2 - M^2)) r^2
                    + 2 rho^2 eps e^2 r + rho^2 (e^4 - L^2) = 0
    anti-de Sitter: rho^2 -> -rho^2 in the above.

    Every root of the returned quartic is a zero of
    :func:`momentum_squared` away from the poles.
    """
    eps, L, e2, M, rho = cp.epsilon, cp.L, cp.e2, cp.M, cp.rho
    rho2 = rho * rho
    if cp.geometry is Geometry.DE_SITTER:
        return QuarticCoeffs(
            c4=M * M,
            c3=0.0,
            c2=L * L + rho2 * (eps * eps - M * M),
            c1=2.0 * rho2 * eps * e2,
            c0=rho2 * (e2 * e2 - L * L),
        )
    if cp.geometry is Geometry.ANTI_DE_SITTER:
        return QuarticCoeffs(
            c4=M * M,
            c3=0.0,
            c2=L * L - rho2 * (eps * eps - M * M),
            c1=-2.0 * rho2 * eps * e2,
            c0=rho2 * (L * L - e2 * e2),
        )
    raise DomainError("quartic_coefficients needs a curved geometry (ds or ads); "
                      "the Minkowski momentum is quadratic, see wkb.flat_turning_points")


def _newton_polish(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """One Newton step per root; leaves a root alone if p' is tiny there."""
    dcoeffs = np.polyder(coeffs)
    vals = np.polyval(coeffs, roots)
    derivs = np.polyval(dcoeffs, roots)
    safe = np.abs(derivs) > 1e-300
    out = roots.copy()
    out[safe] = roots[safe] - vals[safe] / derivs[safe]
    return out


def quartic_roots(cp: ClassicalParams) -> np.ndarray:
    """All four roots via companion-matrix eigenvalues plus one Newton polish.

    Returned sorted by real part (ties broken by imaginary part).
    """
    c = quartic_coefficients(cp).as_array()
    roots = np.roots(c).astype(complex)
    roots = _newton_polish(c, roots)
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def _sign_pattern(roots: np.ndarray, real_tol: float) -> str:
    symbols = []
    for z in roots:
        if abs(z.imag) > real_tol * (1.0 + abs(z.real)):
            symbols.append("z")
        elif z.real > 0.0:
            symbols.append("+")
        else:
            symbols.append("-")
    return "".join(symbols)


def classify_turning_points(
    cp: ClassicalParams,
    real_tol: float = REAL_TOL,
) -> tuple[QuarticRoots, WellDiagnostics | None]:
    """Solve the quartic, classify the sign pattern and name the topology.

    Requires the regime L^2 > e^4; otherwise the coefficient
    (L^2 - e^4)/r^2 that dominates p_r^2 at r -> 0 changes sign
    (fall to the center) and the classification below does not apply.

    Returns the classified roots and, for the de Sitter barrier-well
    case only, the ordered physical turning points.
    """
    if cp.L ** 2 <= cp.e2 ** 2:
        raise RegimeError(
            f"L^2 = {cp.L**2} <= e^4 = {cp.e2**2}: the r->0 coefficient "
            "(L^2 - e^4)/r^2 must stay positive (no fall to the center)"
        )
    roots = quartic_roots(cp)
    pattern = _sign_pattern(roots, real_tol)
    n_complex = pattern.count("z")
    n_pos = pattern.count("+")

    if cp.e2 == 0.0:
        topology = WellTopology.FREE_PARTICLE
    elif n_complex in (2, 4):
        # 4 complex roots = no classical region at all (energy below the
        # threshold for a well); lumped with the conjugate-pair case.
        topology = WellTopology.COMPLEX_PAIR
    elif n_complex != 0:
        raise TopologyError(
            f"unpaired complex roots in pattern {pattern!r}; root finding failed"
        )
    elif cp.geometry is Geometry.DE_SITTER:
        if n_pos == 3:
            topology = WellTopology.BARRIER_WELL
        elif n_pos == 1:
            topology = WellTopology.INNER_FORBIDDEN
        else:
            raise TopologyError(
                f"real de Sitter pattern {pattern!r} is excluded by the "
                "negative root product (L^2 > e^4)"
            )
    else:
        if pattern == "--++":
            topology = WellTopology.PURE_WELL
        else:
            raise TopologyError(
                f"real anti-de Sitter pattern {pattern!r} is excluded by the "
                "positive root product and the zero root sum"
            )

    well = None
    if topology is WellTopology.BARRIER_WELL:
        pos = sorted(z.real for z in roots if z.real > 0.0)
        well = WellDiagnostics(r1=pos[0], r2=pos[1], r3=pos[2])
    return QuarticRoots(roots=tuple(roots), sign_pattern=pattern, topology=topology), well


def tortoise(r: float, rho: float) -> float:
    """Tortoise coordinate r* = (rho/2) ln[(1 + r/rho)/(1 - r/rho)].

    Monotone increasing on [0, rho), zero at the origin, logarithmically
    divergent at the horizon.
    """
    if r < 0.0 or r >= rho:
        raise RangeError(f"tortoise coordinate needs 0 <= r < rho, got r={r}, rho={rho}")
    return rho * math.atanh(r / rho)


def tortoise_inverse(rstar: float, rho: float) -> float:
    """Inverse map r = rho tanh(r*/rho)."""
    return rho * math.tanh(rstar / rho)


def tortoise_momentum_squared(cp: ClassicalParams, r: float) -> float:
    """Squared momentum conjugate to r*: p_{r*}^2 = (1 - r^2/rho^2)^2 p_r^2.

    Stays finite at the horizon, approaching (eps + e^2/rho)^2.
    """
    if cp.geometry is not Geometry.DE_SITTER:
        raise DomainError("the tortoise momentum is a de Sitter quantity")
    phi = 1.0 - (r / cp.rho) ** 2
    return phi * phi * momentum_squared(cp, r)


def horizon_velocity(cp: ClassicalParams) -> tuple[float, bool]:
    """Radial proper velocity at the de Sitter horizon and a subluminal flag.

    V_r = |eps + e^2/rho| / M; the flag is strict (V_r = 1 is not
    subluminal).
    """
    if cp.geometry is not Geometry.DE_SITTER:
        raise DomainError("horizon_velocity is a de Sitter quantity")
    v = abs(cp.epsilon + cp.e2 / cp.rho) / cp.M
    return v, v < 1.0
