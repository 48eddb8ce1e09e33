"""Spin-1/2 radial systems in the static de Sitter metrics.

After separating angles and diagonalizing parity (delta = +/-1; the
second parity sheet is the map M -> -M), the two radial amplitudes obey
a coupled first-order system.  In the variable y = tan(rho/2) with
r = sin(rho) (de Sitter, dimensionless r in [0,1)) it reads

  [(1+y^2) d/dy - nu y + nu/y - a/(1-y) + b/(1+y) + (a-b)/2] F
      + (e^2/y)(y - y1)(y - y2) G = 0,
  [(1+y^2) d/dy + nu y - nu/y + a/(1-y) - b/(1+y) - (a-b)/2] G
      - (e^2/y)(y - Y1)(y - Y2) F = 0,

with a = 2i(eps + e^2), b = 2i(eps - e^2) and the constants

  y1,2 = -[(eps + M - i nu - i/2) +/- sqrt((eps + M - i nu - i/2)^2 - e^4)]/e^2,
  Y1,2 = -[(eps - M - i nu + i/2) +/- sqrt((eps - M - i nu + i/2)^2 - e^4)]/e^2,

whose pair products are exactly y1 y2 = 1 and Y1 Y2 = 1.  The
anti-de Sitter twin uses y = tanh(rho/2), r = sinh(rho):

  [(1-y^2) d/dy + nu y + nu/y - 4(eps y + e^2)/(1+y^2) + 2 e^2] F
      - (e^2/y)(y - yb1)(y - yb2) G = 0,
  [(1-y^2) d/dy - nu y - nu/y + 4(eps y + e^2)/(1+y^2) - 2 e^2] G
      + (e^2/y)(y - Yb1)(y - Yb2) F = 0,

  yb1,2 = [(eps + M - nu - 1/2) +/- sqrt((eps + M - nu - 1/2)^2 + e^4)]/e^2,
  Yb1,2 = [(eps - M - nu + 1/2) +/- sqrt((eps - M - nu + 1/2)^2 + e^4)]/e^2,

with pair products exactly -1.  (The sign of the F-row coupling is the
one consistency with the trigonometric/hyperbolic first-order pair
forces; the transform oracle in the test suite pins it.)  Eliminating
either amplitude yields a scalar second-order equation with eight
regular singular points {0, +/-1, +/-i, pair, infinity}; the coupled
system is what gets integrated, the scalar form being numerically
hostile.

Both systems are traceless, so the bilinear F1 G2 - G1 F2 of any two
solutions is constant along a path: a cheap integration invariant.
Eigenvalue search is out of scope; this module builds, charts and
integrates the systems.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (DomainError, IntegrationError, RangeError,
                     SingularityCollisionWarning)
from .params import Geometry

__all__ = [
    "DiracParams",
    "DiracConstants",
    "FirstOrderSystem",
    "SingularityChart",
    "dirac_constants",
    "build_system_ds",
    "build_system_ads",
    "singularity_chart",
    "indicial_exponent",
    "integrate_dirac",
    "fg_from_FG",
    "wronskian",
]


@dataclass(frozen=True)
class DiracParams:
    """Inputs of the spin-1/2 radial problem (dimensionless, rho = 1 units).

    nu = j + 1/2 >= 1 for half-integer total angular momentum j;
    delta_parity = -1 is realized as M -> -M inside the system.
    """

    epsilon: float
    e2: float
    M: float
    nu: float
    delta_parity: int = +1
    geometry: Geometry = Geometry.DE_SITTER

    def __post_init__(self):
        if self.e2 < 0.0:
            raise DomainError(f"e2 must be >= 0, got {self.e2}")
        if self.M <= 0.0:
            raise DomainError(f"M must be > 0, got {self.M}")
        if self.nu < 1.0:
            raise DomainError(f"nu = j + 1/2 must be >= 1, got {self.nu}")
        if self.delta_parity not in (-1, 1):
            raise DomainError(f"delta_parity must be +/-1, got {self.delta_parity}")

    @property
    def M_eff(self) -> float:
        """Mass entering the system; parity delta = -1 flips its sign."""
        return self.delta_parity * self.M


@dataclass(frozen=True)
class DiracConstants:
    """Quadratic-root pairs of the off-diagonal couplings."""

    y1: complex
    y2: complex
    Y1: complex
    Y2: complex


def dirac_constants(dp: DiracParams) -> DiracConstants:
    """Both members of each coupling-root pair.

    de Sitter pairs are generically complex with product +1; the
    anti-de Sitter radicand (..)^2 + e^4 is positive, so those pairs are
    real with product exactly -1.

    Raises
    ------
    DomainError
        For e2 = 0, where the pairs degenerate (the formulas divide by
        e^2); the system itself stays regular, see the builders.
    """
    if dp.e2 == 0.0:
        raise DomainError(
            "e2 = 0: the coupling-root constants are undefined as written "
            "(free-case degeneration); the system coefficients remain finite"
        )
    eps, e2, M, nu = dp.epsilon, dp.e2, dp.M_eff, dp.nu
    if dp.geometry is Geometry.DE_SITTER:
        u = eps + M - 1j * nu - 0.5j
        w = eps - M - 1j * nu + 0.5j
        ru = cmath.sqrt(u * u - e2 ** 2)
        rw = cmath.sqrt(w * w - e2 ** 2)
        return DiracConstants(
            y1=-(u + ru) / e2, y2=-(u - ru) / e2,
            Y1=-(w + rw) / e2, Y2=-(w - rw) / e2,
        )
    if dp.geometry is Geometry.ANTI_DE_SITTER:
        u = eps + M - nu - 0.5
        w = eps - M - nu + 0.5
        ru = math.sqrt(u * u + e2 ** 2)
        rw = math.sqrt(w * w + e2 ** 2)
        return DiracConstants(
            y1=complex((u + ru) / e2), y2=complex((u - ru) / e2),
            Y1=complex((w + rw) / e2), Y2=complex((w - rw) / e2),
        )
    raise DomainError("dirac_constants needs a curved geometry")


@dataclass(frozen=True)
class FirstOrderSystem:
    """Callable coefficient matrix of the coupled pair (F, G).

    matrix(y) returns A with (F', G') = A(y) @ (F, G).  The couplings
    are evaluated from the expanded quadratics, so e2 = 0 is regular.
    """

    params: DiracParams
    constants: DiracConstants | None

    def matrix(self, y: complex) -> np.ndarray:
        dp = self.params
        eps, e2, M, nu = dp.epsilon, dp.e2, dp.M_eff, dp.nu
        y = complex(y)
        if y == 0:
            raise RangeError("y = 0 is a singular point of the system")
        if dp.geometry is Geometry.DE_SITTER:
            if y in (1.0, -1.0) or abs(y * y + 1.0) == 0.0:
                raise RangeError(f"y = {y} is a singular point of the system")
            a = 2j * (eps + e2)
            b = 2j * (eps - e2)
            lead = 1.0 + y * y
            diag = nu * y - nu / y + a / (1.0 - y) - b / (1.0 + y) - (a - b) / 2.0
            # e^2 (y - y1)(y - y2) = e^2 y^2 + 2(eps + M - i nu - i/2) y + e^2
            cF = e2 * y * y + 2.0 * (eps + M - 1j * nu - 0.5j) * y + e2
            # e^2 (y - Y1)(y - Y2) = e^2 y^2 + 2(eps - M - i nu + i/2) y + e^2
            cG = e2 * y * y + 2.0 * (eps - M - 1j * nu + 0.5j) * y + e2
            return np.array([
                [diag / lead, -cF / (y * lead)],
                [cG / (y * lead), -diag / lead],
            ])
        if dp.geometry is Geometry.ANTI_DE_SITTER:
            if y in (1.0, -1.0) or abs(y * y + 1.0) == 0.0:
                raise RangeError(f"y = {y} is a singular point of the system")
            lead = 1.0 - y * y
            diag = -(nu * y + nu / y - 4.0 * (eps * y + e2) / (1.0 + y * y) + 2.0 * e2)
            # e^2 (y - yb1)(y - yb2) = e^2 y^2 - 2(eps + M - nu - 1/2) y - e^2
            cF = e2 * y * y - 2.0 * (eps + M - nu - 0.5) * y - e2
            # e^2 (y - Yb1)(y - Yb2) = e^2 y^2 - 2(eps - M - nu + 1/2) y - e^2
            cG = e2 * y * y - 2.0 * (eps - M - nu + 0.5) * y - e2
            return np.array([
                [diag / lead, cF / (y * lead)],
                [-cG / (y * lead), -diag / lead],
            ])
        raise DomainError("unsupported geometry for the spin-1/2 system")


@dataclass(frozen=True)
class SingularityChart:
    """The eight singular points of the eliminated scalar equation.

    Infinity is represented by complex(inf).  `collisions` lists pairs
    of indices whose points (nearly) coincide for these parameters.
    """

    points: tuple[complex, ...]
    collisions: tuple[tuple[int, int], ...]


def build_system_ds(dp: DiracParams) -> FirstOrderSystem:
    """de Sitter coupled pair; evaluation rejects singular abscissas."""
    if dp.geometry is not Geometry.DE_SITTER:
        raise DomainError("build_system_ds needs de Sitter parameters")
    constants = dirac_constants(dp) if dp.e2 > 0 else None
    return FirstOrderSystem(params=dp, constants=constants)


def build_system_ads(dp: DiracParams) -> FirstOrderSystem:
    """anti-de Sitter coupled pair; evaluation rejects singular abscissas."""
    if dp.geometry is not Geometry.ANTI_DE_SITTER:
        raise DomainError("build_system_ads needs anti-de Sitter parameters")
    constants = dirac_constants(dp) if dp.e2 > 0 else None
    return FirstOrderSystem(params=dp, constants=constants)


def singularity_chart(system: FirstOrderSystem, tol: float = 1e-9) -> SingularityChart:
    """Chart {0, 1, -1, i, -i, pair, infinity} with collision warnings.

    Uses the F-row pair (y1, y2 or their anti-de Sitter bars); the
    G-elimination chart would carry the capital pair instead.
    """
    if system.constants is None:
        raise DomainError("charting needs e2 > 0 (coupling pair undefined at e2 = 0)")
    c = system.constants
    pts = [complex(0.0), complex(1.0), complex(-1.0), complex(0.0, 1.0),
           complex(0.0, -1.0), c.y1, c.y2, complex(math.inf)]
    collisions = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            a, b = pts[i], pts[j]
            if cmath.isfinite(a) and cmath.isfinite(b):
                if abs(a - b) <= tol * (1.0 + abs(a) + abs(b)):
                    collisions.append((i, j))
    if collisions:
        warnings.warn(
            f"singular points collide for these parameters: indices {collisions}",
            SingularityCollisionWarning,
            stacklevel=2,
        )
    return SingularityChart(points=tuple(pts), collisions=tuple(collisions))


def indicial_exponent(system: FirstOrderSystem) -> tuple[float, np.ndarray]:
    """Leading exponent s at y = 0 and its (F, G) eigenvector.

    Near the origin (F', G') ~ (S/y)(F, G) with S the residue matrix of
    the system; the regular solution behaves like y^s with
    s = sqrt(nu^2 - e^4), the positive eigenvalue of S.
    """
    y0 = 1e-7
    S = y0 * system.matrix(y0)
    vals, vecs = np.linalg.eig(S)
    k = int(np.argmax(vals.real))
    return float(vals[k].real), vecs[:, k]


def _segment_clearance(a: complex, b: complex, p: complex) -> float:
    """Distance from point p to segment [a, b]."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def integrate_dirac(system: FirstOrderSystem, y_path, initial,
                    rtol: float = 1e-10, atol: float = 1e-12,
                    clearance: float = 1e-3, samples_per_segment: int = 60):
    """Integrate (F, G) along a piecewise-linear path in the y plane.

    Parameters
    ----------
    y_path : sequence of complex waypoints (real values fine).
    initial : (F0, G0) at y_path[0].
    clearance : minimum allowed distance of the path from every finite
        singular point of the chart (and from 0, +/-1, +/-i at e2 = 0).

    Returns (ys, F, G) as numpy arrays sampled along the path.
    """
    path = [complex(z) for z in y_path]
    if len(path) < 2:
        raise DomainError("y_path needs at least two points")
    if system.constants is not None:
        c = system.constants
        finite_pts = [0.0, 1.0, -1.0, 1j, -1j, c.y1, c.y2, c.Y1, c.Y2]
    else:
        finite_pts = [0.0, 1.0, -1.0, 1j, -1j]
    for a, b in zip(path[:-1], path[1:]):
        for p in finite_pts:
            d = _segment_clearance(a, b, complex(p))
            if d < clearance:
                raise RangeError(
                    f"path segment [{a}, {b}] passes within {d:.3g} of the "
                    f"singular point {p} (clearance {clearance})"
                )

    ys_all = [np.array([path[0]])]
    F_all = [np.array([complex(initial[0])])]
    G_all = [np.array([complex(initial[1])])]
    state = np.array([complex(initial[0]), complex(initial[1])])
    for a, b in zip(path[:-1], path[1:]):
        seg = b - a

        def rhs(t, Y):
            A = system.matrix(a + t * seg)
            return seg * (A @ Y)

        ts = np.linspace(0.0, 1.0, samples_per_segment)
        sol = solve_ivp(rhs, (0.0, 1.0), state, method="DOP853",
                        rtol=rtol, atol=atol, t_eval=ts)
        if not sol.success:
            loc = a + (sol.t[-1] if sol.t.size else 0.0) * seg
            raise IntegrationError(f"Dirac path integration failed: {sol.message}",
                                   location=loc)
        ys_all.append(a + sol.t[1:] * seg)
        F_all.append(sol.y[0][1:])
        G_all.append(sol.y[1][1:])
        state = np.array([sol.y[0][-1], sol.y[1][-1]])
    return (np.concatenate(ys_all), np.concatenate(F_all), np.concatenate(G_all))


def fg_from_FG(system: FirstOrderSystem, y: complex, F: complex, G: complex):
    """Invert the phase substitution back to the pre-transform pair (f, g).

    de Sitter (y = tan(rho/2)):   f = cos(rho/2) F - i sin(rho/2) G,
                                  g = cos(rho/2) G - i sin(rho/2) F.
    anti-de Sitter (y = tanh):    f = cosh(rho/2) F - sinh(rho/2) G,
                                  g = cosh(rho/2) G - sinh(rho/2) F.
    """
    y = complex(y)
    if system.params.geometry is Geometry.DE_SITTER:
        half = cmath.atan(y)
        c, s = cmath.cos(half), cmath.sin(half)
        return c * F - 1j * s * G, c * G - 1j * s * F
    half = cmath.atanh(y)
    ch, sh = cmath.cosh(half), cmath.sinh(half)
    return ch * F - sh * G, ch * G - sh * F


def wronskian(F1, G1, F2, G2):
    """Bilinear F1 G2 - G1 F2; constant along any path (traceless system)."""
    return F1 * G2 - G1 * F2
