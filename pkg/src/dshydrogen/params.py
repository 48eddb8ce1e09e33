"""Dimensionless parameterization shared by every solver module.

Natural units hbar = c = 1 throughout.  The quantum modules work with the
dimensionless set

    x = r / rho,   E = eps * rho,   alpha = e^2,   M = M_phys * rho,

where rho is the curvature radius of the static metric
ds^2 = (1 -/+ r^2/rho^2) dt^2 - ... (upper sign: de Sitter, lower:
anti-de Sitter).  The classical module keeps eps, L, e^2, M_phys and rho
explicit so turning points come out in the same length unit as rho.

All records are frozen dataclasses: immutable, hashable, safe to share
between threads and across process pools.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import DomainError

__all__ = [
    "Geometry",
    "PhysicalParams",
    "ClassicalParams",
    "make_params",
    "exponent_A",
    "params_from_physical",
    "params_to_physical",
    "make_classical",
    "classical_from_quantum",
]


class Geometry(Enum):
    """Background space-time.

    Minkowski is the rho -> infinity limit; only operations that document
    flat-space support accept it.
    """

    DE_SITTER = "ds"
    ANTI_DE_SITTER = "ads"
    MINKOWSKI = "flat"

    @classmethod
    def parse(cls, text: str) -> "Geometry":
        key = str(text).strip().lower()
        table = {
            "ds": cls.DE_SITTER,
            "desitter": cls.DE_SITTER,
            "de_sitter": cls.DE_SITTER,
            "ads": cls.ANTI_DE_SITTER,
            "antidesitter": cls.ANTI_DE_SITTER,
            "anti_de_sitter": cls.ANTI_DE_SITTER,
            "flat": cls.MINKOWSKI,
            "minkowski": cls.MINKOWSKI,
        }
        try:
            return table[key]
        except KeyError:
            raise DomainError(f"unknown geometry {text!r}; use ds, ads or flat") from None


def exponent_A(l: int, alpha: float) -> float:
    """Origin exponent A = -1/2 + sqrt((l+1/2)^2 - alpha^2), positive branch.

    This is the index of the radial solution regular at r = 0; it reduces
    to A = l exactly when alpha = 0.

    Raises
    ------
    DomainError
        If the radicand (l+1/2)^2 - alpha^2 is not positive.
    """
    radicand = (l + 0.5) ** 2 - alpha * alpha
    if radicand <= 0.0:
        raise DomainError(
            f"alpha = {alpha} >= l + 1/2 = {l + 0.5}: the radicand "
            "(l+1/2)^2 - alpha^2 of the origin exponent must stay positive"
        )
    return -0.5 + math.sqrt(radicand)


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensionless model inputs for the quantum radial problems.

    Attributes
    ----------
    geometry : Geometry
    E : float
        Dimensionless energy eps * rho.
    alpha : float
        Coupling e^2 (dimensionless in natural units).  Not pinned to
        1/137 so sweeps can probe strong coupling up to the l + 1/2 wall.
    M : float
        Dimensionless mass M_phys * rho.  The quasi-classical formulas
        assume M >> 1; this is documented, not enforced.
    l : int
        Orbital quantum number.
    rho : float
        Curvature radius, carried only for unit round-trips.  Every
        internal formula uses the dimensionless set.
    """

    geometry: Geometry
    E: float
    alpha: float
    M: float
    l: int
    rho: float = 1.0

    @property
    def A(self) -> float:
        """Origin exponent of the regular radial solution."""
        return exponent_A(self.l, self.alpha)

    def with_energy(self, E: float) -> "PhysicalParams":
        return replace(self, E=E)


def make_params(
    geometry: Geometry | str,
    E: float,
    alpha: float,
    M: float,
    l: int,
    rho: float = 1.0,
) -> PhysicalParams:
    """Validate and build a :class:`PhysicalParams` record.

    Raises
    ------
    DomainError
        On alpha < 0, M <= 0, non-integer or negative l, rho <= 0, or
        alpha >= l + 1/2 (which would make the origin-exponent radicand
        (l+1/2)^2 - alpha^2 non-positive).
    """
    if isinstance(geometry, str):
        geometry = Geometry.parse(geometry)
    if alpha < 0.0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    if M <= 0.0:
        raise DomainError(f"M must be > 0, got {M}")
    if l != int(l) or l < 0:
        raise DomainError(f"l must be a non-negative integer, got {l}")
    if rho <= 0.0:
        raise DomainError(f"rho must be > 0, got {rho}")
    exponent_A(int(l), alpha)  # rejects alpha >= l + 1/2 with a diagnostic
    return PhysicalParams(geometry=geometry, E=float(E), alpha=float(alpha),
                          M=float(M), l=int(l), rho=float(rho))


def params_from_physical(
    geometry: Geometry | str,
    eps: float,
    e2: float,
    M_phys: float,
    l: int,
    rho: float,
) -> PhysicalParams:
    """Build the dimensionless record from physical (eps, e^2, M_phys, rho)."""
    return make_params(geometry, E=eps * rho, alpha=e2, M=M_phys * rho, l=l, rho=rho)


def params_to_physical(p: PhysicalParams) -> tuple[float, float, float, float]:
    """Inverse of :func:`params_from_physical`: (eps, e2, M_phys, rho)."""
    return p.E / p.rho, p.alpha, p.M / p.rho, p.rho


@dataclass(frozen=True)
class ClassicalParams:
    """Inputs of the classical radial-momentum problem (hbar = c = 1).

    L is the angular momentum conjugate to phi; the fall-to-center regime
    L^2 <= e2^2 (i.e. L^2 <= e^4) is rejected by the operations that need
    the coefficient (L^2 - e^4)/r^2 at the origin to be positive.
    """

    geometry: Geometry
    epsilon: float
    L: float
    e2: float
    M: float
    rho: float

    def coulomb_strength(self) -> float:
        return self.e2


def make_classical(
    geometry: Geometry | str,
    epsilon: float,
    L: float,
    e2: float,
    M: float,
    rho: float = 1.0,
) -> ClassicalParams:
    """Validate and build a :class:`ClassicalParams` record."""
    if isinstance(geometry, str):
        geometry = Geometry.parse(geometry)
    if L < 0.0:
        raise DomainError(f"L must be >= 0, got {L}")
    if e2 < 0.0:
        raise DomainError(f"e2 must be >= 0, got {e2}")
    if M <= 0.0:
        raise DomainError(f"M must be > 0, got {M}")
    if rho <= 0.0:
        raise DomainError(f"rho must be > 0, got {rho}")
    return ClassicalParams(geometry=geometry, epsilon=float(epsilon), L=float(L),
                           e2=float(e2), M=float(M), rho=float(rho))


def classical_from_quantum(p: PhysicalParams, langer: bool = True) -> ClassicalParams:
    """Classical record matching a quantum one.

    Uses the Langer identification L = l + 1/2 by default, which is the
    angular momentum the quasi-classical energy formulas carry; pass
    ``langer=False`` for L = sqrt(l(l+1)).
    """
    L = p.l + 0.5 if langer else math.sqrt(p.l * (p.l + 1))
    return ClassicalParams(
        geometry=p.geometry,
        epsilon=p.E / p.rho,
        L=L,
        e2=p.alpha,
        M=p.M / p.rho,
        rho=p.rho,
    )
