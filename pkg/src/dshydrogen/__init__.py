"""Hydrogen-like atoms in de Sitter and anti-de Sitter static space-times.

Subpackages by task:

* :mod:`dshydrogen.params`    -- dimensionless parameter records and validation
* :mod:`dshydrogen.classical` -- squared radial momentum, quartic turning points
* :mod:`dshydrogen.heun`      -- reduction to the general Heun equation
* :mod:`dshydrogen.wkb`       -- quasi-classical levels and tunneling
* :mod:`dshydrogen.spectral`  -- direct radial integration, shooting, resonances
* :mod:`dshydrogen.dirac`     -- spin-1/2 radial systems
* :mod:`dshydrogen.cli`       -- batch front-end (sweeps, tables, plot data)
"""

from .params import (
    Geometry,
    PhysicalParams,
    ClassicalParams,
    make_params,
    make_classical,
    exponent_A,
    classical_from_quantum,
    params_from_physical,
    params_to_physical,
)
from .classical import (
    WellTopology,
    QuarticCoeffs,
    QuarticRoots,
    WellDiagnostics,
    momentum_squared,
    quartic_coefficients,
    classify_turning_points,
    tortoise,
    tortoise_inverse,
    tortoise_momentum_squared,
    horizon_velocity,
)

__version__ = "0.1.0"

__all__ = [
    "Geometry",
    "PhysicalParams",
    "ClassicalParams",
    "make_params",
    "make_classical",
    "exponent_A",
    "classical_from_quantum",
    "params_from_physical",
    "params_to_physical",
    "WellTopology",
    "QuarticCoeffs",
    "QuarticRoots",
    "WellDiagnostics",
    "momentum_squared",
    "quartic_coefficients",
    "classify_turning_points",
    "tortoise",
    "tortoise_inverse",
    "tortoise_momentum_squared",
    "horizon_velocity",
]
