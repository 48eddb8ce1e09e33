"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the mathematically admissible domain."""


class RangeError(ValueError):
    """A coordinate argument hits a pole or leaves the supported interval."""


class RegimeError(ValueError):
    """Parameters are valid but outside the regime an approximation needs."""


class TopologyError(RuntimeError):
    """The turning-point topology does not support the requested operation."""


class ConvergenceError(RuntimeError):
    """An iterative or series evaluation failed to reach its tolerance.

    Attributes
    ----------
    achieved : float
        Error estimate actually reached when the evaluation gave up.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class IntegrationError(RuntimeError):
    """An ODE integration aborted; `location` holds the failing abscissa."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class SingularityCollisionWarning(UserWarning):
    """Two singular points of a Dirac system (nearly) coincide."""
