"""Exception types shared across the package."""


class ConeendsError(Exception):
    """Base class for everything raised deliberately by this package."""


class DomainError(ConeendsError, ValueError):
    """Input outside the mathematical domain of an operation."""


class DegenerateAxisError(DomainError):
    """Axis endpoints coincide; no geodesic is determined."""


class AtlasMismatchError(ConeendsError, ValueError):
    """Fields passed to one operation live on different atlases."""


class NonPositiveDefiniteError(ConeendsError, ValueError):
    """A metric sample failed positive definiteness; message names chart and index."""


class SingularMorphismError(ConeendsError, ValueError):
    """det(A) vanished at a sample where A must be invertible."""


class InvalidDifferentialError(ConeendsError, ValueError):
    """Quadratic differential fails the at-worst-simple-pole ring test."""


class RejectedDatumError(ConeendsError, ValueError):
    """Datum failed admissibility; carries the offending report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SingularLeafError(ConeendsError, ValueError):
    """A family leaf hit a vanishing denominator at some sample."""


class InvalidMulticurveError(ConeendsError, ValueError):
    """A multicurve word has non-hyperbolic holonomy (no axis)."""


class CriticalPointError(ConeendsError, ValueError):
    """f'(z) = 0 where the Schwarzian derivative is required."""


class InvalidGermError(ConeendsError, ValueError):
    """Cone germ violates f(0)=0, f'(0)!=0."""


class SingularPushError(ConeendsError, ValueError):
    """Normal push hit the 1 + lambda*tanh(t) = 0 singularity."""


class RangeError(ConeendsError, ValueError):
    """Requested curvature outside the attainable range of the family."""


class NewtonDivergenceError(ConeendsError, RuntimeError):
    """Leaf solve did not converge; carries the residual history."""

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = list(history or [])


class InvariantViolationError(ConeendsError, RuntimeError):
    """A cross-checked invariant failed mid-run (CLI exit code 4)."""
