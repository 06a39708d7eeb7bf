"""Exception types shared across the package."""


class ParasqueezeError(Exception):
    """Base class for all package-specific errors."""


class DomainError(ParasqueezeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """An argument would overflow the implementation's floating-point range."""


class ConsistencyError(ParasqueezeError):
    """An internal invariant (symplectic determinant, normalization) failed."""


class PrecisionError(ParasqueezeError):
    """A result cannot be delivered at the required accuracy."""


class QuadratureError(PrecisionError):
    """Numerical integration did not reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class TruncationError(PrecisionError):
    """A truncated distribution carries too much probability in its tail."""


class ScheduleFormatError(ParasqueezeError, ValueError):
    """A schedule document could not be parsed."""
