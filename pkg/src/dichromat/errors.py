"""Exception types shared across the package."""


class DichromatError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(DichromatError, ValueError):
    """An argument is outside its documented domain."""


class CapacityError(DichromatError):
    """The requested instance exceeds a size cap; the message names the
    cheaper route when one exists."""


class TraceError(DichromatError):
    """A sweepout trace is malformed (shape, monotonicity, step bound)."""


class AdmissibilityError(TraceError):
    """The special slice fails the discrete admissibility condition.

    Raised with a hint to regenerate the trace with a finer step bound.
    """
