"""Exception hierarchy shared by the library and the command line."""

from typing import Optional, Tuple


class BurgersSeriesError(Exception):
    """Base class for every error raised by ``burgers_series``."""


class DomainError(BurgersSeriesError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ValidationError(DomainError):
    """A physical or run parameter failed validation before any work started."""


class SamplingError(DomainError):
    """Too few quadrature nodes to make a discrete identity exact."""


class DependencyError(BurgersSeriesError):
    """A recursive term was requested before the terms it depends on."""


class AccuracyError(BurgersSeriesError):
    """
    A quadrature estimate missed its tolerance.

    :ivar location: The offending ``(x, t)`` node, when known.
    :ivar estimate: The estimated error that exceeded the tolerance.
    """

    def __init__(
            self,
            message: str,
            location: Optional[Tuple[float, float]] = None,
            estimate: Optional[float] = None
    ):
        super().__init__(message)
        self.location = location
        self.estimate = estimate


class NearSingularError(AccuracyError):
    """The Cole-Hopf denominator is numerically zero."""


class BlowUpError(BurgersSeriesError):
    """Non-finite values appeared while time stepping."""

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


class InternalOverflowError(BurgersSeriesError):
    """A closed-form term could not be represented in double precision."""

    def __init__(self, message: str, m: int):
        super().__init__(message)
        self.m = m


class NearSingularKernelWarning(UserWarning):
    """The heat kernel was evaluated at coinciding times."""
