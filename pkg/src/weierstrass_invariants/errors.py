"""Exception types shared across the package."""


class WeierstrassError(Exception):
    """Base class for all package errors."""


class AssumptionError(WeierstrassError):
    """A hypothesis on the input configuration is violated and was not overridden."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PrecisionError(WeierstrassError):
    """Series precision is too low to certify the requested statement."""


class ConvergenceError(WeierstrassError):
    """A numerical procedure did not reach the requested tolerance."""


class InconsistentDataError(WeierstrassError):
    """Input data contradicts a structural invariant (e.g. an intersection matrix)."""
