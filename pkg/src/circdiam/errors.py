"""Exception types shared across the package."""


class CircdiamError(Exception):
    """Base class for all package errors."""


class ValidationError(CircdiamError, ValueError):
    """Invalid input parameters (bad generators, lengths, domain, ...)."""


class DisconnectedError(CircdiamError):
    """A metric invariant was requested on a disconnected (di)graph."""


class BudgetExceeded(CircdiamError):
    """An enumeration or rejection budget ran out before finishing."""
