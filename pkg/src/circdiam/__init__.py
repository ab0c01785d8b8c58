"""Exact metric invariants of weighted circulant graphs and their lattice limits."""

from .errors import BudgetExceeded, CircdiamError, DisconnectedError, ValidationError

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CircdiamError",
    "DisconnectedError",
    "ValidationError",
]
