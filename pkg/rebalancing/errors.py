"""Exception types raised across the toolkit.

All errors derive from ValueError so callers that only guard against
ValueError keep working.
"""

from typing import Optional


class RebalancingError(ValueError):
    """Base class for toolkit errors."""


class InvalidParameterError(RebalancingError):
    """A parameter lies outside its documented range."""


class DomainError(RebalancingError):
    """Effective supply a must be strictly positive."""


class TableTooSmallError(RebalancingError):
    """The Poisson table does not reach ceil(a)."""

    def __init__(self, a: float, k_max: int):
        super().__init__(
            f"Poisson table too small: ceil({a}) exceeds k_max={k_max}; "
            f"rebuild the table with k_cap >= {a}"
        )
        self.a = a
        self.k_max = k_max


class RegimeError(RebalancingError):
    """Requested an equilibrium quantity outside the uniqueness regime."""


class ConfigError(RebalancingError):
    """Invalid experiment configuration.

    Attributes:
        field: Name of the offending configuration field (dotted for nested keys)
    """

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field
