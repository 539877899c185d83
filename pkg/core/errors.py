"""
Error hierarchy shared by every package.
"""


class LoadBalancingError(Exception):
    """Base class for all errors raised by the engine."""


class ConfigurationError(LoadBalancingError, ValueError):
    """Invalid arguments or settings."""


class DataError(LoadBalancingError):
    """Input data cannot be read or is inconsistent."""


class InvariantViolation(LoadBalancingError):
    """A coverage or consistency check failed at runtime."""


class StalePlanError(InvariantViolation):
    """Map-side emission met an entity the BDM or plan does not describe."""
