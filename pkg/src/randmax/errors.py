"""Exception types shared across the package."""


class RandmaxError(Exception):
    """Base class for all package errors."""


class DomainError(RandmaxError, ValueError):
    """A numeric argument lies outside the operation's domain."""


class ConfigurationError(RandmaxError, ValueError):
    """An object was configured with inadmissible or unsupported parameters."""
