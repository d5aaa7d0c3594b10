"""Exception types used across the package."""


class DomainError(ValueError):
    """Raised when an input is outside the physically meaningful domain."""


class ConfigError(ValueError):
    """Raised when a run configuration file cannot be parsed or validated."""
