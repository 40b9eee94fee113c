"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid chain, disorder, or run configuration."""


class PropagationError(RuntimeError):
    """Numerical failure while evolving the amplitude vector."""


class UnitarityError(PropagationError):
    """Norm drift of the evolved state exceeded the allowed budget."""
