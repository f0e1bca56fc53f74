"""Error types shared across the package."""


class BatchCapExceeded(ValueError):
    """Raised when a batch of simultaneous queries is larger than the round cap."""


class ConfigError(ValueError):
    """Raised when an experiment or command-line configuration is invalid."""


class InvariantViolation(RuntimeError):
    """
    Raised when a run breaks a hard guarantee.

    Examples are a Las Vegas algorithm returning a partition that differs
    from the ground truth, or a ledger exceeding a proven query budget.
    """


class DuplicateAlgorithmError(ConfigError):
    """Raised when an algorithm name is registered twice."""
