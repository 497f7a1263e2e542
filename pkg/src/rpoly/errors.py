"""Exception taxonomy shared across the package."""


class RPolyError(Exception):
    """Base class for all rpoly errors."""


class InvalidInputError(RPolyError):
    """An argument violates an operation's preconditions."""


class DegenerateInputError(RPolyError):
    """Point data without full affine span (flat hull, zero volume)."""


class DataError(RPolyError):
    """Numeric data unusable for a statistic (non-finite, empty, constant...)."""


class ConfigError(RPolyError):
    """Experiment configuration is malformed."""
