"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: ArgumentError -> 2,
DataValidationError -> 3, NumericalError -> 4.
"""


class PolicyBoostError(Exception):
    """Base class for all toolkit errors."""


class ArgumentError(PolicyBoostError):
    """Invalid argument, configuration value, or unknown name."""


class DataValidationError(PolicyBoostError):
    """Input data violates a documented invariant (bad CSV row, duplicate
    key, out-of-range value, missing coverage, empty result)."""


class NumericalError(PolicyBoostError):
    """Numerically degenerate computation (zero variance, singular or
    rank-deficient system)."""
