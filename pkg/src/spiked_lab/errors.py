"""Exception types shared across the package.

The error taxonomy is deliberately small: contract violations (bad inputs),
sizing errors (refusing to allocate absurd tensors), numerical failures
(an algorithm that did not converge), and config errors (malformed specs,
always naming the offending field).
"""


class SpikedLabError(Exception):
    """Base class for package errors."""


class ContractError(SpikedLabError, ValueError):
    """An input violates a documented precondition (shape, symmetry, range)."""


class SizingError(SpikedLabError, ValueError):
    """A requested allocation exceeds the entry budget."""


class NumericalFailure(SpikedLabError, RuntimeError):
    """An iterative routine failed to converge; carries partial state."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConfigError(SpikedLabError, ValueError):
    """A spec or CLI configuration problem, pointing at the bad field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.reason = message
