"""Exception types shared across the toolkit."""


class BwtkError(Exception):
    """Base class for toolkit errors."""


class InputError(BwtkError, ValueError):
    """Malformed or unusable input (files, alphabets, parameters)."""


class ComputationError(BwtkError, ArithmeticError):
    """A measure could not be evaluated on the given inputs."""


class ZeroDenominatorError(ComputationError):
    """Raised when a similarity denominator is zero."""


class GuardLimitError(ComputationError):
    """Raised when a brute-force reference exceeds its input-size guard."""
