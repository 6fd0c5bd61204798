"""Exception types shared across the package.

Every contract violation is an explicit exception; there are no NaN-like
sentinel values anywhere in the numeric stack.
"""


class PrimerecError(Exception):
    """Base class for all package errors."""


class DomainError(PrimerecError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RangeError(PrimerecError, OverflowError):
    """The result would exceed the documented representable range."""


class UnsupportedSizeError(DomainError):
    """The argument is valid but larger than the supported size cap."""


class PrecisionLossError(PrimerecError, ArithmeticError):
    """A result vanished entirely at working precision.

    Retrying with a larger guard-bit allowance is the documented remedy.
    """
