"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`DomainError`
(CLI exit code 1), except :class:`ParseError` (exit code 2).
"""

from __future__ import annotations


class DomainError(ValueError):
    """A mathematically ill-posed request (bad input for the operation)."""


class ParseError(ValueError):
    """Syntax error in operator text, with 1-based line/column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class NotPrimeError(DomainError):
    pass


class ZeroOperatorError(DomainError):
    pass


class NotRegularAtZero(DomainError):
    pass


class PoleOrderTooHigh(DomainError):
    pass


class ResonantResidue(DomainError):
    pass


class IrrationalEigenvalue(DomainError):
    pass


class IntegerEigenvalue(DomainError):
    pass


class ResonantExponent(DomainError):
    pass


class NotARoot(DomainError):
    pass


class PrecisionError(DomainError):
    """Not enough terms were computed to decide the question asked."""


class SingularMatrixError(DomainError):
    pass
