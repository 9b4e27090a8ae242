"""Exceptions raised by qrank.

Every domain error is a ``ValueError`` so callers that only care about bad
input can catch the builtin; the CLI catches :class:`QRankError` and exits 2.
"""


class QRankError(ValueError):
    """Base class for qrank domain errors."""


class NonPositiveInputError(QRankError):
    """Raised when a radicand is below 2."""


class PerfectSquareInputError(QRankError):
    """Raised when a radicand is a perfect square."""


class RationalInputError(QRankError):
    """Raised when a surd has a perfect-square radicand."""


class DegeneratePeriodError(QRankError):
    """Raised when a period has no positive irrational fixed point."""


class CFSyntaxError(QRankError):
    """Raised when continued fraction text cannot be parsed."""


class UnsupportedRhsError(QRankError):
    """Raised for a Pell right-hand side outside {1, -1, 2, -2}."""


class NotPrimeError(QRankError):
    """Raised when a prime argument is composite or below 2."""


class EvenPrimeError(QRankError):
    """Raised when an odd prime is required and 2 is given."""


class InputTooLargeError(QRankError):
    """Raised for primality questions above 2**64."""


class WrongResidueError(QRankError):
    """Raised when a prime is not congruent to 3 mod 4."""


class PeriodTooShortError(QRankError):
    """Raised when the period equation is evaluated on a period shorter than 2."""


class OddXpError(QRankError):
    """Raised when the D formula meets the odd (sqrt(D)+1)/2 branch."""


class NotASolutionError(QRankError):
    """Raised when a tuple does not satisfy the period equation."""


class ZeroDenominatorError(QRankError):
    """Raised when A_{P-2,1} vanishes."""


class SymbolicLimitError(QRankError):
    """Raised when symbolic Muir symbols are requested beyond P = 16."""


class OddPeriodError(QRankError):
    """Raised when a midpoint is requested for an odd period."""


class WindowTooSmallError(QRankError):
    """Raised when the completion window excludes the unperturbed solution."""


class InvalidDiscriminantError(QRankError):
    """Raised for a discriminant that is not negative and 0 or 1 mod 4."""


class NotSquareFreeError(QRankError):
    """Raised when a square-free radicand is required."""


class NonIntegralEntryError(QRankError):
    """Raised when a multiplier matrix entry is not an integer."""
