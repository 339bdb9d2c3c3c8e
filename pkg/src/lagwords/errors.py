"""Exception types raised across the package."""


class WordsError(Exception):
    """Base class for all errors raised by lagwords."""


class NonUnitDenominator(WordsError, ZeroDivisionError):
    """The denominator of a rational expansion has no invertible constant term."""


class NonzeroConstantTerm(WordsError, ValueError):
    """A series that must start at x^1 has a nonzero x^0 coefficient."""


class NonzeroConstant(WordsError, ValueError):
    """A t-polynomial could not be divided by t because its constant term is nonzero."""


class DivisionByTFailure(NonzeroConstant):
    """Division by t failed inside a counting formula.

    For valid inputs this indicates an internal inconsistency.
    """


class VMarkerPresent(WordsError, ValueError):
    """The transform was applied to a generating function that still depends on v."""


class LetterMissing(WordsError, ValueError):
    pass


class AlphabetOverlap(WordsError, ValueError):
    pass


class BudgetExceeded(WordsError, RuntimeError):
    """A brute-force enumeration would exceed its configured budget."""


class OrderMismatchWarning(UserWarning):
    """Operands with different truncation orders were combined."""
