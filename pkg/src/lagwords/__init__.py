"""Counting restricted words with Laguerre series.

Exact-arithmetic generating functions for words with run and vincular
pattern restrictions, together with brute-force enumerators that check them.
"""

from .errors import (
    AlphabetOverlap,
    BudgetExceeded,
    DivisionByTFailure,
    LetterMissing,
    NonUnitDenominator,
    NonzeroConstant,
    NonzeroConstantTerm,
    OrderMismatchWarning,
    VMarkerPresent,
    WordsError,
)
from .ring import Rat, Series, TPoly, UVPoly, series_exp, series_of_rational, uv_derivative, uv_substitute

__version__ = "0.1.0"
