"""The Laguerre basis ``l_k(t)`` (alpha = -1), the functional ``phi`` and the
transform ``T`` that turns part-counting generating functions into Laguerre
series.

``l_k`` is defined by ``sum_k l_k(t) x^k = exp(t x / (1 + x))``.  ``phi`` sends
``t^n`` to ``n!``; it is integration against ``exp(-t)`` on ``[0, inf)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, Mapping, Tuple, Union

from .errors import NonzeroConstant, VMarkerPresent
from .ring import Series, TPoly, UVPoly, _tadd, _tmul, _tscale, _trim

__all__ = [
    "LaguerreExpansion",
    "laguerre_polynomial",
    "phi",
    "phi_series",
    "transform_T",
    "divide_by_t",
    "expand_in_laguerre_basis",
    "linearization_coefficients",
    "laguerre_compose",
]


@lru_cache(maxsize=None)
def _l_raw(k: int) -> tuple:
    if k == 0:
        return (1,)
    coeffs = [Fraction(0)] * (k + 1)
    for i in range(1, k + 1):
        coeffs[i] = Fraction((-1) ** (k - i) * comb(k - 1, k - i), factorial(i))
    return _trim(coeffs)


def laguerre_polynomial(k: int) -> TPoly:
    """``l_k(t) = (-1)^k L_k^{(-1)}(t)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return TPoly._raw(_l_raw(k))


def _phi_raw(c: tuple) -> Fraction:
    total = 0
    f = 1
    for n, a in enumerate(c):
        if n:
            f *= n
        if a:
            total += a * f
    return Fraction(total)


def phi(p: Union[TPoly, int, Fraction]) -> Fraction:
    """Apply the functional ``t^n -> n!``."""
    if not isinstance(p, TPoly):
        return Fraction(p)
    return _phi_raw(p._c)


def phi_series(s: Series) -> Series:
    """Apply ``phi`` to every coefficient of ``s``; ``x`` is left alone."""
    return Series._raw(tuple(_trim([_phi_raw(c)]) for c in s._c), s.order)


def transform_T(g: Union[UVPoly, Series]) -> Series:
    """Replace every ``u^k`` in ``g`` by ``l_k(t)``.

    A ``Series`` argument is read as a constant in ``u``.
    """
    if isinstance(g, Series):
        return g
    if g.has_v():
        raise VMarkerPresent("substitute v before applying T")
    N = g.order
    acc = [()] * (N + 1)
    for (a, _), s in g._t.items():
        la = _l_raw(a)
        for n, c in enumerate(s):
            if c:
                acc[n] = _tadd(acc[n], _tmul(c, la))
    return Series._raw(tuple(acc), N)


def _divide_raw(c: tuple) -> tuple:
    if c and c[0]:
        raise NonzeroConstant(f"cannot divide {TPoly._raw(c)} by t: nonzero constant term")
    return c[1:]


def divide_by_t(p: Union[TPoly, Series]):
    """Exact quotient by ``t``; on a ``Series`` it acts coefficient-wise."""
    if isinstance(p, Series):
        return Series._raw(tuple(_divide_raw(c) for c in p._c), p.order)
    return TPoly._raw(_divide_raw(p._c))


class LaguerreExpansion(Mapping):
    """Coefficients of a polynomial in the ``l_k`` basis, keyed by ``k``.

    Zero coefficients are not stored.
    """

    def __init__(self, coeffs: Mapping[int, object] = ()):
        self._c: Dict[int, object] = {}
        for k, c in dict(coeffs).items():
            if k < 0:
                raise ValueError("basis index must be nonnegative")
            if c:
                self._c[k] = c if isinstance(c, Series) else Fraction(c)

    def __getitem__(self, k: int):
        return self._c.get(k, Fraction(0))

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._c))

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, LaguerreExpansion):
            return self._c == other._c
        if isinstance(other, Mapping):
            return self._c == LaguerreExpansion(other)._c
        return NotImplemented

    def __repr__(self):
        body = ", ".join(f"{k}: {self._c[k]}" for k in self)
        return f"LaguerreExpansion({{{body}}})"

    def to_tpoly(self) -> TPoly:
        """Re-sum ``sum_k c_k l_k(t)``."""
        acc = ()
        for k, c in self._c.items():
            if isinstance(c, Series):
                raise TypeError("expansion has series coefficients; use to_series")
            acc = _tadd(acc, _tscale(_l_raw(k), c.numerator if c.denominator == 1 else c))
        return TPoly._raw(acc)

    def is_nonnegative_integral(self) -> bool:
        return all(
            not isinstance(c, Series) and c.denominator == 1 and c >= 0 for c in self._c.values()
        )


def expand_in_laguerre_basis(p: TPoly) -> LaguerreExpansion:
    """Write ``p`` as ``sum_k c_k l_k(t)`` by back-substitution from the top degree.

    ``l_k`` has degree ``k`` and leading coefficient ``1/k!``.
    """
    rem = list(p.dense)
    out: Dict[int, Fraction] = {}
    for k in range(len(rem) - 1, -1, -1):
        c = rem[k]
        if not c:
            continue
        coeff = c * factorial(k)
        out[k] = coeff
        for i, a in enumerate(_l_raw(k)):
            rem[i] -= coeff * a
    return LaguerreExpansion(out)


@lru_cache(maxsize=None)
def _linearization(i: int, j: int) -> Tuple[Tuple[int, Fraction], ...]:
    prod = laguerre_polynomial(i) * laguerre_polynomial(j)
    return tuple(expand_in_laguerre_basis(prod).items())


def linearization_coefficients(i: int, j: int) -> LaguerreExpansion:
    """Expansion of ``l_i(t) l_j(t)`` in the ``l`` basis."""
    if i > j:
        i, j = j, i
    return LaguerreExpansion(dict(_linearization(i, j)))


def laguerre_compose(i: int, j: int) -> LaguerreExpansion:
    """Expansion of ``l_i(l_j(t))`` in the ``l`` basis."""
    return expand_in_laguerre_basis(laguerre_polynomial(i)(laguerre_polynomial(j)))
