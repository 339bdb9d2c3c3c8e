"""Counting formulas for restricted words.

Every count here is ``phi`` of a product of Laguerre series, one factor per
letter (or per group of letters).  The per-letter Laguerre series come from
ordinary generating functions of one-letter factorizations, with ``u``
marking parts, pushed through :func:`~lagwords.laguerre.transform_T`.

Words are weighted by ``x^length`` unless a list of per-letter substitutions
is passed, in which case letter ``i`` is weighted by the ``i``-th series
(``x^i`` gives compositions weighted by their sum).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple, Union

from .errors import DivisionByTFailure, LetterMissing, NonzeroConstant, NonzeroConstantTerm
from .laguerre import divide_by_t, laguerre_polynomial, phi, phi_series, transform_T
from .model import MultisetSpec, VincularPattern
from .ring import Series, TPoly, UVPoly, series_exp, series_of_rational, uv_derivative, uv_substitute

__all__ = [
    "MultisetSpec",
    "VincularPattern",
    "p_polynomial",
    "carlitz_arrangements",
    "run_limited_arrangements",
    "bounded_multiplicity_count",
    "m_carlitz_gf",
    "smirnov_weight_sum",
    "all_factorizations_gf",
    "g_contain",
    "avoider_laguerre_series",
    "vincular_avoiders_gf",
    "vincular_avoiders_weighted",
    "h_series",
    "cyclic_avoiders_gf",
    "cyclic_avoiders_weighted",
    "cyclic_m_avoiders_weighted",
    "cyclic_m_avoiders_closed_form",
    "cyclic_carlitz_compositions_gf",
    "cyclic_run_limited_arrangements",
    "forbidden_letters_series",
    "free_letters_series",
    "subword_avoid_count",
]

SpecLike = Union[MultisetSpec, Sequence[int]]


def _as_spec(spec: SpecLike) -> MultisetSpec:
    if isinstance(spec, MultisetSpec):
        return spec
    return MultisetSpec.from_counts(spec)


def _count(value: Fraction) -> int:
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"count evaluated to {value}, not a nonnegative integer")
    return value.numerator


def _product(polys: Iterable[TPoly]) -> TPoly:
    acc = TPoly(1)
    for p in polys:
        acc = acc * p
    return acc


# --- run-limited arrangements -------------------------------------------------


@lru_cache(maxsize=None)
def _p_series(m: int, order: int) -> Series:
    x = Series.x(order)
    return series_exp(TPoly.t() * series_of_rational(x - x**m, 1 - x**m, order))


def p_polynomial(m: int, n: int) -> TPoly:
    """Coefficient of ``x^n`` in ``exp(t (x - x^m) / (1 - x^m))``.

    It is the Laguerre series of one-letter factorizations of length ``n``
    whose parts are all shorter than ``m``.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _p_series(m, max(n, 1))[n]


def _uncapped(n: int) -> TPoly:
    return TPoly.monomial(n, Fraction(1, factorial(n)))


def carlitz_arrangements(spec: SpecLike) -> int:
    """Arrangements of a multiset with no two equal adjacent letters."""
    spec = _as_spec(spec)
    return _count(phi(_product(laguerre_polynomial(n) for n in spec.multiplicities)))


def run_limited_arrangements(spec: MultisetSpec) -> int:
    """Arrangements in which every run of letter ``i`` is shorter than its cap.

    A letter without a cap is unrestricted.
    """
    return _count(
        phi(
            _product(
                p_polynomial(m, n) if m is not None else _uncapped(n)
                for _, n, m in spec.entries
            )
        )
    )


def bounded_multiplicity_count(caps: SpecLike) -> int:
    """Words, empty included, using letter ``i`` at most ``caps[i]`` times."""
    spec = _as_spec(caps)
    return _count(phi(_product(_truncated_exp(r) for r in spec.multiplicities)))


def _truncated_exp(r: int, start: int = 0) -> TPoly:
    return TPoly({i: Fraction(1, factorial(i)) for i in range(start, r + 1)})


# --- generating functions in x ---------------------------------------------------


def m_carlitz_gf(k: int, m: int, order: int) -> Series:
    """``(1 - x^m) / (1 - k x + (k-1) x^m)``: k-ary words with no run of length ``m``.

    This is ``1 / (1 - k (x - x^m) / (1 - x^m))``.
    """
    x = Series.x(order)
    return series_of_rational(1 - x**m, 1 - k * x + (k - 1) * x**m, order)


def _require_unit_free(subs: Sequence[Series]):
    for s in subs:
        if not s[0].is_zero():
            raise NonzeroConstantTerm("letter weights must have zero constant term")


def _order_of(subs: Sequence[Series], order: int) -> int:
    return min([order] + [s.order for s in subs])


def smirnov_weight_sum(substitutions: Sequence[Series], order: int) -> Series:
    """``1 / (1 - sum_i s_i / (1 + s_i))``, the weight of all Carlitz words."""
    _require_unit_free(substitutions)
    order = _order_of(substitutions, order)
    acc = Series.zero(order)
    for s in substitutions:
        s = s.truncate(order)
        acc = acc + series_of_rational(s, 1 + s, order)
    return series_of_rational(1, 1 - acc, order)


def all_factorizations_gf(order: int) -> UVPoly:
    """``(1 - x) / (1 - x - u x)``: every one-letter factorization."""
    x, u = UVPoly.x(order), UVPoly.u(order)
    return series_of_rational(1 - x, 1 - x - u * x, order)


def _short_parts(m: int, order: int) -> UVPoly:
    """``(1 - x) / (1 - x - u (x - x^m))``: sequences of parts shorter than ``m``."""
    x, u = UVPoly.x(order), UVPoly.u(order)
    return series_of_rational(1 - x, 1 - x - u * (x - x**m), order)


def _block_step(m: int, order: int) -> UVPoly:
    """Multiplier that extends a minimal occurrence by one more block of length ``m``.

    Either the block is appended to the last part (``x^m``), or the last part
    grows by fewer than ``m`` letters, some parts shorter than ``m`` follow,
    and a new part ``1^m`` completes the block.
    """
    x, u = UVPoly.x(order), UVPoly.u(order)
    return x**m + u * x**m * (1 - x**m) * series_of_rational(1, 1 - x - u * (x - x**m), order)


def _minimal_containers(pattern: VincularPattern, order: int) -> UVPoly:
    """One-letter factorizations containing ``pattern`` that lose it when the last letter goes."""
    x, u = UVPoly.x(order), UVPoly.u(order)
    first = pattern.blocks[0]
    g = _short_parts(first, order) * u * x**first
    for m in pattern.blocks[1:]:
        g = g * _block_step(m, order)
    return g


def g_contain(pattern: VincularPattern, order: int) -> UVPoly:
    """One-letter factorizations containing ``pattern``; ``u`` marks parts, ``x`` length.

    A minimal occurrence is followed by any extension of its last part and
    any list of further parts: a factor ``1 / (1 - x - u x)``.
    """
    x, u = UVPoly.x(order), UVPoly.u(order)
    return series_of_rational(_minimal_containers(pattern, order), 1 - x - u * x, order)


@lru_cache(maxsize=None)
def avoider_laguerre_series(pattern: VincularPattern, order: int) -> Series:
    """Laguerre series ``exp(t x) - T{G}`` of one-letter factorizations avoiding ``pattern``."""
    all_words = series_exp(TPoly.t() * Series.x(order))
    return all_words - transform_T(g_contain(pattern, order))


def vincular_avoiders_gf(k: int, pattern: VincularPattern, order: int) -> Series:
    """``sum_n (#k-ary words of length n avoiding pattern) x^n``."""
    f = avoider_laguerre_series(pattern, order)
    return phi_series(f**k)


def vincular_avoiders_weighted(
    pattern: VincularPattern, substitutions: Sequence[Series], order: int
) -> Series:
    """Words avoiding ``pattern`` with letter ``i`` weighted by ``substitutions[i]``."""
    _require_unit_free(substitutions)
    order = _order_of(substitutions, order)
    f = avoider_laguerre_series(pattern, order)
    acc = Series.one(order)
    for s in substitutions:
        acc = acc * f.compose(s.truncate(order))
    return phi_series(acc)


# --- cyclic avoidance ----------------------------------------------------------------


def _geometric_poly(base: UVPoly, start: int, stop: int) -> UVPoly:
    """``base^start + ... + base^(stop-1)``."""
    acc = UVPoly.constant(0, base.order)
    power = base**start
    for _ in range(start, stop):
        acc = acc + power
        power = power * base
    return acc


@lru_cache(maxsize=None)
def h_series(m: int, n: int, order: int) -> UVPoly:
    """One-letter factorizations avoiding ``1^m-...-1^m`` (``n`` blocks).

    ``x`` marks length, ``u`` parts and ``v`` the length of the first part.
    Assembled as all factorizations minus those containing the pattern,
    split by how many blocks already fit into the first part.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    x, u, v = UVPoly.x(order), UVPoly.u(order), UVPoly.v(order)
    vx = v * x
    rest_any = series_of_rational(1 - x, 1 - x - u * x, order)
    first_any = series_of_rational(vx, 1 - vx, order)
    total = 1 + u * first_any * rest_any

    def containing(blocks: int) -> UVPoly:
        return g_contain(VincularPattern.uniform_pattern(m, blocks), order)

    # First part shorter than m: the rest must contain all n blocks.
    subtract = u * _geometric_poly(vx, 1, m) * containing(n)
    # First part holds exactly i blocks (length im .. im+m-1).
    for i in range(1, n):
        subtract = subtract + u * _geometric_poly(vx, i * m, i * m + m) * containing(n - i)
    # First part holds the whole pattern.
    subtract = subtract + u * series_of_rational(vx ** (n * m), 1 - vx, order) * rest_any
    return total - subtract


def _cyclic_pieces(m: int, n: int, order: int) -> Tuple[Series, Series]:
    """Laguerre series ``T{u d2H/dv du |v=1}`` and ``T{H(x, u, 1)}``."""
    H = h_series(m, n, order)
    marked = UVPoly.u(order) * uv_derivative(uv_derivative(H, "u"), "v")
    return transform_T(uv_substitute(marked, 1)), transform_T(uv_substitute(H, 1))


def _phi_over_t(s: Series) -> Series:
    try:
        return phi_series(divide_by_t(s))
    except NonzeroConstant as exc:
        raise DivisionByTFailure(str(exc)) from exc


def cyclic_avoiders_gf(k: int, m: int, n: int, order: int) -> Series:
    """``sum_l (#k-ary words of length l cyclically avoiding 1^m-...-1^m) x^l``, ``n`` blocks."""
    return cyclic_avoiders_weighted(m, n, [Series.x(order)] * k, order)


def cyclic_avoiders_weighted(
    m: int, n: int, substitutions: Sequence[Series], order: int
) -> Series:
    """Cyclic avoiders of ``1^m-...-1^m`` with letter ``i`` weighted by ``substitutions[i]``.

    Words that use a single letter are counted separately; every other word
    is grouped by its first letter ``i`` and read off as ``phi(t^-1 D_i (E - 1))``,
    where ``D_i`` weights the avoiding ``i``-factorizations by first-part length
    times parts and ``E`` is the star product over the remaining letters.
    """
    _require_unit_free(substitutions)
    order = _order_of(substitutions, order)
    subs = [s.truncate(order) for s in substitutions]
    marked, avoid = _cyclic_pieces(m, n, order)
    marked_i = [marked.compose(s) for s in subs]
    avoid_i = [avoid.compose(s) for s in subs]
    total = Series.one(order)
    for i, s in enumerate(subs):
        others = Series.one(order)
        for j, e in enumerate(avoid_i):
            if j != i:
                others = others * e
        total = total + _phi_over_t(marked_i[i] * (others - 1))
        # single-letter words i, ii, ..., i^(mn-1)
        total = total + series_of_rational(s - s ** (m * n), 1 - s, order)
    return total


def cyclic_m_avoiders_weighted(m: int, substitutions: Sequence[Series], order: int) -> Series:
    """Nonempty words cyclically avoiding ``1^m``, letter ``i`` weighted by ``substitutions[i]``.

    Closed form for the single-block case; no Laguerre series involved.
    """
    _require_unit_free(substitutions)
    order = _order_of(substitutions, order)
    single = Series.zero(order)
    linked = Series.zero(order)
    ratio = Series.zero(order)
    for s in substitutions:
        s = s.truncate(order)
        sm = s**m
        single = single + series_of_rational(
            s ** (2 * m) - m * s ** (m + 1) + (m - 1) * sm, (sm - 1) * (s - 1), order
        )
        linked = linked + series_of_rational(
            (m - 1) * s ** (m + 1) - m * sm + s, (sm - 1) ** 2, order
        )
        ratio = ratio + series_of_rational(sm - s, sm - 1, order)
    return single + series_of_rational(linked, 1 - ratio, order)


def cyclic_m_avoiders_closed_form(k: int, m: int, order: int) -> Series:
    """Nonempty k-ary words cyclically avoiding ``1^m``, weighted by ``x^length``."""
    x = Series.x(order)
    inner = series_of_rational(m - (m - 1) * k * x, 1 - k * x + (k - 1) * x**m, order)
    inner = inner - series_of_rational(Series.constant(m, order), 1 - x**m, order)
    body = k * x + (k - 1) * x * inner
    return series_of_rational((1 - x ** (m - 1)) * body, 1 - x, order)


def cyclic_carlitz_compositions_gf(order: int) -> Series:
    """Compositions, weighted by their sum, whose cyclic sequence of parts is Carlitz.

    Only parts ``i <= order`` can contribute.  One-part compositions are
    included; the empty composition is not.
    """
    x = Series.x(order)
    linked = Series.zero(order)
    ratio = Series.zero(order)
    single = Series.zero(order)
    for i in range(1, order + 1):
        xi = x**i
        linked = linked + series_of_rational(xi, (1 + xi) ** 2, order)
        ratio = ratio + series_of_rational(xi, 1 + xi, order)
        single = single + series_of_rational(xi * xi, 1 + xi, order)
    return series_of_rational(linked, 1 - ratio, order) + single


def cyclic_run_limited_arrangements(m: int, spec: SpecLike) -> int:
    """Arrangements of a multiset with no run of ``m`` equal letters, read cyclically."""
    spec = _as_spec(spec)
    counts = spec.multiplicities
    if not counts:
        raise ValueError("need at least one letter")
    if any(n == 0 for n in counts):
        raise DivisionByTFailure("every multiplicity must be positive")
    if len(counts) == 1:
        # i^n is the only arrangement; the phi term covers words with two or more letters
        return int(counts[0] < m)
    prod = _product(p_polynomial(m, n) for n in counts)
    try:
        quotient = divide_by_t(prod)
    except NonzeroConstant as exc:
        raise DivisionByTFailure(str(exc)) from exc
    return _count(sum(counts) * phi(quotient))


# --- forbidden subwords ---------------------------------------------------------------


def _bounded_words(letters: Sequence[Hashable], caps: Dict[Hashable, int]):
    word: List[Hashable] = []
    left = dict(caps)

    def rec():
        yield tuple(word)
        for a in letters:
            if left[a]:
                left[a] -= 1
                word.append(a)
                yield from rec()
                word.pop()
                left[a] += 1

    yield from rec()


def _cuts_by_parts(word: Tuple[Hashable, ...], forbidden: Tuple[Hashable, ...]) -> Dict[int, int]:
    """Ways to cut ``word`` into ``k`` parts none of which contains ``forbidden``."""
    L, f = len(word), len(forbidden)
    bad_end = [False] * (L + 1)  # bad_end[e]: an occurrence ends at position e
    for e in range(f, L + 1):
        bad_end[e] = word[e - f : e] == forbidden
    # ways[i][k]: prefixes of length i cut into k good parts
    ways = [dict() for _ in range(L + 1)]
    ways[0][0] = 1
    for i in range(1, L + 1):
        for j in range(i - 1, -1, -1):
            # part word[j:i] is good iff no occurrence lies entirely inside it
            if any(bad_end[e] for e in range(j + f, i + 1)):
                break
            for k, c in ways[j].items():
                ways[i][k + 1] = ways[i].get(k + 1, 0) + c
    return ways[L]


def forbidden_letters_series(available: MultisetSpec, forbidden: Sequence[Hashable]) -> TPoly:
    """Laguerre series (weight 1) of factorizations over the letters of ``forbidden``,
    within the multiplicities of ``available``, with no part containing ``forbidden``.
    """
    forbidden = tuple(forbidden)
    letters = list(dict.fromkeys(forbidden))
    for a in letters:
        if available.multiplicity(a) == 0:
            raise LetterMissing(f"letter {a!r} of the forbidden word is not available")
    caps = {a: available.multiplicity(a) for a in letters}
    by_parts: Dict[int, int] = {}
    for w in _bounded_words(letters, caps):
        for k, c in _cuts_by_parts(w, forbidden).items():
            by_parts[k] = by_parts.get(k, 0) + c
    acc = TPoly()
    for k, c in by_parts.items():
        acc = acc + c * laguerre_polynomial(k)
    return acc


def free_letters_series(available: MultisetSpec, excluded: Iterable[Hashable], start: int = 0) -> TPoly:
    """``prod_c sum_{i=start}^{n_c} t^i / i!`` over available letters not in ``excluded``.

    ``start=0`` lets a letter go unused.
    """
    skip = set(excluded)
    return _product(_truncated_exp(n, start) for a, n, _ in available.entries if a not in skip)


def subword_avoid_count(available: Union[MultisetSpec, str], forbidden: Sequence[Hashable]) -> int:
    """Words formed from ``available`` (each letter at most its multiplicity,
    the empty word included) with no contiguous occurrence of ``forbidden``.
    """
    if isinstance(available, str):
        available = MultisetSpec.from_word(available)
    forbidden = tuple(forbidden)
    if not forbidden:
        raise ValueError("forbidden word must be nonempty")
    f1 = forbidden_letters_series(available, forbidden)
    f2 = free_letters_series(available, forbidden)
    return _count(phi(f1 * f2))
