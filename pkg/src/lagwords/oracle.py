"""Brute-force enumerators used as ground truth.

Everything here counts by listing objects and testing each one against the
literal definition.  Nothing is clever on purpose: these are the reference
values the generating functions are checked against.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import AlphabetOverlap, BudgetExceeded
from .laguerre import laguerre_polynomial
from .model import Factorization, MultisetSpec, VincularPattern, Word
from .ring import Series, TPoly

__all__ = [
    "DEFAULT_BUDGET",
    "budget",
    "runs",
    "contains_vincular",
    "factorization_contains",
    "cyclically_avoids",
    "rotations",
    "restrict",
    "is_carlitz",
    "contains_subword",
    "count_avoiding_words",
    "count_cyclic_avoiding_words",
    "multiset_permutations",
    "count_arrangements",
    "count_bounded_words",
    "runs_below_caps",
    "compositions",
    "enumerate_one_letter_factorizations",
    "factorizations_of_word",
    "factorizations_over",
    "laguerre_series_of_finite_set",
    "star_product",
    "star_product_by_restriction",
]

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "WORDS_ORACLE_BUDGET"

_SEP = object()


def budget(value: Optional[int] = None) -> int:
    if value is not None:
        return value
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(size: int, limit: Optional[int], what: str):
    limit = budget(limit)
    if size > limit:
        raise BudgetExceeded(f"{what}: {size} objects exceed the budget of {limit}")


# --- predicates --------------------------------------------------------------


def runs(word: Sequence[Hashable]) -> List[Tuple[Hashable, int]]:
    """Maximal blocks of equal letters as ``(letter, length)``."""
    return [(letter, sum(1 for _ in grp)) for letter, grp in itertools.groupby(word)]


def contains_vincular(word: Sequence[Hashable], pattern: VincularPattern, ignore=()) -> bool:
    """Whether ``word`` contains ``pattern`` using letters outside ``ignore``.

    For each letter the blocks are placed greedily into its runs from left
    to right; a block fits inside a run or right after the previous block
    in the same run, never across a different letter.
    """
    blocks = pattern.blocks
    n = len(blocks)
    placed: Dict[Hashable, int] = {}
    for letter, length in runs(word):
        if letter in ignore:
            continue
        j = placed.get(letter, 0)
        while j < n and blocks[j] <= length:
            length -= blocks[j]
            j += 1
        if j == n:
            return True
        placed[letter] = j
    return False


def factorization_contains(phi: Factorization, pattern: VincularPattern) -> bool:
    """Join the parts with a separator letter and look for the pattern away from it."""
    word: List[Hashable] = []
    for i, part in enumerate(phi):
        if i:
            word.append(_SEP)
        word.extend(part)
    return contains_vincular(word, pattern, ignore=(_SEP,))


def rotations(word: Sequence[Hashable]) -> Iterator[Tuple[Hashable, ...]]:
    w = tuple(word)
    for k in range(max(len(w), 1)):
        yield w[-k:] + w[:-k] if k else w


def cyclically_avoids(word: Sequence[Hashable], pattern: VincularPattern) -> bool:
    return not any(contains_vincular(r, pattern) for r in rotations(word))


def is_carlitz(word: Sequence[Hashable]) -> bool:
    return all(a != b for a, b in zip(word, word[1:]))


def contains_subword(word: Sequence[Hashable], sub: Sequence[Hashable]) -> bool:
    w, s = tuple(word), tuple(sub)
    return any(w[i : i + len(s)] == s for i in range(len(w) - len(s) + 1))


def restrict(phi: Factorization, subset: Iterable[Hashable]) -> Factorization:
    """Maximal subwords of the parts of ``phi`` that use only letters of ``subset``."""
    keep = set(subset)
    parts = []
    for part in phi:
        for inside, grp in itertools.groupby(part, key=lambda a: a in keep):
            if inside:
                parts.append(tuple(grp))
    return tuple(parts)


# --- words -------------------------------------------------------------------


def count_avoiding_words(k: int, pattern: VincularPattern, length: int, limit: int = None) -> int:
    _check_budget(k**length, limit, "k-ary words")
    return sum(
        1
        for w in itertools.product(range(1, k + 1), repeat=length)
        if not contains_vincular(w, pattern)
    )


def count_cyclic_avoiding_words(
    k: int, pattern: VincularPattern, length: int, limit: int = None
) -> int:
    _check_budget(k**length, limit, "k-ary words")
    return sum(
        1
        for w in itertools.product(range(1, k + 1), repeat=length)
        if cyclically_avoids(w, pattern)
    )


def multiset_permutations(counts: Dict[Hashable, int]) -> Iterator[Tuple[Hashable, ...]]:
    """Distinct arrangements of a multiset, each exactly once."""
    letters = [a for a, n in counts.items() if n > 0]
    remaining = {a: counts[a] for a in letters}
    total = sum(remaining.values())
    word: List[Hashable] = []

    def rec():
        if len(word) == total:
            yield tuple(word)
            return
        for a in letters:
            if remaining[a]:
                remaining[a] -= 1
                word.append(a)
                yield from rec()
                word.pop()
                remaining[a] += 1

    yield from rec()


def _multinomial(ns: Iterable[int]) -> int:
    ns = list(ns)
    out = math.factorial(sum(ns))
    for n in ns:
        out //= math.factorial(n)
    return out


def count_arrangements(
    spec: MultisetSpec,
    predicate: Callable[[Tuple[Hashable, ...]], bool] = lambda w: True,
    limit: int = None,
) -> int:
    """Number of distinct arrangements of ``spec`` satisfying ``predicate``."""
    _check_budget(_multinomial(spec.multiplicities), limit, "arrangements")
    counts = dict(zip(spec.letters, spec.multiplicities))
    return sum(1 for w in multiset_permutations(counts) if predicate(w))


def runs_below_caps(spec: MultisetSpec) -> Callable[[Sequence[Hashable]], bool]:
    """Predicate: every run of a capped letter is shorter than its cap."""
    caps = {a: m for a, _, m in spec.entries if m is not None}
    return lambda w: all(length < caps.get(a, length + 1) for a, length in runs(w))


def count_bounded_words(
    spec: MultisetSpec,
    predicate: Callable[[Tuple[Hashable, ...]], bool] = lambda w: True,
    limit: int = None,
) -> int:
    """Words (the empty one included) using each letter at most its multiplicity."""
    mults = spec.multiplicities
    size = sum(
        _multinomial(sub) for sub in itertools.product(*(range(n + 1) for n in mults))
    )
    _check_budget(size, limit, "bounded words")
    total = 0
    for sub in itertools.product(*(range(n + 1) for n in mults)):
        counts = dict(zip(spec.letters, sub))
        total += sum(1 for w in multiset_permutations(counts) if predicate(w))
    return total


# --- factorizations ----------------------------------------------------------


def compositions(n: int) -> Iterator[Tuple[int, ...]]:
    """All compositions of ``n``; the empty composition for ``n == 0``."""
    if n == 0:
        yield ()
        return
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts, size = [], 1
        for cut in cuts:
            if cut:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        yield tuple(parts)


def enumerate_one_letter_factorizations(
    max_length: int,
    predicate: Optional[Callable[[Factorization], bool]] = None,
    pattern: Optional[VincularPattern] = None,
    avoid: bool = False,
    limit: int = None,
) -> Counter:
    """Tally one-letter factorizations by ``(length, parts, first part length)``.

    Factorizations are generated as compositions of the length.  With
    ``pattern`` set, keep those containing it (or avoiding it when ``avoid``);
    ``predicate`` receives the factorization as a tuple of ``(1, ..., 1)`` parts.
    """
    _check_budget(2 ** max(max_length - 1, 0) * 2, limit, "compositions")
    table: Counter = Counter()
    for length in range(max_length + 1):
        for comp in compositions(length):
            phi = tuple((1,) * p for p in comp)
            if pattern is not None and factorization_contains(phi, pattern) == avoid:
                continue
            if predicate is not None and not predicate(phi):
                continue
            table[(length, len(comp), comp[0] if comp else 0)] += 1
    return table


def factorizations_of_word(word: Sequence[Hashable]) -> Iterator[Factorization]:
    w = tuple(word)
    if not w:
        yield ()
        return
    for comp in compositions(len(w)):
        parts, pos = [], 0
        for p in comp:
            parts.append(w[pos : pos + p])
            pos += p
        yield tuple(parts)


def factorizations_over(
    caps: Dict[Hashable, int],
    part_predicate: Callable[[Word], bool] = lambda p: True,
    limit: int = None,
) -> Iterator[Factorization]:
    """Factorizations using each letter at most ``caps[letter]`` times whose parts all pass."""
    letters = list(caps)
    for sub in itertools.product(*(range(caps[a] + 1) for a in letters)):
        _check_budget(_multinomial(sub) * 2 ** max(sum(sub) - 1, 0), limit, "factorizations")
        for w in multiset_permutations(dict(zip(letters, sub))):
            for phi in factorizations_of_word(w):
                if all(part_predicate(p) for p in phi):
                    yield phi


def laguerre_series_of_finite_set(
    factorizations: Iterable[Factorization], order: int, weight: str = "length"
) -> Series:
    """``sum_phi w(phi) l_{parts(phi)}(t)`` with ``w = x^len`` (or ``1`` for ``weight='unit'``)."""
    acc: Dict[int, TPoly] = {}
    for phi in factorizations:
        n = sum(len(p) for p in phi) if weight == "length" else 0
        if n > order:
            continue
        acc[n] = acc.get(n, TPoly()) + laguerre_polynomial(len(phi))
    return Series.polynomial(acc, order)


def _alphabet(factorizations: Iterable[Factorization]) -> Set[Hashable]:
    return {a for phi in factorizations for part in phi for a in part}


def _skeletons(p: int, q: int) -> Iterator[Tuple[Word, ...]]:
    """Factorizations over ``{a, b}`` with ``p`` a's, ``q`` b's and Carlitz parts."""
    for w in multiset_permutations({"a": p, "b": q}):
        for phi in factorizations_of_word(w):
            if all(is_carlitz(part) for part in phi):
                yield phi


def star_product(
    set1: Iterable[Factorization], set2: Iterable[Factorization], max_length: int = None
) -> List[Factorization]:
    """All factorizations whose restrictions lie in ``set1`` and ``set2``.

    Built by substituting parts into Carlitz ``{a, b}`` skeletons: the n-th
    ``a`` becomes the n-th part of the first factorization, the n-th ``b``
    the n-th part of the second.
    """
    set1, set2 = list(set1), list(set2)
    if _alphabet(set1) & _alphabet(set2):
        raise AlphabetOverlap("star product needs disjoint alphabets")
    out = []
    for phi1 in set1:
        len1 = sum(map(len, phi1))
        for phi2 in set2:
            if max_length is not None and len1 + sum(map(len, phi2)) > max_length:
                continue
            for skel in _skeletons(len(phi1), len(phi2)):
                ia = iter(phi1)
                ib = iter(phi2)
                out.append(
                    tuple(
                        tuple(itertools.chain.from_iterable(next(ia) if s == "a" else next(ib) for s in part))
                        for part in skel
                    )
                )
    return out


def star_product_by_restriction(
    set1: Iterable[Factorization], set2: Iterable[Factorization], limit: int = None
) -> List[Factorization]:
    """Star product straight from the definition: filter every factorization by its restrictions.

    Only practical for tiny inputs; serves as a cross-check of :func:`star_product`.
    """
    set1, set2 = set(set1), set(set2)
    s1, s2 = _alphabet(set1), _alphabet(set2)
    if s1 & s2:
        raise AlphabetOverlap("star product needs disjoint alphabets")
    out = []
    seen_multisets = set()
    for phi1 in set1:
        for phi2 in set2:
            counts = Counter(a for part in phi1 + phi2 for a in part)
            key = tuple(sorted(counts.items(), key=repr))
            if key in seen_multisets:
                continue
            seen_multisets.add(key)
            size = _multinomial(counts.values()) * 2 ** max(sum(counts.values()) - 1, 0)
            _check_budget(size, limit, "factorizations")
            for w in multiset_permutations(dict(counts)):
                for phi in factorizations_of_word(w):
                    if restrict(phi, s1) in set1 and restrict(phi, s2) in set2:
                        out.append(phi)
    return out
