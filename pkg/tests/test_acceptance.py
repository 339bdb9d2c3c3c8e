"""Acceptance checks, one test per criterion.

Every equality is exact.  Each test appends short findings to ``notes``;
conftest prints one PASS/FAIL line per criterion at the end of the run.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from lagwords.laguerre import (
    divide_by_t,
    laguerre_compose,
    laguerre_polynomial,
    linearization_coefficients,
    phi,
)
from lagwords.model import MultisetSpec, VincularPattern
from lagwords.oracle import (
    compositions,
    count_arrangements,
    count_avoiding_words,
    count_cyclic_avoiding_words,
    cyclically_avoids,
    factorizations_of_word,
    is_carlitz,
    laguerre_series_of_finite_set,
    multiset_permutations,
    restrict,
    runs_below_caps,
    star_product,
    star_product_by_restriction,
)
from lagwords.patterns import (
    carlitz_arrangements,
    cyclic_avoiders_gf,
    cyclic_carlitz_compositions_gf,
    cyclic_m_avoiders_closed_form,
    cyclic_run_limited_arrangements,
    forbidden_letters_series,
    run_limited_arrangements,
    subword_avoid_count,
    vincular_avoiders_gf,
)
from lagwords.ring import Series, TPoly, series_of_rational

t = TPoly.t()
l = laguerre_polynomial


def timed(fn, *args):
    start = time.perf_counter()
    value = fn(*args)
    return value, time.perf_counter() - start


@pytest.mark.criterion(1, "WALLAWALLA run-limited count 1584, oracle < 1 s")
def test_wallawalla(notes):
    spec = MultisetSpec((("W", 2, 2), ("A", 4, 3), ("L", 4, 3)))
    assert run_limited_arrangements(spec) == 1584
    assert math.factorial(10) // (2 * 24 * 24) == 3150
    count, secs = timed(count_arrangements, spec, runs_below_caps(spec))
    notes.append(f"oracle {count} over 3150 arrangements in {secs:.2f}s")
    assert count == 1584
    assert secs < 1


@pytest.mark.criterion(2, "MISSISSIPPI Carlitz count 2016, oracle < 1 s")
def test_mississippi(notes):
    assert carlitz_arrangements([1, 4, 4, 2]) == 2016
    count, secs = timed(count_arrangements, MultisetSpec.from_word("MISSISSIPPI"), is_carlitz)
    notes.append(f"oracle {count} over 34650 arrangements in {secs:.2f}s")
    assert count == 2016
    assert secs < 1


@pytest.mark.criterion(3, "CONSTANTINOPLE avoiding TNT = 9854474467 with exact f_A1, < 1 s")
def test_tnt(notes):
    spec = MultisetSpec.from_word("CONSTANTINOPLE")
    f1 = forbidden_letters_series(spec, "TNT")
    assert f1 == Fraction(1, 12) * t**5 + Fraction(5, 12) * t**4 + Fraction(2, 3) * t**3 + t**2 + t + 1
    count, secs = timed(subword_avoid_count, spec, "TNT")
    notes.append(f"{count} in {secs:.3f}s")
    assert count == 9854474467
    assert secs < 1


@pytest.mark.criterion(4, "k=3 avoiders of 11-11: 1,3,9,27,78,222; oracle to length 10 < 1 s")
def test_ternary_eleven_eleven_avoiders(notes):
    pattern = VincularPattern.parse("2-2")
    assert vincular_avoiders_gf(3, pattern, 5).integers() == [1, 3, 9, 27, 78, 222]
    formula = vincular_avoiders_gf(3, pattern, 10).integers()
    oracle, secs = timed(lambda: [count_avoiding_words(3, pattern, n) for n in range(11)])
    notes.append(f"oracle to length 10 in {secs:.2f}s")
    assert formula == oracle
    assert secs < 1


@pytest.mark.criterion(5, "m-Carlitz identity, k 1..4, m 2..4, N=20")
def test_m_carlitz_identity(notes):
    N = 20
    x = Series.x(N)
    literal_disagrees = []
    for k in range(1, 5):
        for m in range(2, 5):
            got = vincular_avoiders_gf(k, VincularPattern((m,)), N)
            closed = series_of_rational(1 - x**m, 1 - k * x + (k - 1) * x**m, N)
            assert got == closed, (k, m)
            # the transcription with "- (k-1) x^m" in the denominator
            literal = series_of_rational(1 - x**m, 1 - k * x - (k - 1) * x**m, N)
            if literal != got:
                literal_disagrees.append((k, m))
            # independent ground truth for the short coefficients
            L = 7 if k <= 3 else 5
            assert got.integers()[: L + 1] == [
                count_avoiding_words(k, VincularPattern((m,)), n) for n in range(L + 1)
            ]
    notes.append("denominator 1 - kx + (k-1)x^m; the '-(k-1)x^m' sign disagrees with the oracle "
                 f"for {len(literal_disagrees)} of 12 (k,m) pairs, all with k >= 2")
    assert all(k >= 2 for k, _ in literal_disagrees)


def relabelled_count(k, length, pattern):
    """Cyclic avoiders counted over words whose letters first appear in order 1, 2, ...

    Renaming letters preserves cyclic avoidance, so each such word stands for
    k!/(k-j)! words, where j is the number of distinct letters.
    """
    total = 0
    word = []

    def rec(top):
        nonlocal total
        if len(word) == length:
            if cyclically_avoids(word, pattern):
                total += math.perm(k, top)
            return
        for a in range(1, min(top + 1, k) + 1):
            word.append(a)
            rec(max(top, a))
            word.pop()

    rec(0)
    return total


def test_relabelling_shortcut_matches_plain_enumeration():
    for k in range(1, 4):
        for m in range(2, 4):
            pattern = VincularPattern((m,))
            for n in range(8):
                assert relabelled_count(k, n, pattern) == count_cyclic_avoiding_words(k, pattern, n)


@pytest.mark.criterion(6, "cyclic 1^m avoiders equal the closed form, k 1..4, m 2..4, N=20; oracle k<=3, length<=12")
def test_cyclic_single_block(notes):
    N = 20
    for k in range(1, 5):
        for m in range(2, 5):
            # the closed form counts nonempty words; the general formula includes the empty word
            assert cyclic_avoiders_gf(k, m, 1, N) == 1 + cyclic_m_avoiders_closed_form(k, m, N), (k, m)
    start = time.perf_counter()
    for k in range(1, 4):
        for m in range(2, 5):
            got = cyclic_avoiders_gf(k, m, 1, 12).integers()
            want = [relabelled_count(k, n, VincularPattern((m,))) for n in range(13)]
            assert got == want, (k, m)
    notes.append("closed form + 1 for the empty word; oracle grid in "
                 f"{time.perf_counter() - start:.1f}s")


@pytest.mark.criterion(7, "cyclic 1^m-...-1^m avoiders, k,m,n in {2,3}, N=10, grid < 2 min")
def test_cyclic_general(notes):
    start = time.perf_counter()
    for k, m, n in itertools.product((2, 3), repeat=3):
        got = cyclic_avoiders_gf(k, m, n, 10).integers()
        pattern = VincularPattern.uniform_pattern(m, n)
        want = [count_cyclic_avoiding_words(k, pattern, length) for length in range(11)]
        assert got == want, (k, m, n)
    secs = time.perf_counter() - start
    notes.append(f"8 grid points in {secs:.1f}s")
    assert secs < 120


def two_letter_carlitz_factorizations(i, j):
    tally = {}
    for w in multiset_permutations({"a": i, "b": j}):
        for fact in factorizations_of_word(w):
            if all(is_carlitz(p) for p in fact):
                tally[len(fact)] = tally.get(len(fact), 0) + 1
    return tally


@pytest.mark.criterion(8, "linearization: n_{2,5,3} = 6 and oracle agreement for i+j <= 8")
def test_linearization(notes):
    assert linearization_coefficients(2, 5)[3] == 6
    pairs = 0
    for i in range(9):
        for j in range(9 - i):
            assert dict(linearization_coefficients(i, j)) == two_letter_carlitz_factorizations(i, j)
            pairs += 1
    notes.append(f"{pairs} (i,j) pairs")


@pytest.mark.criterion(9, "near-orthogonality and weighted delta tables, 1 <= i,j <= 10")
def test_orthogonality():
    for i in range(1, 11):
        for j in range(1, 11):
            assert phi(l(i) * l(j)) == {0: 2, 1: 1}.get(abs(i - j), 0)
            assert phi(i * divide_by_t(l(i) * l(j))) == (1 if i == j else 0)


def factorization_pool(letters, max_len):
    return [
        fact
        for n in range(max_len + 1)
        for w in itertools.product(letters, repeat=n)
        for fact in factorizations_of_word(w)
    ]


@pytest.mark.criterion(10, "product rule on 200 random factorization-set pairs, length <= 8")
def test_star_product_rule(notes):
    N = 8
    rng = random.Random(20240611)
    pool_a = factorization_pool("a", 4)
    pool_bc = factorization_pool("bc", 4)
    checked_by_definition = 0
    for trial in range(200):
        s1 = rng.sample(pool_a, rng.randint(0, 6))
        s2 = rng.sample(pool_bc, rng.randint(0, 6))
        prod = star_product(s1, s2, max_length=N)
        for fact in prod:
            assert restrict(fact, {"a"}) in s1 and restrict(fact, {"b", "c"}) in s2
        lhs = laguerre_series_of_finite_set(prod, N)
        rhs = laguerre_series_of_finite_set(s1, N) * laguerre_series_of_finite_set(s2, N)
        assert lhs == rhs, trial
        if trial < 20:
            small1 = [f for f in s1 if sum(map(len, f)) <= 3]
            small2 = [f for f in s2 if sum(map(len, f)) <= 3]
            assert sorted(star_product(small1, small2)) == sorted(
                star_product_by_restriction(small1, small2)
            )
            checked_by_definition += 1
    notes.append(f"star product matched the restriction definition on {checked_by_definition} pairs")


CONVENTIONS = {
    "one-part included, first != last for >= 2 parts": lambda c: len(c) == 1 or (is_carlitz(c) and c[0] != c[-1]),
    "first != last for every composition": lambda c: is_carlitz(c) and c[0] != c[-1],
    "plain Carlitz compositions": is_carlitz,
}


@pytest.mark.criterion(11, "cyclic Carlitz compositions match the oracle for sums <= 12")
def test_cyclic_carlitz_compositions(notes):
    N = 12
    got = cyclic_carlitz_compositions_gf(N).integers()
    matching = []
    for name, ok in CONVENTIONS.items():
        counts = [sum(1 for c in compositions(n) if c and ok(c)) for n in range(N + 1)]
        if counts == got:
            matching.append(name)
    notes.append("convention: parts cyclically distinct (adjacent parts differ and first != last), "
                 "one-part compositions counted, empty composition not counted (constant term 0)")
    notes.append(f"series {','.join(map(str, got))}")
    assert matching == ["one-part included, first != last for >= 2 parts"]


@pytest.mark.criterion(12, "cyclic run-limited arrangements match the oracle, sum <= 9, k <= 3, m in {2,3}")
def test_cyclic_run_limited(notes):
    checked = 0
    for k in range(1, 4):
        for counts in itertools.product(range(1, 10), repeat=k):
            if sum(counts) > 9:
                continue
            spec = MultisetSpec.from_counts(counts)
            for m in (2, 3):
                pattern = VincularPattern((m,))
                want = count_arrangements(spec, lambda w: cyclically_avoids(w, pattern))
                assert cyclic_run_limited_arrangements(m, counts) == want, (counts, m)
                checked += 1
    notes.append(f"{checked} (spec, m) cases")


@pytest.mark.criterion(13, "l_i(l_j) nonnegative integral in the l basis, 1 <= i,j <= 5 (reported, not asserted)")
def test_compose_exploratory(notes):
    bad = [(i, j) for i in range(1, 6) for j in range(1, 6) if not laguerre_compose(i, j).is_nonnegative_integral()]
    if bad:
        notes.append(f"observed: fails for {bad}")
    else:
        notes.append("observed: holds for all 25 pairs")
    sample = laguerre_compose(2, 2)
    notes.append("l_2(l_2) = " + " + ".join(f"{sample[k]}*l_{k}" for k in sample))
