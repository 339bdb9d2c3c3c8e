import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagwords.errors import AlphabetOverlap, BudgetExceeded
from lagwords.model import MultisetSpec, VincularPattern
from lagwords.oracle import (
    budget,
    compositions,
    contains_subword,
    contains_vincular,
    count_arrangements,
    count_avoiding_words,
    count_bounded_words,
    count_cyclic_avoiding_words,
    cyclically_avoids,
    enumerate_one_letter_factorizations,
    factorization_contains,
    factorizations_of_word,
    is_carlitz,
    multiset_permutations,
    restrict,
    rotations,
    runs,
    runs_below_caps,
    star_product,
    star_product_by_restriction,
)

P = VincularPattern.parse


def contains_by_positions(word, pattern):
    """Literal definition: pick run start positions, runs in order, gaps allowed."""
    L = len(word)
    blocks = pattern.blocks
    for starts in itertools.combinations(range(L), len(blocks)):
        ok = True
        for s, m, nxt in zip(starts, blocks, starts[1:] + (L,)):
            if s + m > nxt:
                ok = False
                break
        if not ok:
            continue
        letters = {word[s + d] for s, m in zip(starts, blocks) for d in range(m)}
        if len(letters) == 1:
            return True
    return False


words3 = st.lists(st.integers(1, 3), max_size=9).map(tuple)
patterns = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda b: VincularPattern(tuple(b)))


@settings(max_examples=400, deadline=None)
@given(words3, patterns)
def test_containment_matches_definition(word, pattern):
    assert contains_vincular(word, pattern) == contains_by_positions(word, pattern)


def test_containment_examples():
    assert contains_vincular("aabaa", P("2-2"))
    assert not contains_vincular("aabab", P("2-2"))
    assert contains_vincular("aaaa", P("2-2"))
    assert not contains_vincular("aaa", P("2-2"))
    assert contains_vincular("xyyx", P("1-1"))
    assert not contains_vincular("xyz", P("1-1"))


def test_containment_ignores_letters():
    assert not contains_vincular((0, 1, 1, 0, 1, 1), P("2-2"), ignore={1})


def test_factorization_containment_does_not_cross_parts():
    # runs cannot span a part boundary
    assert not factorization_contains(((1,), (1,)), P("2"))
    assert factorization_contains(((1, 1),), P("2"))
    assert factorization_contains(((1,), (1,)), P("1-1"))


def test_runs_and_rotations():
    assert runs("aabccc") == [("a", 2), ("b", 1), ("c", 3)]
    assert sorted(rotations("abc")) == [tuple("abc"), tuple("bca"), tuple("cab")]
    assert list(rotations("")) == [()]


def test_cyclic_avoidance():
    # a a b a: the rotation a a a b has a run of 3
    assert not cyclically_avoids("aaba", P("3"))
    assert contains_vincular("aaba", P("3")) is False


@settings(max_examples=200, deadline=None)
@given(words3, patterns)
def test_cyclic_implies_linear(word, pattern):
    if cyclically_avoids(word, pattern):
        assert not contains_vincular(word, pattern)


def test_cyclic_counts_bounded_by_linear():
    pat = P("2-2")
    for n in range(7):
        assert count_cyclic_avoiding_words(2, pat, n) <= count_avoiding_words(2, pat, n)


def test_carlitz_and_subword():
    assert is_carlitz("abab")
    assert not is_carlitz("abba")
    assert is_carlitz("")
    assert contains_subword("CONSTANTINOPLE", "TIN")
    assert not contains_subword("TNAT", "TNT")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.sampled_from("abcd"), min_size=1, max_size=4).map(tuple), max_size=4).map(tuple),
       st.sets(st.sampled_from("abcd")))
def test_restriction_length_law(fact, subset):
    r = restrict(fact, subset)
    assert sum(map(len, r)) == sum(1 for p in fact for a in p if a in subset)
    assert all(p and set(p) <= subset for p in r)
    assert restrict(r, subset) == r


def test_restriction_example():
    fact = (("a", "b", "a"), ("b",), ("a", "a"))
    assert restrict(fact, {"a"}) == (("a",), ("a",), ("a", "a"))
    assert restrict(fact, {"b"}) == (("b",), ("b",))


def test_multiset_permutations_distinct_and_complete():
    counts = {"M": 1, "I": 4, "S": 4, "P": 2}
    seen = set()
    n = 0
    for w in multiset_permutations(counts):
        seen.add(w)
        n += 1
    assert n == len(seen) == math.factorial(11) // (24 * 24 * 2)


def test_count_arrangements_mississippi():
    spec = MultisetSpec.from_word("MISSISSIPPI")
    assert count_arrangements(spec, is_carlitz) == 2016


def test_run_cap_predicate():
    spec = MultisetSpec.from_counts([2, 4, 4], [2, 3, 3])
    ok = runs_below_caps(spec)
    assert ok((1, 2, 2, 3, 3, 2, 1, 3, 2, 3))
    assert not ok((1, 1, 2, 2, 3, 3, 2, 3, 2, 3))


def test_bounded_words_small():
    # letters a (<= 1), b (<= 1): "", a, b, ab, ba
    assert count_bounded_words(MultisetSpec.from_counts([1, 1])) == 5


def test_compositions():
    assert list(compositions(0)) == [()]
    assert sorted(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert sum(1 for _ in compositions(8)) == 128


def test_factorizations_of_word():
    assert sorted(factorizations_of_word("ab")) == [(("a",), ("b",)), (("a", "b"),)]
    assert list(factorizations_of_word("")) == [()]


def test_one_letter_tally():
    table = enumerate_one_letter_factorizations(3)
    # length 3: (3), (1,2), (2,1), (1,1,1)
    assert table[(3, 1, 3)] == 1
    assert table[(3, 2, 1)] == 1 and table[(3, 2, 2)] == 1
    assert table[(3, 3, 1)] == 1
    assert table[(0, 0, 0)] == 1


def test_budget_guard(monkeypatch):
    with pytest.raises(BudgetExceeded):
        count_avoiding_words(3, P("2"), 12, limit=1000)
    monkeypatch.setenv("WORDS_ORACLE_BUDGET", "10")
    assert budget() == 10
    with pytest.raises(BudgetExceeded):
        count_avoiding_words(2, P("2"), 5)


def one_letter_sets(letter, max_len):
    out = []
    for n in range(max_len + 1):
        for comp in compositions(n):
            out.append(tuple((letter,) * p for p in comp))
    return out


def test_star_product_recovers_factors():
    s1 = one_letter_sets("a", 2)
    s2 = one_letter_sets("b", 2)
    for fact in star_product(s1, s2):
        assert restrict(fact, {"a"}) in s1
        assert restrict(fact, {"b"}) in s2


def test_star_product_matches_definition():
    s1 = [(("a",),), (("a", "a"),), (("a",), ("a",))]
    s2 = [(), (("b",),), (("b",), ("b",))]
    fast = sorted(star_product(s1, s2))
    slow = sorted(star_product_by_restriction(s1, s2))
    assert fast == slow
    assert len(fast) == len(set(fast))


def test_star_product_with_multiletter_parts():
    s1 = [(("a", "c"),), (("c",), ("a",))]
    s2 = [(("b",),)]
    assert sorted(star_product(s1, s2)) == sorted(star_product_by_restriction(s1, s2))


def test_star_product_rejects_shared_letters():
    with pytest.raises(AlphabetOverlap):
        star_product([(("a",),)], [(("a",),)])
