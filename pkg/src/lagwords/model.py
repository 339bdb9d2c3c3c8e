"""Combinatorial inputs shared by the formulas and the enumerators."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence, Tuple

Word = Tuple[Hashable, ...]
Factorization = Tuple[Word, ...]


@dataclass(frozen=True)
class VincularPattern:
    """The pattern ``1^{m_1}-1^{m_2}-...-1^{m_n}``.

    An occurrence is ``m_1 + ... + m_n`` equal letters split into ``n`` runs
    of consecutive positions, the runs in order with arbitrary gaps between
    them.
    """

    blocks: Tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks:
            raise ValueError("a vincular pattern needs at least one block")
        if any(b < 1 for b in blocks):
            raise ValueError("block lengths must be positive")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str) -> "VincularPattern":
        """Parse dash notation such as ``"2-2"`` or ``"3-1-2"``."""
        try:
            return cls(tuple(int(p) for p in text.strip().split("-")))
        except ValueError as exc:
            raise ValueError(f"bad pattern {text!r}: {exc}") from None

    @classmethod
    def uniform_pattern(cls, m: int, n: int) -> "VincularPattern":
        return cls((m,) * n)

    @property
    def uniform(self) -> bool:
        return len(set(self.blocks)) == 1

    @property
    def size(self) -> int:
        return sum(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "-".join(map(str, self.blocks))


@dataclass(frozen=True)
class MultisetSpec:
    """Letters with multiplicities and optional run caps.

    ``entries`` holds ``(letter, multiplicity, cap)`` triples; a cap ``m``
    forbids runs of ``m`` or more copies of that letter.
    """

    entries: Tuple[Tuple[Hashable, int, Optional[int]], ...]

    def __post_init__(self):
        entries = tuple((e[0], int(e[1]), None if e[2] is None else int(e[2])) for e in self.entries)
        letters = [e[0] for e in entries]
        if len(set(letters)) != len(letters):
            raise ValueError("letter ids must be distinct")
        for letter, n, cap in entries:
            if n < 0:
                raise ValueError(f"negative multiplicity for {letter!r}")
            if cap is not None and cap < 2:
                raise ValueError(f"run cap for {letter!r} must be at least 2")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_counts(cls, counts: Iterable[int], caps: Optional[Sequence[Optional[int]]] = None):
        """Letters ``1..k`` with the given multiplicities (and caps)."""
        counts = list(counts)
        caps = list(caps) if caps is not None else [None] * len(counts)
        if len(caps) != len(counts):
            raise ValueError("counts and caps differ in length")
        return cls(tuple((i + 1, n, c) for i, (n, c) in enumerate(zip(counts, caps))))

    @classmethod
    def from_word(cls, word: Iterable[Hashable]) -> "MultisetSpec":
        """Multiplicities read off a word, letters in order of first appearance."""
        counts = Counter(word)
        return cls(tuple((letter, n, None) for letter, n in counts.items()))

    @classmethod
    def parse_pairs(cls, text: str) -> "MultisetSpec":
        """Parse ``"n1:m1,n2:m2,..."`` (multiplicity:cap) into letters ``1..k``."""
        counts, caps = [], []
        for item in text.split(","):
            n, _, m = item.strip().partition(":")
            counts.append(int(n))
            caps.append(int(m) if m else None)
        return cls.from_counts(counts, caps)

    @property
    def letters(self) -> Tuple[Hashable, ...]:
        return tuple(e[0] for e in self.entries)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(e[1] for e in self.entries)

    @property
    def caps(self) -> Tuple[Optional[int], ...]:
        return tuple(e[2] for e in self.entries)

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    def multiplicity(self, letter) -> int:
        for e in self.entries:
            if e[0] == letter:
                return e[1]
        return 0

    def with_caps(self, cap: int) -> "MultisetSpec":
        return MultisetSpec(tuple((a, n, cap) for a, n, _ in self.entries))
