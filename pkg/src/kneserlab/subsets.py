"""Bitmask encoding, colex ranking and enumeration of k-element subsets of [n].

Ground-set elements are 0-based bit positions internally; every user-facing
string (CLI, CSV, file formats) is 1-based, so bit i prints as element i+1.
Masks are capped at 64 positions, which keeps disjointness a single AND and
covers every desk-scale experiment this toolkit runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

MAX_GROUND = 64


class SizeLimitError(ValueError):
    """An instance is too large for the requested exact computation."""


@dataclass(frozen=True)
class GroundSet:
    """The ground set {1, ..., n}, held as its size."""

    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"ground-set size must be in 1..{MAX_GROUND}, got {self.n}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


@dataclass(frozen=True)
class KSubset:
    """A k-element subset, stored as a bitmask over positions 0..63."""

    mask: int
    k: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> MAX_GROUND:
            raise ValueError("mask must fit in 64 bit positions")
        if self.mask.bit_count() != self.k:
            raise ValueError(f"mask has {self.mask.bit_count()} bits set, expected k={self.k}")

    @classmethod
    def from_elements(cls, elements: Iterable[int]) -> "KSubset":
        """Build from 1-based elements, e.g. from_elements([1, 3, 5])."""
        mask = 0
        for e in elements:
            if not 1 <= e <= MAX_GROUND:
                raise ValueError(f"element {e} out of range 1..{MAX_GROUND}")
            mask |= 1 << (e - 1)
        return cls(mask, mask.bit_count())

    @classmethod
    def from_positions(cls, positions: Iterable[int]) -> "KSubset":
        """Build from 0-based bit positions."""
        mask = 0
        for p in positions:
            mask |= 1 << p
        return cls(mask, mask.bit_count())

    def elements(self) -> tuple[int, ...]:
        """1-based elements in increasing order."""
        return tuple(p + 1 for p in self.positions())

    def positions(self) -> tuple[int, ...]:
        """0-based bit positions in increasing order."""
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def __str__(self) -> str:
        return format_subset(self)


def format_subset(s: KSubset) -> str:
    """Textual form: comma-separated 1-based elements in braces, e.g. {1,3,5}."""
    return "{" + ",".join(str(e) for e in s.elements()) + "}"


def parse_subset(text: str) -> KSubset:
    """Inverse of format_subset; tolerates surrounding whitespace."""
    t = text.strip()
    if not (t.startswith("{") and t.endswith("}")):
        raise ValueError(f"subset text must be brace-delimited, got {text!r}")
    body = t[1:-1].strip()
    if not body:
        return KSubset(0, 0)
    return KSubset.from_elements(int(part) for part in body.split(","))


def rank_colex(s: KSubset) -> int:
    """Colexicographic rank of s; independent of the ambient ground-set size.

    For 0-based elements a_1 < ... < a_k the rank is sum_i C(a_i, i).
    """
    return sum(comb(a, i) for i, a in enumerate(s.positions(), start=1))


def rank_of_mask(mask: int) -> int:
    """rank_colex on a raw bitmask; hot-path variant used by graph code."""
    rank = 0
    i = 0
    while mask:
        low = mask & -mask
        i += 1
        rank += comb(low.bit_length() - 1, i)
        mask ^= low
    return rank


def unrank_colex(i: int, k: int, n: int = MAX_GROUND) -> KSubset:
    """Inverse of rank_colex: the rank-i k-subset, restricted to fit in [n]."""
    if k < 0 or i < 0 or i >= comb(n, k):
        raise ValueError(f"rank {i} out of range 0..C({n},{k})-1")
    mask = 0
    rem = i
    for j in range(k, 0, -1):
        # Largest a with C(a, j) <= rem; scan down from n-1 is fine at n <= 64.
        a = j - 1
        while comb(a + 1, j) <= rem:
            a += 1
        mask |= 1 << a
        rem -= comb(a, j)
    return KSubset(mask, k)


def mask_of_rank(i: int, k: int) -> int:
    """unrank_colex returning the raw bitmask; hot-path variant."""
    mask = 0
    rem = i
    for j in range(k, 0, -1):
        a = j - 1
        while comb(a + 1, j) <= rem:
            a += 1
        mask |= 1 << a
        rem -= comb(a, j)
    return mask


def is_disjoint(s: KSubset, t: KSubset) -> bool:
    return s.mask & t.mask == 0


def enumerate_k_subsets(n: int, k: int) -> Iterator[KSubset]:
    """All k-subsets of [n] in colex order; stream position equals colex rank.

    For k-subsets, colex order coincides with numeric order of the masks, so
    Gosper's hack walks the stream. k > n yields an empty stream by convention.
    """
    if n < 0 or n > MAX_GROUND or k < 0:
        raise ValueError(f"need 0 <= k and 0 <= n <= {MAX_GROUND}")
    if k > n:
        return
    if k == 0:
        yield KSubset(0, 0)
        return
    limit = 1 << n
    mask = (1 << k) - 1
    while mask < limit:
        yield KSubset(mask, k)
        # Gosper: next larger integer with the same popcount.
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def enumerate_masks(n: int, k: int) -> Iterator[int]:
    """Raw-mask variant of enumerate_k_subsets."""
    if k > n:
        return
    if k == 0:
        yield 0
        return
    limit = 1 << n
    mask = (1 << k) - 1
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def is_stable(s: KSubset, n: int) -> bool:
    """True iff s has no two cyclically consecutive elements of [n]."""
    return mask_is_stable(s.mask, n)


def mask_is_stable(mask: int, n: int) -> bool:
    if mask >> n:
        raise ValueError("subset has elements outside the ground set")
    if n == 1:
        return True
    rot = ((mask << 1) | (mask >> (n - 1))) & ((1 << n) - 1)
    return mask & rot == 0
