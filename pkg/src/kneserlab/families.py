"""Analytics for explicit set families: stars, degrees, diversity, disjoint pairs.

A family is an explicit collection of k-subsets of [n] with a cached degree
table. Independent sets of the Kneser graph are exactly the intersecting
families, so the disjoint-pair count e(A) equals the number of Kneser edges
inside A.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator

from .cliques import max_clique
from .subsets import GroundSet, KSubset, SizeLimitError, format_subset, parse_subset

EXACT_SUBFAMILY_LIMIT = 40


class Family:
    """Deduplicated set of KSubsets over a fixed ground set.

    Degree tables are filled incrementally while members are added; the family
    is immutable once built and safe for concurrent reads.
    """

    def __init__(self, members: Iterable[KSubset], ground: GroundSet, k: int | None = None):
        self.ground = ground
        self._degrees = [0] * ground.n
        masks: list[int] = []
        seen: set[int] = set()
        for s in members:
            if s.mask >> ground.n:
                raise ValueError(f"{format_subset(s)} is not a subset of [{ground.n}]")
            if k is None:
                k = s.k
            elif s.k != k:
                raise ValueError(f"mixed cardinalities {k} and {s.k} in one family")
            if s.mask in seen:
                continue
            seen.add(s.mask)
            masks.append(s.mask)
            for p in s.positions():
                self._degrees[p] += 1
        self.k = k
        self.masks: tuple[int, ...] = tuple(sorted(masks))

    @classmethod
    def from_masks(cls, masks: Iterable[int], n: int, k: int | None = None) -> "Family":
        return cls(
            (KSubset(m, m.bit_count()) for m in masks), GroundSet(n), k=k
        )

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[KSubset]:
        k = self.k or 0
        return (KSubset(m, k) for m in self.masks)

    def degree(self, x: int) -> int:
        """Degree of the 1-based element x."""
        if not 1 <= x <= self.ground.n:
            raise ValueError(f"element {x} outside [{self.ground.n}]")
        return self._degrees[x - 1]

    @property
    def max_degree(self) -> int:
        return max(self._degrees, default=0)

    def to_text(self) -> str:
        k = self.k or 0
        return "".join(format_subset(KSubset(m, k)) + "\n" for m in self.masks)

    @classmethod
    def from_text(cls, text: str, n: int, k: int | None = None) -> "Family":
        members = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            members.append(parse_subset(line))
        return cls(members, GroundSet(n), k=k)


def is_intersecting(f: Family) -> bool:
    """True iff no two members are disjoint."""
    masks = f.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if a & b == 0:
                return False
    return True


def star_center(f: Family) -> int | None:
    """Smallest 1-based element contained in every member, or None.

    The empty family is vacuously a star; by convention its center is 1.
    """
    if len(f) == 0:
        return 1
    size = len(f)
    for x in range(f.ground.n):
        if f._degrees[x] == size:
            return x + 1
    return None


def diversity(f: Family) -> int:
    """gamma = |f| - max degree; zero iff the family lies inside a star."""
    return len(f) - f.max_degree


def disjoint_pairs(f: Family) -> int:
    """Number of unordered disjoint pairs in f (Kneser edges inside f)."""
    masks = f.masks
    count = 0
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if a & b == 0:
                count += 1
    return count


@dataclass(frozen=True)
class SubfamilyResult:
    size: int
    exact: bool
    mode: str


def largest_intersecting_subfamily(f: Family, mode: str = "auto") -> SubfamilyResult:
    """Size of the maximum intersecting subfamily.

    Exact mode runs a max-clique search on the intersection graph and is
    limited to 40 members; heuristic mode returns a greedy/local-search lower
    bound. "auto" picks exact when it is allowed.
    """
    m = len(f)
    if mode == "auto":
        mode = "exact" if m <= EXACT_SUBFAMILY_LIMIT else "heuristic"
    if mode == "exact":
        if m > EXACT_SUBFAMILY_LIMIT:
            raise SizeLimitError(
                f"exact subfamily search limited to {EXACT_SUBFAMILY_LIMIT} members, got {m}"
            )
        adj = _intersection_adjacency(f)
        clique, proven, _ = max_clique(adj)
        return SubfamilyResult(size=len(clique), exact=proven, mode="exact")
    if mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")
    return SubfamilyResult(size=_greedy_intersecting(f), exact=False, mode="heuristic")


def ell(f: Family, mode: str = "auto") -> int:
    """l(f) = |f| minus the largest intersecting subfamily; 0 iff intersecting."""
    return len(f) - largest_intersecting_subfamily(f, mode=mode).size


def _intersection_adjacency(f: Family) -> list[int]:
    masks = f.masks
    m = len(masks)
    adj = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if masks[i] & masks[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _greedy_intersecting(f: Family) -> int:
    # Star through the max-degree element, then 1-insertion local search.
    masks = list(f.masks)
    if not masks:
        return 0
    best_x = max(range(f.ground.n), key=lambda x: f._degrees[x])
    chosen = [m for m in masks if m >> best_x & 1]
    improved = True
    while improved:
        improved = False
        for m in masks:
            if m in chosen:
                continue
            if all(m & c for c in chosen):
                chosen.append(m)
                improved = True
    return len(chosen)


def high_degree_set(f: Family) -> set[int]:
    """1-based elements x with d_x > |f| / (2k); at most 2k^2 of them exist."""
    if len(f) == 0 or not f.k:
        return set()
    threshold = Fraction(len(f), 2 * f.k)
    out = {x + 1 for x in range(f.ground.n) if f._degrees[x] > threshold}
    assert len(out) <= 2 * f.k * f.k
    return out


@dataclass(frozen=True)
class DisjointPairBoundReport:
    applicable: bool
    holds: bool
    lhs: int
    rhs: Fraction
    gamma: int
    size: int
    threshold: int


def check_disjoint_pair_bound(f: Family, b: int) -> DisjointPairBoundReport:
    """Check the disjoint-pair lower bound for families in C([b],k).

    Hypothesis: |f| >= 2k*C(b-2,k-2). Conclusion: e(f) is at least
    min(gamma*|f|/6, |f|^2/(144*C(2k,k))).
    """
    if f.k is None:
        raise ValueError("cannot test the bound on an empty family of unknown k")
    k = f.k
    for m in f.masks:
        if m >> b:
            raise ValueError(f"family member outside [{b}]")
    size = len(f)
    threshold = 2 * k * comb(b - 2, k - 2)
    applicable = size >= threshold
    gamma = diversity(f)
    lhs = disjoint_pairs(f)
    rhs = min(Fraction(gamma * size, 6), Fraction(size * size, 144 * comb(2 * k, k)))
    return DisjointPairBoundReport(
        applicable=applicable,
        holds=lhs >= rhs,
        lhs=lhs,
        rhs=rhs,
        gamma=gamma,
        size=size,
        threshold=threshold,
    )
