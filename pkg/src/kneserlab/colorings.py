"""Explicit coloring constructions, properness verification, edge accounting.

Colorings map colex vertex ranks to 1-based color ids and may be partial.
Verification against a full Kneser view exploits the fact that properness is
equivalent to every color class being free of disjoint r-tuples; sampled views
are checked edge by edge against the materialized presence bitset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .kneser import EdgeId, GraphView, KneserParams, edge_count, schrijver_view
from .subsets import KSubset, enumerate_masks, mask_of_rank

VIOLATION_CAP = 100


@dataclass
class Coloring:
    """A total or partial map from vertex ranks to colors 1..t."""

    params: KneserParams
    assignment: dict[int, int]
    t: int
    provenance: str = "manual"

    def __post_init__(self) -> None:
        for rank, color in self.assignment.items():
            if not 1 <= color <= self.t:
                raise ValueError(f"color {color} of rank {rank} outside 1..{self.t}")

    def color_of(self, rank: int) -> int | None:
        return self.assignment.get(rank)

    def is_total_on(self, view: GraphView) -> bool:
        return all(v in self.assignment for v in view.vertex_ranks)

    def uncolored_ranks(self) -> list[int]:
        return [v for v in range(self.params.vertex_count) if v not in self.assignment]

    def classes(self) -> dict[int, list[int]]:
        """Color -> sorted ranks; only nonempty classes appear."""
        out: dict[int, list[int]] = {}
        for rank in sorted(self.assignment):
            out.setdefault(self.assignment[rank], []).append(rank)
        return out

    def color_array(self) -> list[int]:
        """Dense rank-indexed lookup; 0 marks an uncolored rank."""
        arr = [0] * self.params.vertex_count
        for rank, color in self.assignment.items():
            arr[rank] = color
        return arr

    def to_text(self) -> str:
        tag = self.provenance.replace(" ", "_")
        head = (
            f"kneser-coloring v1 {self.params.n} {self.params.k} {self.params.r} "
            f"{self.t} {tag}"
        )
        body = "".join(f"{rank} {self.assignment[rank]}\n" for rank in sorted(self.assignment))
        return head + "\n" + body

    @classmethod
    def from_text(cls, text: str) -> "Coloring":
        lines = text.splitlines()
        head = lines[0].split()
        if head[:2] != ["kneser-coloring", "v1"] or len(head) != 7:
            raise ValueError(f"bad coloring header: {lines[0]!r}")
        n, k, r, t = (int(x) for x in head[2:6])
        assignment = {}
        for line in lines[1:]:
            if not line.strip():
                continue
            rank, color = line.split()
            assignment[int(rank)] = int(color)
        return cls(KneserParams(n, k, r), assignment, t, provenance=head[6])


@dataclass(frozen=True)
class ProperReport:
    proper: bool
    violations: tuple[EdgeId, ...]


def _class_tuples(masks: list[int], ranks: list[int], r: int, cap: int | None) -> list[tuple[int, ...]]:
    """Disjoint r-tuples among the given class members, as global rank tuples.

    Stops after cap tuples when cap is given. Classes from the shipped
    constructions are intersecting, so the common case exits on the pair scan.
    """
    found: list[tuple[int, ...]] = []
    m = len(masks)

    def extend(prefix: list[int], used: int, start: int) -> bool:
        if len(prefix) == r:
            found.append(tuple(ranks[i] for i in prefix))
            return cap is not None and len(found) >= cap
        for i in range(start, m):
            if masks[i] & used:
                continue
            prefix.append(i)
            if extend(prefix, used | masks[i], i + 1):
                return True
            prefix.pop()
        return False

    extend([], 0, 0)
    return found


def verify_proper(c: Coloring, g: GraphView) -> ProperReport:
    """Check that no present edge of g is monochromatic under the total coloring c."""
    if not c.is_total_on(g):
        raise ValueError("verify_proper requires a coloring that is total on the view")
    r = g.params.r
    if g.is_full_induced:
        by_color: dict[int, tuple[list[int], list[int]]] = {}
        k = g.params.k
        for v in g.vertex_ranks:
            col = c.assignment[v]
            group = by_color.setdefault(col, ([], []))
            group[0].append(mask_of_rank(v, k))
            group[1].append(v)
        violations: list[EdgeId] = []
        for masks, ranks in by_color.values():
            room = VIOLATION_CAP - len(violations)
            if room > 0:
                violations.extend(_class_tuples(masks, ranks, r, cap=room))
        return ProperReport(proper=not violations, violations=tuple(violations))
    colors = c.color_array()
    violations = []
    for e in g.iter_edges():
        first = colors[e[0]]
        if first and all(colors[v] == first for v in e[1:]):
            violations.append(e)
            if len(violations) >= VIOLATION_CAP:
                return ProperReport(False, tuple(violations))
    return ProperReport(proper=not violations, violations=tuple(violations))


def monochromatic_edges(c: Coloring, g: GraphView) -> int:
    """Count present edges whose r endpoints all share one color.

    Partial colorings are fine: an uncolored endpoint never contributes.
    """
    r = g.params.r
    if g.is_full_induced:
        k = g.params.k
        by_color: dict[int, list[int]] = {}
        for v in g.vertex_ranks:
            col = c.assignment.get(v)
            if col is not None:
                by_color.setdefault(col, []).append(mask_of_rank(v, k))
        total = 0
        for masks in by_color.values():
            if r == 2:
                for i, a in enumerate(masks):
                    for b in masks[i + 1 :]:
                        if a & b == 0:
                            total += 1
            else:
                total += len(_class_tuples(masks, list(range(len(masks))), r, cap=None))
        return total
    colors = c.color_array()
    total = 0
    for e in g.iter_edges():
        first = colors[e[0]]
        if first and all(colors[v] == first for v in e[1:]):
            total += 1
    return total


def canonical_coloring(n: int, k: int) -> Coloring:
    """n-2k+2 colors: color i holds the sets with minimum element i, and the
    k-subsets of the last 2k-1 elements share the final color."""
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    params = KneserParams(n, k, 2)
    t = n - 2 * k + 2
    assignment: dict[int, int] = {}
    for rank, mask in enumerate(enumerate_masks(n, k)):
        low = (mask & -mask).bit_length() - 1
        assignment[rank] = low + 1 if low < t - 1 else t
    return Coloring(params, assignment, t, provenance="canonical")


def merged_canonical(n: int, k: int) -> Coloring:
    """n-2k+1 colors: like canonical, but the last 2k elements share one color,
    which costs exactly C(2k,k)/2 monochromatic edges."""
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    params = KneserParams(n, k, 2)
    t = n - 2 * k + 1
    assignment: dict[int, int] = {}
    for rank, mask in enumerate(enumerate_masks(n, k)):
        low = (mask & -mask).bit_length() - 1
        assignment[rank] = low + 1 if low < t - 1 else t
    return Coloring(params, assignment, t, provenance="merged-canonical")


def starfree_coloring(k: int) -> Coloring:
    """Proper coloring of KG_{n,k} with n = 2(k-1)^2 in which no color class
    is contained in a star.

    The ground set splits into k-1 blocks of size 2k-2. Each block carries
    2k-5 Hilton-Milner-type families anchored at its first elements plus one
    family of sets meeting the block's last three elements twice; ties go to
    the lowest family index.
    """
    if k < 3:
        raise ValueError(f"star-free construction needs k >= 3, got {k}")
    n = 2 * (k - 1) * (k - 1)
    width = 2 * k - 2
    mod = 2 * k - 5
    params = KneserParams(n, k, 2)

    # Per block: list of (kind, anchor_bit, f_mask) in paper order H_1..H_{2k-5}, G.
    predicates: list[tuple[str, int, int]] = []
    for block in range(k - 1):
        o = block * width  # 0-based position offset of the block
        three = ((1 << 3) - 1) << (o + 2 * k - 5)  # local elements 2k-4..2k-2
        for i in range(1, mod + 1):
            f_mask = three
            for step in range(1, k - 2):
                e = (i + step - 1) % mod + 1  # local element in [2k-5]
                f_mask |= 1 << (o + e - 1)
            predicates.append(("hm", 1 << (o + i - 1), f_mask))
        predicates.append(("g", 0, three))

    t = len(predicates)
    assert t == (2 * k - 4) * (k - 1)
    # Each F_i stays with its own family even when an earlier family also
    # covers it; without this the lowest-index tie-break can strip a family
    # down to a star (its non-anchored sets all contain the anchor element).
    protected = {
        f_mask: idx + 1 for idx, (kind, _, f_mask) in enumerate(predicates) if kind == "hm"
    }
    assignment: dict[int, int] = {}
    for rank, mask in enumerate(enumerate_masks(n, k)):
        pinned = protected.get(mask)
        if pinned is not None:
            assignment[rank] = pinned
            continue
        for idx, (kind, anchor, f_mask) in enumerate(predicates):
            if kind == "hm":
                if mask & anchor and mask & f_mask:
                    assignment[rank] = idx + 1
                    break
            else:
                if (mask & f_mask).bit_count() >= 2:
                    assignment[rank] = idx + 1
                    break
        else:
            raise AssertionError(f"construction failed to cover rank {rank}")
    return Coloring(params, assignment, t, provenance="starfree")


def triple_block_coloring(n: int, k: int) -> Coloring:
    """Partial coloring with n-2k intersecting classes leaving 3^k sets uncolored.

    Stars are placed on the first n-3k elements; the last 3k elements split
    into k blocks of three, and a set joins the color of the lowest block it
    meets in at least two elements.
    """
    if n < 3 * k:
        raise ValueError(f"need n >= 3k, got n={n}, k={k}")
    params = KneserParams(n, k, 2)
    s = n - 3 * k
    t = n - 2 * k
    blocks = [((1 << 3) - 1) << (s + 3 * i) for i in range(k)]
    star_zone = (1 << s) - 1
    assignment: dict[int, int] = {}
    for rank, mask in enumerate(enumerate_masks(n, k)):
        if mask & star_zone:
            assignment[rank] = (mask & -mask).bit_length()  # min element's star
            continue
        for i, b in enumerate(blocks):
            if (mask & b).bit_count() >= 2:
                assignment[rank] = s + i + 1
                break
    return Coloring(params, assignment, t, provenance="triple-block")


def empty_family_coloring(blocks: Sequence[KSubset], params: KneserParams) -> Coloring:
    """The max-element coloring that is proper whenever the ordered family is
    empty in the graph: ceil((n-l)/(r-1)) colors.

    The ground set is relabeled so block i becomes [r(i-1)+1, ri]; a set whose
    relabeled maximum falls in block i takes color i, all later elements are
    chopped into segments of length r-1.
    """
    n, r = params.n, params.r
    used = 0
    for b in blocks:
        if b.k != r:
            raise ValueError(f"blocks must be {r}-element sets, got {b}")
        if b.mask >> n:
            raise ValueError(f"block {b} outside [{n}]")
        if b.mask & used:
            raise ValueError("blocks must be pairwise disjoint")
        used |= b.mask
    l = len(blocks)

    # relabel[p] = 0-based new position of 0-based original position p
    relabel = [0] * n
    nxt = 0
    for b in blocks:
        for p in b.positions():
            relabel[p] = nxt
            nxt += 1
    for p in range(n):
        if not used >> p & 1:
            relabel[p] = nxt
            nxt += 1

    t = -(-(n - l) // (r - 1)) if n > l else 0
    assignment: dict[int, int] = {}
    for rank, mask in enumerate(enumerate_masks(n, params.k)):
        new_max = max(relabel[p] for p in _positions(mask)) + 1  # 1-based
        if new_max <= r * l:
            color = (new_max + r - 1) // r
        else:
            color = l + -(-(new_max - r * l) // (r - 1))
        assignment[rank] = color
    return Coloring(params, assignment, t, provenance=f"empty-family(l={l})")


def _positions(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def schrijver_ratio_bound(n: int, k: int) -> Fraction:
    """|E(KG_{n,k})| / |E(SG_{n,k})|: averaging over cyclic orders shows any
    (n-2k+1)-coloring has at least this many monochromatic edges."""
    params = KneserParams(n, k, 2)
    sg_edges = schrijver_view(params).edge_total()
    if sg_edges == 0:
        raise ValueError(f"SG_{{{n},{k}}} has no edges; the ratio is undefined")
    return Fraction(edge_count(params), sg_edges)
