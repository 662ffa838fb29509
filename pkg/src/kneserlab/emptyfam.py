"""Empty ordered families: vertex/edge classes, emptiness tests, randomized
search, and the greedy sequential builder for the k=2 graph case.

An ordered family (A_1, ..., A_l) of disjoint r-blocks is empty in a sampled
graph when no class E_i(A) contributes a present edge; emptiness licenses the
max-element coloring with ceil((n-l)/(r-1)) colors. The search is greedy
block placement with backtracking and seeded restarts; a failed search is
never a nonexistence proof.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .colorings import Coloring, verify_proper
from .families import Family
from .kneser import EdgeId, KneserParams, SampledGraph, edge_index
from .solvers import SolveBudget
from .subsets import GroundSet, KSubset, rank_of_mask


@dataclass(frozen=True)
class OrderedFamily:
    """Ordered tuple of pairwise disjoint r-element blocks."""

    blocks: tuple[KSubset, ...]

    def __post_init__(self) -> None:
        used = 0
        r = self.blocks[0].k if self.blocks else None
        for b in self.blocks:
            if b.k != r:
                raise ValueError("all blocks must have the same size")
            if b.mask & used:
                raise ValueError("blocks must be pairwise disjoint")
            used |= b.mask

    @property
    def l(self) -> int:
        return len(self.blocks)

    def union_mask(self, upto: int | None = None) -> int:
        m = 0
        for b in self.blocks[: upto if upto is not None else len(self.blocks)]:
            m |= b.mask
        return m


def vertex_class(a: OrderedFamily, i: int, k: int, n: int | None = None) -> Family:
    """V_i: the k-subsets of A_1 u ... u A_i that meet A_i."""
    if not 1 <= i <= a.l:
        raise ValueError(f"class index {i} outside 1..{a.l}")
    ground_n = n if n is not None else max(max(b.elements()) for b in a.blocks)
    members = [
        KSubset.from_positions(combo)
        for combo in itertools.combinations(_mask_positions(a.union_mask(i)), k)
        if any(p in _position_set(a.blocks[i - 1].mask) for p in combo)
    ]
    return Family(members, GroundSet(ground_n), k=k)


def edge_class(a: OrderedFamily, i: int, params: KneserParams) -> list[EdgeId]:
    """E_i: all r-tuples of pairwise disjoint members of V_i, as rank tuples.

    Every returned tuple covers A_i: the r disjoint members each take a
    distinct element of the r-element block.
    """
    fam = vertex_class(a, i, params.k, n=params.n)
    masks = sorted(fam.masks)
    block = a.blocks[i - 1].mask
    out: list[EdgeId] = []

    def extend(prefix: list[int], used: int, start: int) -> None:
        if len(prefix) == params.r:
            assert used & block == block, "edge tuple fails to cover its block"
            out.append(tuple(sorted(rank_of_mask(m) for m in prefix)))
            return
        for j in range(start, len(masks)):
            if masks[j] & used:
                continue
            prefix.append(masks[j])
            extend(prefix, used | masks[j], j + 1)
            prefix.pop()

    extend([], 0, 0)
    return out


def is_empty_in(a: OrderedFamily, g: SampledGraph) -> bool:
    """True iff no edge of any class E_i(A) is present in the sample."""
    if a.union_mask() >> g.params.n:
        raise ValueError("family blocks leave the sample's ground set")
    index = edge_index(g.params).index
    for i in range(1, a.l + 1):
        for e in edge_class(a, i, g.params):
            if g.contains_index(index[e]):
                return False
    return True


@dataclass(frozen=True)
class EmptinessWitness:
    family: OrderedFamily
    params: KneserParams
    p: Fraction
    sample_seed: int
    class_edge_counts: tuple[int, ...]
    relabeling: tuple[int, ...]  # 1-based original element -> relabeled element

    @property
    def total_edges(self) -> int:
        return sum(self.class_edge_counts)

    def to_text(self) -> str:
        head = (
            f"kneser-witness v1 {self.params.n} {self.params.k} {self.params.r} "
            f"{self.p.numerator} {self.p.denominator} {self.sample_seed} {self.family.l}"
        )
        body = "".join(str(b) + "\n" for b in self.family.blocks)
        return head + "\n" + body + f"E_total {self.total_edges}\n"


def make_witness(a: OrderedFamily, g: SampledGraph) -> EmptinessWitness:
    """Verify emptiness from scratch and package the result."""
    if not is_empty_in(a, g):
        raise ValueError("family is not empty in the sample")
    counts = tuple(len(edge_class(a, i, g.params)) for i in range(1, a.l + 1))
    relabel = [0] * g.params.n
    nxt = 1
    for b in a.blocks:
        for e in b.elements():
            relabel[e - 1] = nxt
            nxt += 1
    for e in range(1, g.params.n + 1):
        if relabel[e - 1] == 0:
            relabel[e - 1] = nxt
            nxt += 1
    return EmptinessWitness(
        family=a,
        params=g.params,
        p=g.p,
        sample_seed=g.seed,
        class_edge_counts=counts,
        relabeling=tuple(relabel),
    )


@dataclass
class SearchOutcome:
    witness: EmptinessWitness | None
    restarts: int
    nodes: int
    millis: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def _mask_positions(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _position_set(mask: int) -> set[int]:
    return set(_mask_positions(mask))


def _extension_edges(
    prefix_masks: list[int], new_block: int, params: KneserParams
) -> list[EdgeId]:
    """Edge class of the next block against the current prefix union."""
    blocks = [KSubset(m, params.r) for m in prefix_masks] + [KSubset(new_block, params.r)]
    a = OrderedFamily(tuple(blocks))
    return edge_class(a, len(blocks), params)


def search_empty_family(
    g: SampledGraph, l: int, budget: SolveBudget | None = None, seed: int = 0
) -> SearchOutcome:
    """Greedy block placement with backtracking and seeded random restarts.

    The first restart scans candidate blocks in ascending order, so on an
    edgeless sample the witness is the leading blocks {1..r}, {r+1..2r}, ...
    Failure within budget is not a nonexistence proof.
    """
    budget = budget or SolveBudget(node_limit=200_000, wall_ms=30_000)
    params = g.params
    n, r = params.n, params.r
    if l < 1 or r * l > n:
        raise ValueError(f"need 1 <= l and r*l <= n, got l={l} for {params}")
    index = edge_index(params).index
    start = time.monotonic()
    deadline = start + budget.wall_ms / 1000.0
    nodes = 0
    restarts = 0
    rng = random.Random(seed)
    per_restart = max(500, budget.node_limit // 50)

    def present(edges: list[EdgeId]) -> bool:
        return any(g.contains_index(index[e]) for e in edges)

    while nodes < budget.node_limit and time.monotonic() < deadline:
        restarts += 1
        shuffle = restarts > 1
        prefix: list[int] = []
        # stack of candidate iterators, one per depth
        stacks: list[list[int]] = []
        spent = 0

        def candidates() -> list[int]:
            used = 0
            for m in prefix:
                used |= m
            free = [p for p in range(n) if not used >> p & 1]
            combos = [sum(1 << p for p in c) for c in itertools.combinations(free, r)]
            if shuffle:
                rng.shuffle(combos)
            combos.reverse()  # consumed by pop() from the tail
            return combos

        stacks.append(candidates())
        while stacks and spent < per_restart:
            spent += 1
            nodes += 1
            if nodes % 512 == 0 and time.monotonic() > deadline:
                break
            if not stacks[-1]:
                stacks.pop()
                if prefix:
                    prefix.pop()
                continue
            cand = stacks[-1].pop()
            edges = _extension_edges(prefix, cand, params)
            if present(edges):
                continue
            prefix.append(cand)
            if len(prefix) == l:
                fam = OrderedFamily(tuple(KSubset(m, r) for m in prefix))
                witness = make_witness(fam, g)  # re-verifies from scratch
                millis = int((time.monotonic() - start) * 1000)
                return SearchOutcome(witness, restarts, nodes, millis)
            stacks.append(candidates())

    millis = int((time.monotonic() - start) * 1000)
    return SearchOutcome(None, restarts, nodes, millis)


def search_empty_family_exhaustive(g: SampledGraph, l: int) -> EmptinessWitness | None:
    """Complete enumeration oracle; None is a nonexistence proof. n <= 12 only."""
    params = g.params
    if params.n > 12:
        raise ValueError("exhaustive search is an oracle for n <= 12 only")
    n, r = params.n, params.r
    index = edge_index(params).index

    def rec(prefix: list[int]) -> OrderedFamily | None:
        if len(prefix) == l:
            return OrderedFamily(tuple(KSubset(m, r) for m in prefix))
        used = 0
        for m in prefix:
            used |= m
        free = [p for p in range(n) if not used >> p & 1]
        for combo in itertools.combinations(free, r):
            cand = sum(1 << p for p in combo)
            edges = _extension_edges(prefix, cand, params)
            if any(g.contains_index(index[e]) for e in edges):
                continue
            prefix.append(cand)
            found = rec(prefix)
            if found is not None:
                return found
            prefix.pop()
        return None

    fam = rec([])
    return make_witness(fam, g) if fam is not None else None


@dataclass
class BuildOutcome:
    coloring: Coloring | None
    h_achieved: int
    absorbed: tuple[int, ...]  # 1-based elements whose stars were absorbed
    nodes: int
    millis: int


def sequential_k2_build(
    g: SampledGraph, h: int, budget: SolveBudget | None = None, seed: int = 0
) -> BuildOutcome:
    """Grow a small base whose pair-families absorb stars of new elements.

    Starts from the two-family split of the pairs on a 4-element base (the
    star of the least element plus the complementary triangle) and repeatedly
    adjoins a pool element whose base-star keeps some family independent in g,
    in seeded random order. Achieves n - h' colors where h' = |base| - 2; the
    baseline h' = 2 is always available, so the build only reports absence
    when the target is below it.
    """
    params = g.params
    if params.k != 2 or params.r != 2:
        raise ValueError("the sequential builder supports k=2, r=2 only")
    n = params.n
    if n < 4:
        raise ValueError("need n >= 4 for the base partition")
    if h > n:
        raise ValueError(f"target h={h} exceeds n={n}")
    budget = budget or SolveBudget(node_limit=2_000_000, wall_ms=30_000)
    start = time.monotonic()
    deadline = start + budget.wall_ms / 1000.0
    rng = random.Random(seed)
    nodes = 0

    if h < 2:
        return BuildOutcome(None, 0, (), 0, 0)
    target = min(h, n - 2)

    index = edge_index(params).index
    pair = lambda a, b: (1 << a) | (1 << b)
    base = [0, 1, 2, 3]
    families: list[list[int]] = [
        [pair(0, 1), pair(0, 2), pair(0, 3)],
        [pair(1, 2), pair(1, 3), pair(2, 3)],
    ]
    pool = list(range(4, n))
    absorbed: list[int] = []

    def star_absorbable(fam: list[int], x: int) -> list[int] | None:
        star = [pair(x, y) for y in base]
        for e in fam:
            for f in star:
                if e & f:
                    continue
                t = tuple(sorted((rank_of_mask(e), rank_of_mask(f))))
                if g.contains_index(index[t]):
                    return None
        return star

    h_achieved = 2
    while h_achieved < target and pool and time.monotonic() < deadline and nodes < budget.node_limit:
        rng.shuffle(pool)
        committed = False
        for x in pool:
            for fam in families:
                nodes += len(fam) * len(base)
                star = star_absorbable(fam, x)
                if star is not None:
                    fam.extend(star)
                    base.append(x)
                    pool.remove(x)
                    absorbed.append(x + 1)
                    h_achieved += 1
                    committed = True
                    break
            if committed:
                break
        if not committed:
            break

    # families cover all pairs inside the base; stars on the leftover elements
    # (by least outside element) cover the rest
    outside = sorted(set(range(n)) - set(base))
    out_color = {p: i for i, p in enumerate(outside)}
    assignment: dict[int, int] = {}
    for ci, fam in enumerate(families):
        for m in fam:
            assignment[rank_of_mask(m)] = ci + 1
    a_count = len(families)
    from .subsets import enumerate_masks

    for rank, mask in enumerate(enumerate_masks(n, 2)):
        if rank in assignment:
            continue
        low_outside = min(p for p in _mask_positions(mask) if p in out_color)
        assignment[rank] = a_count + out_color[low_outside] + 1
    t = a_count + len(outside)
    coloring = Coloring(params, assignment, t, provenance=f"sequential-k2(h'={h_achieved})")
    assert t == n - h_achieved
    report = verify_proper(coloring, g.view())
    assert report.proper, "sequential builder produced an improper coloring"
    millis = int((time.monotonic() - start) * 1000)
    return BuildOutcome(coloring, h_achieved, tuple(absorbed), nodes, millis)
