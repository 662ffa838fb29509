"""The Kneser hypergraph KG^r_{n,k}, its seeded random subgraphs and views.

Vertices are k-subsets of [n] identified by colex rank. An edge is a sorted
tuple of r pairwise-disjoint vertex ranks; its canonical index is its position
in the lexicographic order of all such tuples, which gives stable ids for
persistence. Samples materialize one presence bit per canonical index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .prng import coin_threshold, coin_words_bulk
from .subsets import (
    SizeLimitError,
    KSubset,
    MAX_GROUND,
    enumerate_masks,
    mask_is_stable,
    mask_of_rank,
)

MAX_EDGES_MATERIALIZED = 1 << 32

EdgeId = tuple[int, ...]


@dataclass(frozen=True)
class KneserParams:
    """The triple (n, k, r) defining KG^r_{n,k}; r=2 is the graph case."""

    n: int
    k: int
    r: int = 2

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"n must be in 1..{MAX_GROUND}, got {self.n}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.r < 2:
            raise ValueError(f"r must be >= 2, got {self.r}")

    @property
    def has_edges(self) -> bool:
        """n < r*k gives an edgeless hypergraph; permitted but flagged here."""
        return self.n >= self.r * self.k

    @property
    def vertex_count(self) -> int:
        return math.comb(self.n, self.k)


def edge_count(params: KneserParams) -> int:
    """Number of unordered r-tuples of pairwise disjoint k-subsets of [n].

    Equals n! / ((k!)^r (n-rk)! r!); for r=2 this is C(n,k)*C(n-k,k)/2.
    """
    if not params.has_edges:
        return 0
    count = math.prod(math.comb(params.n - j * params.k, params.k) for j in range(params.r))
    count //= math.factorial(params.r)
    if count >= 1 << 63:
        raise SizeLimitError(f"edge count of {params} does not fit in 64 bits")
    return count


_EDGE_LIST_CACHE: dict[KneserParams, "EdgeIndex"] = {}


class EdgeIndex:
    """Materialized lex-ordered edge list with tuple -> canonical index lookup."""

    def __init__(self, params: KneserParams):
        self.params = params
        self.vertex_masks = list(enumerate_masks(params.n, params.k))
        self.edges: list[EdgeId] = []
        masks = self.vertex_masks
        nv = len(masks)
        r = params.r

        def extend(prefix: list[int], used: int, start: int, depth: int) -> None:
            if depth == r:
                self.edges.append(tuple(prefix))
                return
            for v in range(start, nv):
                m = masks[v]
                if m & used:
                    continue
                prefix.append(v)
                extend(prefix, used | m, v + 1, depth + 1)
                prefix.pop()

        if params.has_edges:
            extend([], 0, 0, 0)
        self.index: dict[EdgeId, int] = {e: i for i, e in enumerate(self.edges)}

    def __len__(self) -> int:
        return len(self.edges)


def edge_index(params: KneserParams) -> EdgeIndex:
    """Shared per-params edge index; one enumeration is reused by all samples."""
    idx = _EDGE_LIST_CACHE.get(params)
    if idx is None:
        count = edge_count(params)
        if count > MAX_EDGES_MATERIALIZED:
            raise SizeLimitError(f"{count} edges is too many to materialize")
        idx = EdgeIndex(params)
        assert len(idx) == count
        _EDGE_LIST_CACHE[params] = idx
    return idx


def validate_edge(params: KneserParams, e: Sequence[int]) -> EdgeId:
    """Check that e is a sorted tuple of r pairwise-disjoint vertex ranks."""
    if len(e) != params.r:
        raise ValueError(f"edge must have arity {params.r}, got {len(e)}")
    nv = params.vertex_count
    used = 0
    prev = -1
    for v in e:
        if not prev < v < nv:
            raise ValueError(f"edge ranks must be strictly increasing in 0..{nv - 1}")
        m = mask_of_rank(v, params.k)
        if m & used:
            raise ValueError(f"edge {tuple(e)} references non-disjoint subsets")
        used |= m
        prev = v
    return tuple(e)


@dataclass(frozen=True)
class SampledGraph:
    """Seed-reproducible record of which edges of KG^r_{n,k} survived Bernoulli(p).

    Presence is a pure function of (params, p, seed); the bitset is indexed by
    canonical edge index. Immutable and safe for concurrent reads.
    """

    params: KneserParams
    p: Fraction
    seed: int
    bits: int = field(repr=False)
    n_edges: int

    @property
    def present_count(self) -> int:
        return self.bits.bit_count()

    def contains_index(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def present_indices(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def present_edges(self) -> Iterator[EdgeId]:
        idx = edge_index(self.params)
        for i in self.present_indices():
            yield idx.edges[i]

    def view(self) -> "GraphView":
        return GraphView(
            params=self.params,
            vertex_ranks=tuple(range(self.params.vertex_count)),
            sample=self,
            label=f"sample(p={self.p},seed={self.seed})",
        )

    def to_text(self) -> str:
        width = max(1, (self.n_edges + 3) // 4)
        head = (
            f"kneser-sample v1 {self.params.n} {self.params.k} {self.params.r} "
            f"{self.p.numerator} {self.p.denominator} {self.seed}"
        )
        return head + "\n" + format(self.bits, f"0{width}x") + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SampledGraph":
        lines = text.splitlines()
        if len(lines) < 2:
            raise ValueError("sample file needs a header line and a bitset line")
        head = lines[0].split()
        if head[:2] != ["kneser-sample", "v1"] or len(head) != 8:
            raise ValueError(f"bad sample header: {lines[0]!r}")
        n, k, r, p_num, p_den, seed = (int(x) for x in head[2:])
        params = KneserParams(n, k, r)
        count = edge_count(params)
        bits = int(lines[1], 16) if lines[1].strip() else 0
        if bits >> count:
            raise ValueError("bitset has more bits than the edge count allows")
        return cls(params=params, p=Fraction(p_num, p_den), seed=seed, bits=bits, n_edges=count)


def sample_subgraph(params: KneserParams, p: Fraction | float | str, seed: int) -> SampledGraph:
    """Keep each edge independently with probability p under the documented PRNG.

    Each (params, p, seed) triple is reproducible on its own; no coupling
    between samples drawn at different p is promised.
    """
    if isinstance(p, str):
        from .prng import parse_probability

        p = parse_probability(p)
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"probability must be in [0,1], got {p}")
    count = edge_count(params)
    if count > MAX_EDGES_MATERIALIZED:
        raise SizeLimitError(f"{count} edges is too many to materialize")
    threshold = coin_threshold(p)
    bits = 0
    if threshold and count:
        chunk = 1 << 22
        parts: list[bytes] = []
        lo32 = np.uint64(0xFFFFFFFF)
        for start in range(0, count, chunk):
            width = min(chunk, count - start)
            words = coin_words_bulk(seed, width, start=start)
            present = (words & lo32) < np.uint64(threshold)
            # packbits pads the tail chunk to a byte boundary, so chunk
            # boundaries must be byte-aligned; 1<<22 is.
            parts.append(np.packbits(present, bitorder="little").tobytes())
        bits = int.from_bytes(b"".join(parts), "little")
        bits &= (1 << count) - 1
    return SampledGraph(params=params, p=p, seed=seed, bits=bits, n_edges=count)


def contains_edge(g: SampledGraph, e: Sequence[int]) -> bool:
    """True iff the (validated) edge survived sampling."""
    t = validate_edge(g.params, e)
    i = edge_index(g.params).index.get(t)
    if i is None:
        raise ValueError(f"{t} is not an edge of {g.params}")
    return g.contains_index(i)


@dataclass(frozen=True)
class GraphView:
    """Immutable view of a full or sampled Kneser (hyper)graph on a vertex subset.

    sample=None means the view is induced from the full KG^r_{n,k}: every
    disjoint tuple among the view's vertices is an edge. Otherwise edges are
    the sample's present edges among the view's vertices.
    """

    params: KneserParams
    vertex_ranks: tuple[int, ...]
    sample: SampledGraph | None = None
    label: str = "full"

    @property
    def is_full_induced(self) -> bool:
        return self.sample is None

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_ranks)

    def vertex_masks(self) -> list[int]:
        k = self.params.k
        return [mask_of_rank(v, k) for v in self.vertex_ranks]

    def iter_edges(self) -> Iterator[EdgeId]:
        """Present edges among the view's vertices, as global rank tuples."""
        if self.sample is not None:
            if len(self.vertex_ranks) == self.params.vertex_count:
                yield from self.sample.present_edges()
            else:
                vset = set(self.vertex_ranks)
                for e in self.sample.present_edges():
                    if all(v in vset for v in e):
                        yield e
            return
        ranks = self.vertex_ranks
        masks = self.vertex_masks()
        nv = len(ranks)
        r = self.params.r

        def extend(prefix: list[int], used: int, start: int, depth: int) -> Iterator[EdgeId]:
            if depth == r:
                yield tuple(ranks[i] for i in prefix)
                return
            for i in range(start, nv):
                if masks[i] & used:
                    continue
                prefix.append(i)
                yield from extend(prefix, used | masks[i], i + 1, depth + 1)
                prefix.pop()

        yield from extend([], 0, 0, 0)

    def edge_total(self) -> int:
        return sum(1 for _ in self.iter_edges())

    def has_edge(self, e: Sequence[int]) -> bool:
        t = validate_edge(self.params, e)
        vset = set(self.vertex_ranks)
        if not all(v in vset for v in t):
            return False
        if self.sample is None:
            return True
        return contains_edge(self.sample, t)


def full_graph(params: KneserParams) -> GraphView:
    """View of the full KG^r_{n,k}."""
    return GraphView(params=params, vertex_ranks=tuple(range(params.vertex_count)))


def restrict(g: SampledGraph | GraphView, elements: Iterable[int]) -> GraphView:
    """Induce on the k-subsets of the given 1-based element set; no re-sampling."""
    view = g.view() if isinstance(g, SampledGraph) else g
    rmask = elements if isinstance(elements, int) else KSubset.from_elements(elements).mask
    k = view.params.k
    kept = tuple(v for v in view.vertex_ranks if mask_of_rank(v, k) & ~rmask == 0)
    return GraphView(
        params=view.params,
        vertex_ranks=kept,
        sample=view.sample,
        label=f"{view.label}|restricted",
    )


def schrijver_view(params: KneserParams) -> GraphView:
    """Induced subgraph of the full KG_{n,k} on stable (no cyclic neighbors) sets."""
    if params.r != 2:
        raise ValueError("Schrijver graphs are defined for r=2 only")
    n, k = params.n, params.k
    ranks = tuple(
        i for i, m in enumerate(enumerate_masks(n, k)) if mask_is_stable(m, n)
    )
    return GraphView(params=params, vertex_ranks=ranks, label="schrijver")
