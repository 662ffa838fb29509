"""Exact desk-scale solvers: chromatic number, independence number, minimum
monochromatic edges at a fixed color count, and largest colorable subsets.

Two complete engines back the chromatic search: DSATUR-ordered backtracking
(fast on sparse sampled graphs) and removal of maximal independent sets
anchored at a fixed vertex with memoized refutations (fast on the dense
structured refutations the full Kneser graphs require). Results always carry
a certificate or an explicit bound-only marker.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .cliques import max_clique, maximal_independent_sets
from .colorings import Coloring, merged_canonical, canonical_coloring, monochromatic_edges, schrijver_ratio_bound, triple_block_coloring
from .kneser import GraphView, KneserParams, full_graph
from .subsets import SizeLimitError, mask_of_rank


@dataclass(frozen=True)
class SolveBudget:
    node_limit: int = 2_000_000
    wall_ms: int = 60_000
    mode: str = "exact"

    def __post_init__(self) -> None:
        if self.node_limit <= 0 or self.wall_ms <= 0:
            raise ValueError("budget limits must be positive")
        if self.mode not in ("exact", "heuristic"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class SolveResult:
    value: int
    certificate: object
    optimality: str  # "proven" | "bound-only"
    lower: int
    upper: int
    stats: dict = field(default_factory=dict)

    @property
    def proven(self) -> bool:
        return self.optimality == "proven"


class _Budget:
    """Shared node/wall-clock meter passed through the search engines."""

    def __init__(self, budget: SolveBudget):
        self.node_limit = budget.node_limit
        self.started = time.monotonic()
        self.deadline = self.started + budget.wall_ms / 1000.0
        self.nodes = 0

    @property
    def millis(self) -> int:
        return int((time.monotonic() - self.started) * 1000)

    def spend(self, n: int = 1) -> bool:
        """Account n nodes; returns False once the budget is exhausted."""
        self.nodes += n
        if self.nodes > self.node_limit:
            return False
        if self.nodes % 4096 < n and time.monotonic() > self.deadline:
            return False
        return True

    @property
    def exhausted(self) -> bool:
        return self.nodes > self.node_limit or time.monotonic() > self.deadline


def adjacency_masks(view: GraphView) -> list[int]:
    """Local-index neighbor bitmasks of an r=2 view."""
    if view.params.r != 2:
        raise ValueError("adjacency masks are defined for the graph case r=2")
    ranks = view.vertex_ranks
    n = len(ranks)
    adj = [0] * n
    if view.is_full_induced:
        masks = view.vertex_masks()
        for i in range(n):
            mi = masks[i]
            for j in range(i + 1, n):
                if mi & masks[j] == 0:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
    else:
        local = {v: i for i, v in enumerate(ranks)}
        for a, b in view.iter_edges():
            i, j = local.get(a), local.get(b)
            if i is None or j is None:
                continue
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def dsatur_greedy(adj: list[int]) -> list[int]:
    """Greedy DSATUR coloring; returns 0-based colors, a proper upper bound."""
    n = len(adj)
    colors = [-1] * n
    neighbor_cols: list[set[int]] = [set() for _ in range(n)]
    degrees = [a.bit_count() for a in adj]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (len(neighbor_cols[u]), degrees[u], -u),
        )
        c = 0
        while c in neighbor_cols[v]:
            c += 1
        colors[v] = c
        rest = adj[v]
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            if colors[u] < 0:
                neighbor_cols[u].add(c)
            rest ^= low
    return colors


def _bipartition(adj: list[int], mask: int) -> tuple[int, int] | None:
    """Two-color the subgraph induced on mask; None when an odd cycle exists."""
    side = {}
    a_mask = b_mask = 0
    rest = mask
    while rest:
        start = (rest & -rest).bit_length() - 1
        if start in side:
            rest &= rest - 1
            continue
        stack = [(start, 0)]
        while stack:
            v, s = stack.pop()
            if v in side:
                if side[v] != s:
                    return None
                continue
            side[v] = s
            if s == 0:
                a_mask |= 1 << v
            else:
                b_mask |= 1 << v
            nb = adj[v] & mask
            while nb:
                low = nb & -nb
                stack.append((low.bit_length() - 1, 1 - s))
                nb ^= low
        rest &= ~(a_mask | b_mask)
    return a_mask, b_mask


def _colorable_dsatur(adj: list[int], t: int, meter: _Budget) -> tuple[bool | None, list[int] | None]:
    """Backtracking t-colorability with DSATUR branching and forward checking.

    Colors beyond max-used+1 are never tried (color classes are unordered).
    Returns (True, colors), (False, None) or (None, None) on budget.
    """
    n = len(adj)
    full_t = (1 << t) - 1
    colors = [-1] * n
    ncmask = [0] * n  # colors already present in the neighborhood
    degrees = [a.bit_count() for a in adj]
    uncolored = list(range(n))

    def pick() -> int:
        best, key = -1, (-1, -1)
        for u in uncolored:
            kk = (ncmask[u].bit_count(), degrees[u])
            if kk > key:
                best, key = u, kk
        return best

    def assign(v: int, c: int) -> list[int]:
        touched = []
        colors[v] = c
        uncolored.remove(v)
        bit = 1 << c
        rest = adj[v]
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            if colors[u] < 0 and not ncmask[u] & bit:
                ncmask[u] |= bit
                touched.append(u)
            rest ^= low
        return touched

    def undo(v: int, c: int, touched: list[int]) -> None:
        colors[v] = -1
        uncolored.append(v)
        bit = 1 << c
        for u in touched:
            ncmask[u] ^= bit

    def rec(max_used: int) -> bool | None:
        if not meter.spend():
            return None
        if not uncolored:
            return True
        v = pick()
        avail = ~ncmask[v] & full_t & ((1 << min(max_used + 1, t)) - 1)
        while avail:
            low = avail & -avail
            c = low.bit_length() - 1
            avail ^= low
            touched = assign(v, c)
            wipe = any(ncmask[u] == full_t for u in touched if colors[u] < 0)
            if not wipe:
                sub = rec(max(max_used, c + 1))
                if sub:
                    return True
                if sub is None:
                    undo(v, c, touched)
                    return None
            undo(v, c, touched)
        return False

    if t <= 0:
        return (n == 0, [] if n == 0 else None)
    res = rec(0)
    if res:
        return True, colors.copy()
    return (res, None)


def _colorable_mis(adj: list[int], t: int, meter: _Budget) -> tuple[bool | None, list[int] | None]:
    """Complete t-colorability by removing a maximal independent set containing
    a fixed anchor vertex at each level; refutations are memoized by mask."""
    n = len(adj)
    no_memo: set[tuple[int, int]] = set()

    def rec(mask: int, left: int) -> list[int] | None | bool:
        # returns list of class masks, None for budget, False for refuted
        if mask == 0:
            return []
        if left <= 0:
            return False
        if not meter.spend():
            return None
        if any(adj[v] & mask for v in _bits(mask)):
            if left == 1:
                return False
        else:
            return [mask]
        if left == 2:
            two = _bipartition(adj, mask)
            return [two[0], two[1]] if two else False
        if (mask, left) in no_memo:
            return False
        anchor, best_deg = -1, -1
        for v in _bits(mask):
            d = (adj[v] & mask).bit_count()
            if d > best_deg:
                anchor, best_deg = v, d
        for ind in maximal_independent_sets(adj, mask, anchor=anchor):
            if not meter.spend():
                return None
            sub = rec(mask & ~ind, left - 1)
            if sub is None:
                return None
            if sub is not False:
                return [ind] + sub
        no_memo.add((mask, left))
        return False

    res = rec((1 << n) - 1, t)
    if res is None:
        return None, None
    if res is False:
        return False, None
    colors = [-1] * n
    for c, class_mask in enumerate(res):
        for v in _bits(class_mask):
            colors[v] = c
    return True, colors


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _colorable(adj: list[int], t: int, meter: _Budget, dsatur_slice: int = 60_000) -> tuple[bool | None, list[int] | None]:
    """Try DSATUR backtracking briefly, then fall back to the MIS engine."""
    n = len(adj)
    if t >= n:
        return True, list(range(n))
    if t == 2:
        two = _bipartition(adj, (1 << n) - 1)
        if two is None:
            return False, None
        colors = [0] * n
        for v in _bits(two[1]):
            colors[v] = 1
        return True, colors
    slice_meter = _Budget(SolveBudget(node_limit=min(dsatur_slice, meter.node_limit)))
    slice_meter.deadline = meter.deadline
    res, colors = _colorable_dsatur(adj, t, slice_meter)
    meter.spend(slice_meter.nodes)
    if res is not None:
        return res, colors
    if meter.exhausted:
        return None, None
    return _colorable_mis(adj, t, meter)


def chromatic_number(g: GraphView, budget: SolveBudget | None = None) -> SolveResult:
    """Exact chromatic number of an r=2 view, with a certificate coloring."""
    budget = budget or SolveBudget()
    meter = _Budget(budget)
    adj = adjacency_masks(g)
    n = len(adj)
    if n == 0:
        return SolveResult(0, None, "proven", 0, 0, {"nodes": 0})
    greedy_cols = dsatur_greedy(adj)
    ub = max(greedy_cols) + 1
    best_colors = greedy_cols
    clique, _, cn = max_clique(adj, node_limit=min(200_000, budget.node_limit), deadline=meter.deadline)
    meter.spend(cn)
    lb = max(1, len(clique))
    if budget.mode == "heuristic":
        result = SolveResult(ub, _coloring_from(g, best_colors, ub), "bound-only", lb, ub, {"nodes": meter.nodes, "millis": meter.millis})
        return result
    t = lb
    while t < ub:
        status, colors = _colorable(adj, t, meter)
        if status is None:
            break
        if status:
            ub = t
            best_colors = colors
            break
        t += 1
        lb = t
    optimality = "proven" if lb == ub else "bound-only"
    cert = _coloring_from(g, best_colors, ub)
    value = ub
    _assert_kneser_upper(g, value, optimality)
    return SolveResult(value, cert, optimality, lb, ub, {"nodes": meter.nodes, "millis": meter.millis})


def _coloring_from(g: GraphView, colors: Sequence[int], t: int) -> Coloring:
    assignment = {rank: colors[i] + 1 for i, rank in enumerate(g.vertex_ranks)}
    return Coloring(g.params, assignment, max(t, 1), provenance=f"solver({g.label})")


def _assert_kneser_upper(g: GraphView, value: int, optimality: str) -> None:
    # Any subgraph of KG_{n,k} obeys the Lovasz bound.
    p = g.params
    if optimality == "proven" and p.r == 2 and p.n >= 2 * p.k:
        assert value <= p.n - 2 * p.k + 2, (value, p)


def independence_number(g: GraphView, budget: SolveBudget | None = None) -> SolveResult:
    """Maximum independent set via max clique on the complement."""
    budget = budget or SolveBudget()
    adj = adjacency_masks(g)
    n = len(adj)
    if n == 0:
        return SolveResult(0, (), "proven", 0, 0, {"nodes": 0})
    full = (1 << n) - 1
    comp = [~adj[v] & full & ~(1 << v) for v in range(n)]
    t_start = time.monotonic()
    deadline = t_start + budget.wall_ms / 1000.0
    clique, proven, nodes = max_clique(comp, node_limit=budget.node_limit, deadline=deadline)
    for i, v in enumerate(clique):
        for u in clique[i + 1 :]:
            assert not adj[v] >> u & 1, "witness contains a present edge"
    witness = tuple(g.vertex_ranks[v] for v in sorted(clique))
    ub = n if not proven else len(clique)
    return SolveResult(
        len(clique), witness, "proven" if proven else "bound-only", len(clique), ub,
        {"nodes": nodes, "millis": int((time.monotonic() - t_start) * 1000)}
    )


def hypergraph_chromatic_number(
    params: KneserParams, g: GraphView | None = None, budget: SolveBudget | None = None
) -> SolveResult:
    """Exact chromatic number of an r-uniform view: no edge fully monochromatic."""
    budget = budget or SolveBudget()
    if params.vertex_count > 60:
        raise SizeLimitError(f"exact hypergraph coloring limited to 60 vertices, got {params.vertex_count}")
    view = g if g is not None else full_graph(params)
    ranks = view.vertex_ranks
    n = len(ranks)
    local = {v: i for i, v in enumerate(ranks)}
    edges = [tuple(local[v] for v in e) for e in view.iter_edges()]
    meter = _Budget(budget)
    if n == 0:
        return SolveResult(0, None, "proven", 0, 0, {"nodes": 0})
    if not edges:
        colors = [0] * n
        return SolveResult(1, _coloring_from(view, colors, 1), "proven", 1, 1, {"nodes": 0})

    incident: list[list[int]] = [[] for _ in range(n)]
    for ei, e in enumerate(edges):
        for v in e:
            incident[v].append(ei)

    def greedy() -> list[int]:
        order = sorted(range(n), key=lambda v: -len(incident[v]))
        colors = [-1] * n
        for v in order:
            c = 0
            while True:
                bad = False
                for ei in incident[v]:
                    others = [u for u in edges[ei] if u != v]
                    if all(colors[u] == c for u in others):
                        bad = True
                        break
                if not bad:
                    colors[v] = c
                    break
                c += 1
        return colors

    greedy_cols = greedy()
    ub = max(greedy_cols) + 1
    best = greedy_cols
    lb = 2

    def colorable(t: int) -> bool | None:
        colors = [-1] * n
        forbidden = [0] * n
        full_t = (1 << t) - 1
        order = sorted(range(n), key=lambda v: -len(incident[v]))

        def pick() -> int:
            best_v, key = -1, (-1, -1)
            for v in order:
                if colors[v] >= 0:
                    continue
                kk = (forbidden[v].bit_count(), len(incident[v]))
                if kk > key:
                    best_v, key = v, kk
            return best_v

        def rec(done: int, max_used: int) -> bool | None:
            if not meter.spend():
                return None
            if done == n:
                return True
            v = pick()
            avail = ~forbidden[v] & full_t & ((1 << min(max_used + 1, t)) - 1)
            while avail:
                low = avail & -avail
                c = low.bit_length() - 1
                avail ^= low
                conflict = False
                trail: list[tuple[int, int]] = []
                for ei in incident[v]:
                    others = [u for u in edges[ei] if u != v]
                    colored_same = [u for u in others if colors[u] == c]
                    open_others = [u for u in others if colors[u] < 0]
                    if len(colored_same) == len(others):
                        conflict = True
                        break
                    if len(open_others) == 1 and len(colored_same) == len(others) - 1:
                        u = open_others[0]
                        if not forbidden[u] >> c & 1:
                            forbidden[u] |= 1 << c
                            trail.append((u, c))
                            if forbidden[u] == full_t:
                                conflict = True
                                break
                if not conflict:
                    colors[v] = c
                    sub = rec(done + 1, max(max_used, c + 1))
                    if sub:
                        return True
                    colors[v] = -1
                    if sub is None:
                        for u, cc in trail:
                            forbidden[u] ^= 1 << cc
                        return None
                for u, cc in trail:
                    forbidden[u] ^= 1 << cc
            return False

        res = rec(0, 0)
        if res:
            return colors
        return res

    t = lb
    final_colors = best
    while t < ub:
        res = colorable(t)
        if res is None:
            break
        if res is not False:
            ub = t
            final_colors = res
            break
        t += 1
        lb = t
    optimality = "proven" if lb >= ub else "bound-only"
    return SolveResult(
        ub, _coloring_from(view, final_colors, ub), optimality, min(lb, ub), ub, {"nodes": meter.nodes, "millis": meter.millis}
    )


def min_mono_edges(
    n: int, k: int, t: int, budget: SolveBudget | None = None, seed: int = 0
) -> SolveResult:
    """Minimum monochromatic edges over t-colorings of the full KG_{n,k}.

    The merged-canonical construction provides the incumbent at t = n-2k+1 and
    the Schrijver averaging ratio provides the lower-bound certificate; a
    branch-and-bound search closes the gap on tiny instances.
    """
    budget = budget or SolveBudget()
    if t < 1:
        raise ValueError("need at least one color")
    params = KneserParams(n, k, 2)
    g = full_graph(params)
    chi = n - 2 * k + 2

    if t >= chi:
        cert = canonical_coloring(n, k)
        cert = Coloring(params, cert.assignment, t, provenance="canonical")
        return SolveResult(0, cert, "proven", 0, 0, {"nodes": 0, "seed": seed})

    if t == chi - 1:
        incumbent = merged_canonical(n, k)
    else:
        incumbent = _few_color_fallback(n, k, t)
    best = monochromatic_edges(incumbent, g)
    assert best <= comb(2 * k, k) // 2 or t < chi - 1

    try:
        ratio = schrijver_ratio_bound(n, k)
        lower = -(-ratio.numerator // ratio.denominator)
    except ValueError:  # SG edgeless: the averaging bound is unavailable
        lower = 0
    meter = _Budget(budget)

    if budget.mode == "heuristic":
        sa_best, sa_cols = _anneal_mono(params, t, best, incumbent, seed, meter)
        if sa_best < best:
            best, incumbent = sa_best, sa_cols
    elif lower < best and params.vertex_count <= 20 and t <= 3:
        completed, found, colors = _mono_branch_bound(params, t, best, meter)
        if found is not None and found < best:
            best = found
            incumbent = _coloring_from(g, colors, t)
        if completed:
            lower = max(lower, best)

    optimality = "proven" if lower >= best else "bound-only"
    stats = {"nodes": meter.nodes, "millis": meter.millis, "seed": seed, "schrijver_lower": lower}
    return SolveResult(best, incumbent, optimality, lower, best, stats)


def _few_color_fallback(n: int, k: int, t: int) -> Coloring:
    """Stars on the first t-1 elements, one shared tail color; valid for any t."""
    from .subsets import enumerate_masks

    params = KneserParams(n, k, 2)
    assignment = {}
    for rank, mask in enumerate(enumerate_masks(n, k)):
        low = (mask & -mask).bit_length()
        assignment[rank] = low if low < t else t
    return Coloring(params, assignment, t, provenance="star-fallback")


def _mono_branch_bound(
    params: KneserParams, t: int, best: int, meter: _Budget
) -> tuple[bool, int | None, list[int] | None]:
    """Exhaustive color assignment minimizing monochromatic edges.

    Returns (completed, value, colors); value improves on `best` or is None.
    """
    g = full_graph(params)
    adj = adjacency_masks(g)
    n = len(adj)
    order = sorted(range(n), key=lambda v: -(adj[v].bit_count()))
    colors = [-1] * n
    class_masks = [0] * t
    best_found = best
    best_colors: list[int] | None = None

    def rec(i: int, mono: int, max_used: int) -> bool:
        nonlocal best_found, best_colors
        if not meter.spend():
            return False
        if mono >= best_found:
            return True
        if i == n:
            best_found = mono
            best_colors = colors.copy()
            return True
        v = order[i]
        for c in range(min(max_used + 1, t)):
            add = (class_masks[c] & adj[v]).bit_count()
            colors[v] = c
            class_masks[c] |= 1 << v
            ok = rec(i + 1, mono + add, max(max_used, c + 1))
            class_masks[c] &= ~(1 << v)
            colors[v] = -1
            if not ok:
                return False
        return True

    completed = rec(0, 0, 0)
    if best_colors is None:
        return completed, None, None
    return completed, best_found, best_colors


def _anneal_mono(
    params: KneserParams, t: int, best: int, incumbent: Coloring, seed: int, meter: _Budget
) -> tuple[int, Coloring]:
    """Seeded simulated annealing: recolor one vertex per move, fixed schedule."""
    import math
    import random

    g = full_graph(params)
    adj = adjacency_masks(g)
    n = len(adj)
    rng = random.Random(seed)
    arr = incumbent.color_array()
    colors = [arr[rank] - 1 for rank in g.vertex_ranks]
    class_masks = [0] * t
    for i, c in enumerate(colors):
        class_masks[c] |= 1 << i
    cur = sum((class_masks[c] & adj[v]).bit_count() for v in range(n) for c in [colors[v]]) // 2
    best_val, best_cols = cur, colors.copy()
    temp = 2.0
    while not meter.exhausted:
        for _ in range(512):
            meter.spend(1)
            v = rng.randrange(n)
            c_old = colors[v]
            c_new = rng.randrange(t)
            if c_new == c_old:
                continue
            delta = (class_masks[c_new] & adj[v]).bit_count() - (
                (class_masks[c_old] & ~(1 << v)) & adj[v]
            ).bit_count()
            if delta <= 0 or rng.random() < math.exp(-delta / max(temp, 1e-9)):
                class_masks[c_old] &= ~(1 << v)
                class_masks[c_new] |= 1 << v
                colors[v] = c_new
                cur += delta
                if cur < best_val:
                    best_val, best_cols = cur, colors.copy()
        temp *= 0.95
        if temp < 0.01:
            break
    if best_val < best:
        return best_val, _coloring_from(g, best_cols, t)
    return best, incumbent


def max_colorable_subset(n: int, k: int, t: int, budget: SolveBudget | None = None) -> SolveResult:
    """Largest vertex subset of KG_{n,k} whose induced subgraph is t-colorable."""
    budget = budget or SolveBudget()
    params = KneserParams(n, k, 2)
    g = full_graph(params)
    nv = params.vertex_count
    chi = n - 2 * k + 2

    if t >= chi:
        cert = canonical_coloring(n, k)
        cert = Coloring(params, cert.assignment, t, provenance="canonical")
        return SolveResult(nv, (tuple(range(nv)), cert), "proven", nv, nv, {"nodes": 0})

    construction, cert = _construction_subset(params, t)
    meter = _Budget(budget)
    if nv <= 20 and budget.mode == "exact":
        value, ranks, colors = _subset_branch_bound(params, t, construction, meter)
        if value is not None:
            if ranks:
                assignment = {r: c + 1 for r, c in zip(ranks, colors)}
                cert2: tuple = (tuple(ranks), Coloring(params, assignment, t, provenance="subset-search"))
            else:
                cert2 = cert  # the construction was already optimal
            return SolveResult(value, cert2, "proven", value, value, {"nodes": meter.nodes, "millis": meter.millis})
    upper = nv - 1  # t < chi, so the full vertex set is out of reach
    return SolveResult(
        construction,
        cert,
        "bound-only",
        construction,
        upper,
        {"nodes": meter.nodes, "construction_lower": construction},
    )


def _construction_subset(params: KneserParams, t: int) -> tuple[int, tuple[tuple[int, ...], Coloring] | None]:
    n, k = params.n, params.k
    nv = params.vertex_count
    best = -1
    cert: tuple[tuple[int, ...], Coloring] | None = None
    if t >= n - 2 * k + 1:
        # stars + one intersecting family on the last 2k elements: keep the
        # lexicographically smaller set of each complementary pair.
        merged = merged_canonical(n, k)
        tail_color = merged.t
        zone = (1 << n) - (1 << (n - 2 * k))
        keep: dict[int, int] = {}
        for rank, color in merged.assignment.items():
            if color != tail_color:
                keep[rank] = color
            else:
                mask = mask_of_rank(rank, k)
                if mask < (zone & ~mask):
                    keep[rank] = color
        cl = Coloring(params, keep, t, provenance="star+intersecting")
        best = len(keep)
        cert = (tuple(sorted(keep)), cl)
    if n >= 3 * k and t >= n - 2 * k:
        tb = triple_block_coloring(n, k)
        if len(tb.assignment) > best:
            cl = Coloring(params, dict(tb.assignment), t, provenance="triple-block")
            best = len(tb.assignment)
            cert = (tuple(sorted(tb.assignment)), cl)
    if best < 0:
        best = 0
        cert = (tuple(), Coloring(params, {}, t, provenance="empty"))
    return best, cert


def _subset_branch_bound(
    params: KneserParams, t: int, incumbent: int, meter: _Budget
) -> tuple[int | None, list[int], list[int]]:
    g = full_graph(params)
    adj = adjacency_masks(g)
    n = len(adj)
    best_kept = incumbent
    best_sol: tuple[list[int], list[int]] | None = None
    colors = [-1] * n  # -2 = dropped

    def rec(v: int, dropped: int, max_used: int) -> bool:
        nonlocal best_kept, best_sol
        if not meter.spend():
            return False
        if n - dropped <= best_kept:
            return True
        if v == n:
            best_kept = n - dropped
            best_sol = (
                [i for i in range(n) if colors[i] >= 0],
                [colors[i] for i in range(n) if colors[i] >= 0],
            )
            return True
        for c in range(min(max_used + 1, t)):
            ok = True
            rest = adj[v]
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if u < v and colors[u] == c:
                    ok = False
                    break
                rest ^= low
            if ok:
                colors[v] = c
                if not rec(v + 1, dropped, max(max_used, c + 1)):
                    return False
                colors[v] = -1
        colors[v] = -2
        done = rec(v + 1, dropped + 1, max_used)
        colors[v] = -1
        return done

    completed = rec(0, 0, 0)
    if not completed:
        return None, [], []
    if best_sol is None:
        # the incumbent construction was already optimal; rebuild is cheap
        return best_kept, [], []
    return best_kept, best_sol[0], best_sol[1]


def union_of_stars_cover_search(
    n: int, k: int, t: int, budget: SolveBudget | None = None
) -> SolveResult:
    """Maximum |F_1 ∪ ... ∪ F_t| over intersecting families, by enumerating
    maximal intersecting families (maximal independent sets of KG_{n,k})."""
    budget = budget or SolveBudget()
    params = KneserParams(n, k, 2)
    nv = params.vertex_count
    if nv > 20 or t > 4:
        raise SizeLimitError("exact union search limited to C(n,k) <= 20 and t <= 4")
    adj = adjacency_masks(full_graph(params))
    full = (1 << nv) - 1
    families = sorted(maximal_independent_sets(adj, full), key=lambda m: -m.bit_count())
    sizes = [m.bit_count() for m in families]
    meter = _Budget(budget)
    best = 0
    best_pick: tuple[int, ...] = ()

    def rec(start: int, chosen: list[int], union: int) -> None:
        nonlocal best, best_pick
        meter.spend()
        size = union.bit_count()
        if size > best:
            best = size
            best_pick = tuple(chosen)
        if len(chosen) == t:
            return
        remaining = t - len(chosen)
        # families are size-sorted, so the best extension adds at most this
        if size + sum(sizes[start : start + remaining]) <= best:
            return
        for i in range(start, len(families)):
            if size + sizes[i] * remaining <= best:
                break
            rec(i + 1, chosen + [i], union | families[i])

    rec(0, [], 0)
    witness = tuple(tuple(_bits(families[i])) for i in best_pick)
    return SolveResult(best, witness, "proven", best, best, {"nodes": meter.nodes, "millis": meter.millis})
