"""Bitset max-clique kernel shared by family analytics and the exact solvers.

Tomita-style branch and bound: candidates are greedily colored and vertices
are expanded in reverse color order, pruning when |R| + color <= incumbent.
"""

from __future__ import annotations

import time


class BudgetExhausted(Exception):
    pass


def max_clique(
    adj: list[int],
    node_limit: int = 10_000_000,
    deadline: float | None = None,
) -> tuple[list[int], bool, int]:
    """Maximum clique of the graph given as per-vertex neighbor bitmasks.

    Returns (vertices, proven, nodes). proven=False means the budget ran out
    and the clique is only a lower-bound witness.
    """
    n = len(adj)
    best: list[int] = []
    nodes = 0
    proven = True

    def color_sort(cand: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        bound: list[int] = []
        c = 0
        rest = cand
        while rest:
            c += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~adj[v] & ~low
                rest ^= low
                order.append(v)
                bound.append(c)
        return order, bound

    def expand(r: list[int], cand: int) -> None:
        nonlocal best, nodes, proven
        nodes += 1
        if nodes > node_limit or (deadline is not None and time.monotonic() > deadline):
            raise BudgetExhausted
        order, bound = color_sort(cand)
        for i in range(len(order) - 1, -1, -1):
            if len(r) + bound[i] <= len(best):
                return
            v = order[i]
            r.append(v)
            sub = cand & adj[v]
            if sub:
                expand(r, sub)
            elif len(r) > len(best):
                best = r.copy()
            r.pop()
            cand &= ~(1 << v)

    try:
        if n:
            expand([], (1 << n) - 1)
    except BudgetExhausted:
        proven = False
    return best, proven, nodes


def greedy_clique(adj: list[int]) -> list[int]:
    """Cheap clique lower bound: repeatedly take the max-degree candidate."""
    n = len(adj)
    if n == 0:
        return []
    cand = (1 << n) - 1
    clique: list[int] = []
    while cand:
        best_v, best_d = -1, -1
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            d = (adj[v] & cand).bit_count()
            if d > best_d:
                best_v, best_d = v, d
            rest ^= low
        clique.append(best_v)
        cand &= adj[best_v]
    return clique


def maximal_independent_sets(adj: list[int], within: int, anchor: int | None = None):
    """Yield maximal independent sets (as bitmasks) of the subgraph induced on
    `within`, optionally restricted to those containing `anchor`.

    Bron-Kerbosch with pivoting on the complement graph.
    """
    n = len(adj)
    full = (1 << n) - 1
    comp = [(~adj[v] & full & ~(1 << v)) for v in range(n)]

    def bk(r: int, p: int, x: int):
        if p == 0 and x == 0:
            yield r
            return
        # pivot from p|x maximizing |p & comp[u]|
        pux = p | x
        pivot, best = -1, -1
        rest = pux
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            d = (p & comp[u]).bit_count()
            if d > best:
                pivot, best = u, d
            rest ^= low
        ext = p & ~comp[pivot]
        while ext:
            low = ext & -ext
            v = low.bit_length() - 1
            yield from bk(r | low, p & comp[v], x & comp[v])
            p &= ~low
            x |= low
            ext ^= low

    if anchor is None:
        yield from bk(0, within, 0)
    else:
        abit = 1 << anchor
        if not within & abit:
            return
        yield from bk(abit, comp[anchor] & within, 0)
