"""Empty-family machinery: classes, search, witnesses, the sequential builder."""

import itertools

import pytest
from fractions import Fraction

from kneserlab.colorings import empty_family_coloring, verify_proper
from kneserlab.emptyfam import (
    OrderedFamily,
    edge_class,
    is_empty_in,
    make_witness,
    search_empty_family,
    search_empty_family_exhaustive,
    sequential_k2_build,
    vertex_class,
)
from kneserlab.kneser import KneserParams, sample_subgraph
from kneserlab.solvers import SolveBudget
from kneserlab.subsets import KSubset


def blocks_of(*element_lists):
    return OrderedFamily(tuple(KSubset.from_elements(e) for e in element_lists))


def test_vertex_class_examples():
    a = blocks_of([1, 2])
    assert len(vertex_class(a, 1, 2, n=4)) == 1
    a2 = blocks_of([1, 2], [3, 4])
    v2 = vertex_class(a2, 2, 2, n=4)
    assert len(v2) == 5
    a3 = blocks_of([1, 2, 3])
    assert len(vertex_class(a3, 1, 2, n=9)) == 3
    with pytest.raises(ValueError):
        vertex_class(a2, 3, 2, n=4)


def test_edge_class_examples():
    a2 = blocks_of([1, 2], [3, 4])
    assert len(edge_class(a2, 2, KneserParams(4, 2, 2))) == 2
    assert edge_class(blocks_of([1, 2]), 1, KneserParams(4, 2, 2)) == []
    assert edge_class(blocks_of([1, 2, 3]), 1, KneserParams(9, 2, 3)) == []


def test_edge_class_sizes_match_brute_force():
    # r=2, k=2, fresh blocks: |E_i| = (2i-2)(2i-3), frozen from enumeration
    params = KneserParams(12, 2, 2)
    fam = blocks_of([1, 2], [3, 4], [5, 6], [7, 8])
    sizes = [len(edge_class(fam, i, params)) for i in range(1, 5)]
    assert sizes == [0, 2, 12, 30]
    assert sizes == [(2 * i - 2) * (2 * i - 3) for i in range(1, 5)]


def test_class_disjointness():
    params = KneserParams(10, 2, 2)
    fam = blocks_of([1, 2], [3, 4], [5, 6])
    classes = [set(edge_class(fam, i, params)) for i in range(1, 4)]
    for a, b in itertools.combinations(classes, 2):
        assert not a & b


def test_coverage_invariant_sweep():
    # every tuple of E_i covers A_i; the assertion inside edge_class fires if not
    for r, k, n in [(2, 2, 8), (2, 3, 10), (3, 2, 9), (3, 2, 12)]:
        params = KneserParams(n, k, r)
        blocks = [KSubset.from_elements(list(range(i * r + 1, i * r + r + 1))) for i in range(2)]
        fam = OrderedFamily(tuple(blocks))
        for i in (1, 2):
            edge_class(fam, i, params)


def test_is_empty_in_trivial():
    params = KneserParams(8, 2, 2)
    fam = blocks_of([1, 2], [3, 4])
    g0 = sample_subgraph(params, Fraction(0), 3)
    g1 = sample_subgraph(params, Fraction(1), 3)
    assert is_empty_in(fam, g0)
    assert not is_empty_in(fam, g1)
    vacuous = blocks_of([1, 2])  # E_1 empty regardless of the sample
    assert is_empty_in(vacuous, g1)


def test_search_on_degenerate_samples():
    params = KneserParams(8, 2, 2)
    g0 = sample_subgraph(params, Fraction(0), 3)
    out = search_empty_family(g0, 3, seed=5)
    assert out.found and out.restarts == 1
    assert [b.elements() for b in out.witness.family.blocks] == [(1, 2), (3, 4), (5, 6)]
    g1 = sample_subgraph(params, Fraction(1), 3)
    out1 = search_empty_family(g1, 2, SolveBudget(node_limit=20_000, wall_ms=2_000), seed=1)
    assert not out1.found


def test_search_spec_instance():
    g = sample_subgraph(KneserParams(30, 2, 2), Fraction(1, 2), 7)
    out = search_empty_family(g, 2, seed=1)
    assert out.found
    assert is_empty_in(out.witness.family, g)
    assert out.witness.total_edges == 2  # l=2 fresh blocks carry |E(A)| = 2


def test_witness_requires_emptiness():
    params = KneserParams(8, 2, 2)
    g1 = sample_subgraph(params, Fraction(1), 3)
    with pytest.raises(ValueError):
        make_witness(blocks_of([1, 2], [3, 4]), g1)


def test_witness_file_format():
    g = sample_subgraph(KneserParams(10, 2, 2), Fraction(0), 1)
    out = search_empty_family(g, 2, seed=0)
    text = out.witness.to_text()
    lines = text.splitlines()
    assert lines[0] == "kneser-witness v1 10 2 2 0 1 1 2"
    assert lines[1] == "{1,2}" and lines[2] == "{3,4}"
    # |E(A)| counts the class slots, all absent from the sample: (0) + (2)
    assert lines[3] == "E_total 2"
    assert out.witness.class_edge_counts == (0, 2)


def test_exhaustive_oracle_agrees_with_greedy():
    # on small samples: greedy success implies existence; exhaustive None
    # implies greedy must fail too
    params = KneserParams(10, 2, 2)
    for seed in range(15):
        g = sample_subgraph(params, Fraction(1, 2), seed)
        exact = search_empty_family_exhaustive(g, 2)
        greedy = search_empty_family(g, 2, SolveBudget(node_limit=100_000, wall_ms=5_000), seed=seed)
        if exact is None:
            assert not greedy.found, seed
        if greedy.found:
            assert exact is not None


def test_exhaustive_oracle_size_guard():
    g = sample_subgraph(KneserParams(13, 2, 2), Fraction(1, 2), 0)
    with pytest.raises(ValueError):
        search_empty_family_exhaustive(g, 2)


def test_soundness_chain():
    params = KneserParams(20, 2, 2)
    for seed in range(10):
        g = sample_subgraph(params, Fraction(1, 2), 100 + seed)
        out = search_empty_family(g, 2, SolveBudget(node_limit=100_000, wall_ms=5_000), seed=seed)
        if not out.found:
            continue
        c = empty_family_coloring(list(out.witness.family.blocks), params)
        assert verify_proper(c, g.view()).proper


def test_sequential_build_degenerate():
    gz = sample_subgraph(KneserParams(12, 2, 2), Fraction(0), 1)
    rz = sequential_k2_build(gz, 9, seed=2)
    assert rz.h_achieved == 9
    assert rz.coloring.t == 3
    go = sample_subgraph(KneserParams(10, 2, 2), Fraction(1), 1)
    ro = sequential_k2_build(go, 6, seed=2)
    assert ro.h_achieved == 2
    assert ro.coloring.t == 8  # n - 2: the Lovasz bound pins h' at 2


def test_sequential_build_random_sample():
    g = sample_subgraph(KneserParams(24, 2, 2), Fraction(1, 2), 11)
    out = sequential_k2_build(g, 6, seed=3)
    assert out.coloring is not None
    assert out.coloring.t == 24 - out.h_achieved
    assert verify_proper(out.coloring, g.view()).proper
    assert 2 <= out.h_achieved <= 6


def test_sequential_build_requires_k2():
    g = sample_subgraph(KneserParams(9, 3, 2), Fraction(1, 2), 1)
    with pytest.raises(ValueError):
        sequential_k2_build(g, 4, seed=0)
