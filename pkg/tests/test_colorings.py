"""Coloring constructions, properness verification and edge accounting."""

import pytest
from fractions import Fraction
from math import comb

from kneserlab.colorings import (
    Coloring,
    canonical_coloring,
    empty_family_coloring,
    merged_canonical,
    monochromatic_edges,
    schrijver_ratio_bound,
    starfree_coloring,
    triple_block_coloring,
    verify_proper,
)
from kneserlab.emptyfam import is_empty_in, search_empty_family
from kneserlab.families import Family, is_intersecting, star_center
from kneserlab.kneser import KneserParams, full_graph, sample_subgraph
from kneserlab.solvers import SolveBudget
from kneserlab.subsets import GroundSet, KSubset, mask_of_rank


def classes_as_families(c, n, k):
    return {
        col: Family([KSubset(mask_of_rank(rk, k), k) for rk in ranks], GroundSet(n))
        for col, ranks in c.classes().items()
    }


def test_canonical_proper_sweep():
    for k in (2, 3, 4):
        for n in range(2 * k, 15):
            c = canonical_coloring(n, k)
            assert c.t == n - 2 * k + 2
            assert not c.uncolored_ranks()
            assert verify_proper(c, full_graph(KneserParams(n, k, 2))).proper


def test_canonical_boundary_case():
    c = canonical_coloring(4, 2)
    assert c.t == 2
    fams = classes_as_families(c, 4, 2)
    assert all(1 in KSubset(m, 2).elements() for m in fams[1].masks)


def test_canonical_rejects_small_n():
    with pytest.raises(ValueError):
        canonical_coloring(3, 2)


def test_merged_canonical_mono_counts():
    for k in (2, 3, 4):
        for n in range(2 * k, 15):
            c = merged_canonical(n, k)
            assert c.t == n - 2 * k + 1
            mono = monochromatic_edges(c, full_graph(KneserParams(n, k, 2)))
            assert mono == comb(2 * k, k) // 2, (n, k, mono)


def test_merged_single_color_case():
    c = merged_canonical(6, 3)
    assert c.t == 1
    assert monochromatic_edges(c, full_graph(KneserParams(6, 3, 2))) == 10


def test_constant_coloring_violations():
    params = KneserParams(6, 3, 2)
    ones = Coloring(params, {i: 1 for i in range(20)}, 1)
    rep = verify_proper(ones, full_graph(params))
    assert not rep.proper
    assert len(rep.violations) == 10  # KG_{6,3} is a perfect matching


def test_verify_rejects_partial():
    params = KneserParams(5, 2, 2)
    partial = Coloring(params, {0: 1}, 1)
    with pytest.raises(ValueError):
        verify_proper(partial, full_graph(params))
    # monochromatic_edges tolerates partiality
    assert monochromatic_edges(partial, full_graph(params)) == 0


def test_proper_on_empty_sample():
    params = KneserParams(6, 2, 2)
    g = sample_subgraph(params, Fraction(0), 5)
    ones = Coloring(params, {i: 1 for i in range(15)}, 1)
    assert verify_proper(ones, g.view()).proper


def test_starfree_k3():
    c = starfree_coloring(3)
    assert c.params.n == 8
    assert c.t == 4 == 2 * (3 - 2) * (3 - 1)
    assert not c.uncolored_ranks()
    assert verify_proper(c, full_graph(c.params)).proper
    fams = classes_as_families(c, 8, 3)
    assert len(fams) == 4
    for fam in fams.values():
        assert star_center(fam) is None
        assert is_intersecting(fam)


def test_starfree_k3_example_set():
    # {2,3,5} meets block 1's last three elements {2,3,4} twice: G's color (2)
    c = starfree_coloring(3)
    from kneserlab.subsets import rank_of_mask

    s = KSubset.from_elements([2, 3, 5])
    assert c.assignment[rank_of_mask(s.mask)] == 2


def test_starfree_k4():
    c = starfree_coloring(4)
    assert c.params.n == 18
    assert c.t == 12
    assert not c.uncolored_ranks()
    assert verify_proper(c, full_graph(c.params)).proper
    fams = classes_as_families(c, 18, 4)
    assert len(fams) == 12
    for fam in fams.values():
        assert star_center(fam) is None


def test_starfree_rejects_small_k():
    with pytest.raises(ValueError):
        starfree_coloring(2)


def test_triple_block():
    for k in (2, 3, 4):
        n = 3 * k
        c = triple_block_coloring(n, k)
        assert c.t == n - 2 * k
        assert len(c.uncolored_ranks()) == 3**k
        for fam in classes_as_families(c, n, k).values():
            assert is_intersecting(fam)


def test_triple_block_with_leading_stars():
    c = triple_block_coloring(7, 2)
    assert c.t == 3
    assert len(c.uncolored_ranks()) == 9
    for fam in classes_as_families(c, 7, 2).values():
        assert is_intersecting(fam)


def test_triple_block_rejects_small_n():
    with pytest.raises(ValueError):
        triple_block_coloring(5, 2)


def test_empty_family_coloring_l0():
    params = KneserParams(6, 2, 2)
    c = empty_family_coloring([], params)
    assert c.t == 6
    assert verify_proper(c, full_graph(params)).proper


def test_empty_family_coloring_vacuous_hyperedge_class():
    params = KneserParams(9, 2, 3)
    c = empty_family_coloring([KSubset.from_elements([1, 2, 3])], params)
    assert c.t == 4
    assert verify_proper(c, full_graph(params)).proper


def test_empty_family_coloring_color_count():
    params = KneserParams(6, 2, 2)
    blocks = [KSubset.from_elements([1, 2]), KSubset.from_elements([3, 4])]
    c = empty_family_coloring(blocks, params)
    assert c.t == 4
    assert set(c.assignment.values()) == {1, 2, 3, 4}
    with pytest.raises(ValueError):
        empty_family_coloring([KSubset.from_elements([1, 2]), KSubset.from_elements([2, 3])], params)


def test_empty_family_coloring_randomized_soundness():
    params = KneserParams(14, 2, 2)
    hits = 0
    for seed in range(40):
        g = sample_subgraph(params, Fraction(1, 2), seed)
        out = search_empty_family(g, 2, SolveBudget(node_limit=50_000, wall_ms=5_000), seed=seed)
        if not out.found:
            continue
        hits += 1
        blocks = list(out.witness.family.blocks)
        assert is_empty_in(out.witness.family, g)
        c = empty_family_coloring(blocks, params)
        assert verify_proper(c, g.view()).proper
        assert c.t == -(-(14 - 2) // 1)
    assert hits >= 5  # the search should succeed often at this size


def test_coloring_text_round_trip():
    c = merged_canonical(6, 2)
    back = Coloring.from_text(c.to_text())
    assert back.assignment == c.assignment
    assert back.t == c.t
    assert back.params == c.params


def test_schrijver_ratio_values():
    assert schrijver_ratio_bound(5, 2) == 3
    assert schrijver_ratio_bound(6, 2) == Fraction(45, 18)
    assert schrijver_ratio_bound(7, 3) == 10
