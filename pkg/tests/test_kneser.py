"""Edge indexing, seeded sampling, persistence, restriction, Schrijver views."""

import itertools

import pytest
from fractions import Fraction

from kneserlab.kneser import (
    KneserParams,
    SampledGraph,
    contains_edge,
    edge_count,
    edge_index,
    full_graph,
    restrict,
    sample_subgraph,
    schrijver_view,
    validate_edge,
)
from kneserlab.prng import coin_word, coin_words_bulk
from kneserlab.subsets import enumerate_masks, mask_of_rank


def brute_edge_count(n, k, r):
    masks = list(enumerate_masks(n, k))
    count = 0
    for combo in itertools.combinations(range(len(masks)), r):
        union = 0
        for v in combo:
            if masks[v] & union:
                break
            union |= masks[v]
        else:
            count += 1
    return count


def test_edge_count_derived_examples():
    assert edge_count(KneserParams(5, 2, 2)) == 15 == brute_edge_count(5, 2, 2)
    assert edge_count(KneserParams(6, 2, 2)) == 45 == brute_edge_count(6, 2, 2)
    assert edge_count(KneserParams(6, 2, 3)) == 15 == brute_edge_count(6, 2, 3)
    assert edge_count(KneserParams(9, 2, 3)) == brute_edge_count(9, 2, 3)
    assert edge_count(KneserParams(7, 3, 2)) == 70


def test_edgeless_params_flagged():
    p = KneserParams(5, 3, 2)
    assert not p.has_edges
    assert edge_count(p) == 0


def test_coin_words_scalar_vs_bulk():
    words = coin_words_bulk(123, 256)
    for i in range(256):
        assert int(words[i]) == coin_word(123, i)
    shifted = coin_words_bulk(123, 200, start=56)
    assert (words[56:] == shifted).all()


def test_sampling_degenerate():
    params = KneserParams(6, 2, 2)
    g0 = sample_subgraph(params, Fraction(0), 99)
    g1 = sample_subgraph(params, Fraction(1), 99)
    assert g0.present_count == 0
    assert g1.present_count == edge_count(params)
    e = next(iter(edge_index(params).edges))
    assert contains_edge(g1, e)
    assert not contains_edge(g0, e)


def test_sampling_pinned_regression():
    # frozen from the reference PRNG stream; binomial sanity: within 4 sigma
    g = sample_subgraph(KneserParams(10, 2, 2), Fraction(1, 2), 42)
    assert g.n_edges == 630
    assert g.present_count == 307
    mean, sigma = 315.0, (630 * 0.25) ** 0.5
    assert abs(g.present_count - mean) < 4 * sigma


def test_sampling_determinism_exhaustive():
    params = KneserParams(8, 2, 2)
    a = sample_subgraph(params, Fraction(1, 2), 7)
    b = sample_subgraph(params, Fraction(1, 2), 7)
    assert a.bits == b.bits
    for e in edge_index(params).edges:
        assert contains_edge(a, e) == contains_edge(b, e)
    c = sample_subgraph(params, Fraction(1, 2), 8)
    assert a.bits != c.bits  # different seed, different world


def test_present_edges_are_valid():
    g = sample_subgraph(KneserParams(7, 2, 3), Fraction(1, 2), 5)
    for e in g.present_edges():
        union = 0
        for v in e:
            m = mask_of_rank(v, 2)
            assert m & union == 0
            union |= m


def test_contains_edge_argument_errors():
    g = sample_subgraph(KneserParams(6, 2, 2), Fraction(1), 1)
    with pytest.raises(ValueError):
        contains_edge(g, (0, 1, 2))  # wrong arity
    with pytest.raises(ValueError):
        contains_edge(g, (3, 1))  # unsorted
    # ranks 0 = {1,2}, 1 = {1,3}: not disjoint
    with pytest.raises(ValueError):
        contains_edge(g, (0, 1))


def test_persistence_round_trip():
    g = sample_subgraph(KneserParams(9, 2, 2), Fraction(3, 8), 2024)
    back = SampledGraph.from_text(g.to_text())
    assert back.bits == g.bits
    assert back.p == g.p
    assert back.seed == g.seed
    assert back.params == g.params
    assert back.to_text() == g.to_text()


def test_restrict_examples():
    params = KneserParams(6, 2, 2)
    v = restrict(full_graph(params), [1, 2, 3, 4])
    assert v.vertex_count == 6
    assert v.edge_total() == 3  # KG_{4,2} is a perfect matching
    everything = restrict(full_graph(params), [1, 2, 3, 4, 5, 6])
    assert everything.vertex_ranks == full_graph(params).vertex_ranks
    tiny = restrict(full_graph(params), [1])
    assert tiny.vertex_count == 0


def test_restrict_composition():
    g = sample_subgraph(KneserParams(9, 2, 2), Fraction(1, 2), 3)
    inner = restrict(restrict(g, [1, 2, 3, 4, 5, 6, 7]), [2, 3, 4, 5])
    direct = restrict(g, [2, 3, 4, 5])
    assert inner.vertex_ranks == direct.vertex_ranks
    assert sorted(inner.iter_edges()) == sorted(direct.iter_edges())


def test_schrijver_views():
    sg52 = schrijver_view(KneserParams(5, 2, 2))
    assert sg52.vertex_count == 5
    assert sg52.edge_total() == 5  # the 5-cycle
    sg62 = schrijver_view(KneserParams(6, 2, 2))
    assert sg62.vertex_count == 9
    sg73 = schrijver_view(KneserParams(7, 3, 2))
    assert sg73.vertex_count == 7
    with pytest.raises(ValueError):
        schrijver_view(KneserParams(6, 2, 3))


def test_validate_edge():
    p = KneserParams(6, 2, 3)
    ranks = [0]
    masks = list(enumerate_masks(6, 2))
    # build a valid disjoint triple by brute force
    triple = None
    for combo in itertools.combinations(range(len(masks)), 3):
        union = 0
        for v in combo:
            if masks[v] & union:
                break
            union |= masks[v]
        else:
            triple = combo
            break
    assert validate_edge(p, triple) == triple
