"""Family analytics: stars, diversity, disjoint pairs, the Prop-style bound."""

import random

import pytest
from fractions import Fraction
from math import comb

from kneserlab.families import (
    Family,
    SubfamilyResult,
    check_disjoint_pair_bound,
    disjoint_pairs,
    diversity,
    ell,
    high_degree_set,
    is_intersecting,
    largest_intersecting_subfamily,
    star_center,
)
from kneserlab.kneser import KneserParams, edge_index
from kneserlab.subsets import GroundSet, KSubset, SizeLimitError, enumerate_k_subsets, enumerate_masks


def family_of(elements_lists, n):
    return Family([KSubset.from_elements(e) for e in elements_lists], GroundSet(n))


def all_k_subsets(n, k):
    return Family(list(enumerate_k_subsets(n, k)), GroundSet(n))


def test_intersecting_and_star():
    star = family_of([[1, x] for x in range(2, 6)], 5)
    assert is_intersecting(star)
    assert star_center(star) == 1
    assert diversity(star) == 0
    assert not is_intersecting(family_of([[1, 2], [3, 4]], 5))
    triangle = family_of([[1, 2], [1, 3], [2, 3]], 5)
    assert is_intersecting(triangle)
    assert star_center(triangle) is None
    assert diversity(triangle) == 1


def test_star_center_of_empty_family_is_one():
    assert star_center(Family([], GroundSet(5), k=2)) == 1


def test_star_center_ties_break_to_smallest():
    f = family_of([[3, 4]], 6)
    assert star_center(f) == 3


def test_degree_sum_invariant():
    rng = random.Random(5)
    for _ in range(20):
        n, k = rng.choice([(6, 2), (7, 3), (9, 4)])
        univ = list(enumerate_masks(n, k))
        fam = Family.from_masks(rng.sample(univ, rng.randrange(1, len(univ))), n)
        assert sum(fam.degree(x) for x in range(1, n + 1)) == k * len(fam)


def test_disjoint_pairs_examples():
    assert disjoint_pairs(all_k_subsets(4, 2)) == 3
    assert disjoint_pairs(all_k_subsets(5, 2)) == 15  # |E(Petersen)|
    star = family_of([[1, x] for x in range(2, 7)], 6)
    assert disjoint_pairs(star) == 0


def test_disjoint_pairs_matches_kneser_edges():
    rng = random.Random(11)
    params = KneserParams(8, 2, 2)
    idx = edge_index(params)
    univ = list(enumerate_masks(8, 2))
    for _ in range(10):
        chosen = rng.sample(range(len(univ)), rng.randrange(2, 25))
        fam = Family.from_masks([univ[i] for i in chosen], 8)
        inside = set(chosen)
        expected = sum(1 for e in idx.edges if e[0] in inside and e[1] in inside)
        assert disjoint_pairs(fam) == expected


def test_largest_intersecting_subfamily():
    f = all_k_subsets(4, 2)
    res = largest_intersecting_subfamily(f)
    assert res == SubfamilyResult(size=3, exact=True, mode="exact")
    assert ell(f) == 3
    pairwise_disjoint = family_of([[1, 2], [3, 4], [5, 6]], 6)
    assert largest_intersecting_subfamily(pairwise_disjoint).size == 1
    assert ell(pairwise_disjoint) == 2
    star = family_of([[1, x] for x in range(2, 6)], 5)
    assert ell(star) == 0


def test_ell_zero_iff_intersecting():
    rng = random.Random(3)
    univ = list(enumerate_masks(7, 2))
    for _ in range(25):
        fam = Family.from_masks(rng.sample(univ, rng.randrange(1, 15)), 7)
        assert (ell(fam) == 0) == is_intersecting(fam)


def test_diversity_zero_implies_intersecting():
    rng = random.Random(9)
    for _ in range(50):
        n, k = rng.choice([(6, 2), (8, 3)])
        x = rng.randrange(1, n + 1)
        pool = [m for m in enumerate_masks(n, k) if m >> (x - 1) & 1]
        fam = Family.from_masks(rng.sample(pool, rng.randrange(1, len(pool))), n)
        assert diversity(fam) == 0
        assert is_intersecting(fam)


def test_exact_subfamily_size_limit():
    fam = all_k_subsets(7, 2)  # 21 members is fine
    assert largest_intersecting_subfamily(fam, mode="exact").size == 6
    big = all_k_subsets(10, 2)  # 45 members exceeds the exact limit
    with pytest.raises(SizeLimitError):
        largest_intersecting_subfamily(big, mode="exact")
    heur = largest_intersecting_subfamily(big, mode="heuristic")
    assert heur.mode == "heuristic"
    assert heur.size >= 9  # a star is always found


def test_high_degree_set():
    star = family_of([[1, x] for x in range(2, 6)], 5)
    assert 1 in high_degree_set(star)
    assert high_degree_set(Family([], GroundSet(5), k=2)) == set()
    f62 = all_k_subsets(6, 2)
    # every degree is 5 > 15/4, and 6 <= 2k^2 = 8
    assert high_degree_set(f62) == {1, 2, 3, 4, 5, 6}


def test_disjoint_pair_bound_examples():
    star = family_of([[1, x] for x in range(2, 9)], 8)
    rep = check_disjoint_pair_bound(star, 8)
    assert rep.applicable and rep.holds and rep.rhs == 0
    full = all_k_subsets(8, 2)
    rep = check_disjoint_pair_bound(full, 8)
    assert rep.applicable and rep.holds
    assert rep.lhs == 210 and rep.gamma == 21
    assert rep.rhs == min(Fraction(21 * 28, 6), Fraction(28 * 28, 144 * comb(4, 2)))


def test_disjoint_pair_bound_randomized_sweep():
    rng = random.Random(31)
    for _ in range(100):
        k = rng.choice([2, 3])
        b = rng.randrange(8, 15)
        threshold = 2 * k * comb(b - 2, k - 2)
        univ = list(enumerate_masks(b, k))
        size = rng.randrange(threshold, min(len(univ), max(threshold + 1, 200)) + 1)
        fam = Family.from_masks(rng.sample(univ, size), b)
        rep = check_disjoint_pair_bound(fam, b)
        assert rep.applicable
        assert rep.holds, (k, b, size)


def test_family_text_round_trip():
    fam = family_of([[1, 2], [2, 3], [1, 3]], 5)
    text = "# a comment\n" + fam.to_text()
    back = Family.from_text(text, 5)
    assert back.masks == fam.masks


def test_family_rejects_mixed_cardinality():
    with pytest.raises(ValueError):
        Family([KSubset.from_elements([1, 2]), KSubset.from_elements([1, 2, 3])], GroundSet(5))
