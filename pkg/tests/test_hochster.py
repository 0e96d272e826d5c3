import random

import pytest
from hypothesis import given, settings

from golodtight.complex import build
from golodtight.errors import EmptySubset, NotDisjoint, TooManyVertices
from golodtight.generators import boundary_simplex, cycle, random_complex, simplex
from golodtight.hochster import (
    disjoint_pairs,
    golod_bound_series,
    hochster_table,
    iota_chain_map,
    is_weakly_golod,
    product_bidegree_ranks,
    product_rank,
    rzk_betti_predicted,
    tor_poincare_series,
    zk_betti,
)
from golodtight.homology import betti
from golodtight.complex import full_subcomplex
from golodtight.linalg import GF2, QQ, Field

from strategies import complexes

TWO_POINTS = build(2, [[1], [2]])


def test_table_examples():
    assert hochster_table(cycle(4), QQ).nonzero_rows() == [((1, 3), 0, 1), ((2, 4), 0, 1), ((1, 2, 3, 4), 1, 1)]
    assert hochster_table(boundary_simplex(3), QQ).nonzero_rows() == [((1, 2, 3, 4), 2, 1)]
    assert hochster_table(TWO_POINTS, GF2).nonzero_rows() == [((1, 2), 0, 1)]


def test_table_budget():
    K = build(21, [[i, i + 1] for i in range(1, 21)])
    with pytest.raises(TooManyVertices):
        hochster_table(K, GF2)
    with pytest.raises(TooManyVertices):
        is_weakly_golod(K, GF2)


@settings(max_examples=30, deadline=None)
@given(complexes(max_m=6))
def test_table_matches_direct_betti(K):
    for F in (QQ, GF2):
        t = hochster_table(K, F)
        for I, row in t.rows.items():
            assert row == betti(full_subcomplex(K, I), F)
        total = {}
        for I, row in t.rows.items():
            for p, b in enumerate(row):
                total[p + len(I) + 1] = total.get(p + len(I) + 1, 0) + b
        assert {i: r for i, r in total.items() if r} == t.koszul_ranks()


def test_iota_signs():
    edge = simplex(1)
    iota = iota_chain_map(edge, [1], [2])
    assert iota((1, 2)) == {(1, 2): 1}
    c4 = cycle(4)
    iota = iota_chain_map(c4, [1, 3], [2, 4])
    # local labels of K_{1,2,3,4} coincide with the originals; the join puts 1,3 first
    assert iota((1, 2)) == {(1, 3): 1}
    assert iota((2, 3)) == {(2, 3): -1}
    assert iota((1,)) == {(1,): 1}
    assert iota(()) == {(): 1}


def test_iota_inside_one_block_is_positive():
    K = boundary_simplex(3)
    iota = iota_chain_map(K, [1, 2, 3], [4])
    assert iota((1, 2, 3)) == {(1, 2, 3): 1}


def test_iota_errors():
    with pytest.raises(NotDisjoint):
        iota_chain_map(cycle(4), [1, 2], [2, 3])
    with pytest.raises(EmptySubset):
        product_rank(cycle(4), [], [1], QQ)


def test_product_rank_examples():
    assert product_rank(cycle(4), [1, 3], [2, 4], QQ) == {1: 1}
    assert product_rank(cycle(4), [1, 3], [2, 4], QQ, prune=False) == {0: 0, 1: 1}
    assert not any(product_rank(boundary_simplex(3), [1, 2], [3, 4], QQ, prune=False).values())
    assert not any(product_rank(TWO_POINTS, [1], [2], QQ, prune=False).values())


def test_weak_golod_examples():
    c = is_weakly_golod(cycle(4), QQ)
    assert not c.vanishing
    assert (c.witness.I, c.witness.J, c.witness.degree, c.witness.bidegree, c.witness.rank) == \
        ((1, 3), (2, 4), 1, (0, 0), 1)
    assert is_weakly_golod(boundary_simplex(3), QQ).vanishing
    assert is_weakly_golod(TWO_POINTS, QQ).vanishing


def test_series_examples():
    two = tor_poincare_series(TWO_POINTS, QQ, 6)
    assert two.coefficients == (1, 0, 0, 1, 0, 0, 0)
    assert zk_betti(TWO_POINTS, QQ) == (1, 0, 0, 1)
    c4 = tor_poincare_series(cycle(4), QQ, 8)
    assert c4.coefficients == (1, 0, 0, 2, 0, 0, 1, 0, 0)
    z = zk_betti(cycle(4), QQ)
    assert (z[3], z[6]) == (2, 1)
    assert rzk_betti_predicted(cycle(4), QQ) == (1, 2, 1)
    with pytest.raises(ValueError):
        tor_poincare_series(cycle(4), QQ, 0)


def test_golod_bound_is_the_formal_quotient():
    N = 10
    K = cycle(4)
    bound = golod_bound_series(K, QQ, N).coefficients
    tor = tor_poincare_series(K, QQ, N).coefficients
    # (1 - t(P - 1)) * bound == (1 + t^2)^4 up to degree N
    denom = [1] + [-(tor[i - 1] if i >= 2 else 0) for i in range(1, N + 1)]
    prod = [sum(denom[j] * bound[n - j] for j in range(n + 1)) for n in range(N + 1)]
    assert prod == [1, 0, 4, 0, 6, 0, 4, 0, 1, 0, 0]


@settings(max_examples=25, deadline=None)
@given(complexes(max_m=6))
def test_zk_total_equals_tor_series(K):
    N = 2 * K.m + 1
    z = zk_betti(K, GF2)
    tor = tor_poincare_series(K, GF2, N).coefficients
    assert list(z) + [0] * (N + 1 - len(z)) == list(tor)


@pytest.mark.parametrize("seed", range(8))
def test_product_symmetry_and_routes_agree(seed):
    rng = random.Random(seed)
    K = random_complex(rng, rng.randint(3, 6))
    for F in (QQ, GF2, Field(3)):
        for I, J in disjoint_pairs(K.m):
            a = product_rank(K, I, J, F, prune=False)
            b = product_rank(K, J, I, F, prune=False)
            assert a == b
            by_degree = {}
            for (p, q), r in product_bidegree_ranks(K, I, J, F).items():
                by_degree[p + q + 1] = by_degree.get(p + q + 1, 0) + r
            assert {n: r for n, r in a.items() if r} == {n: r for n, r in by_degree.items() if r}


@pytest.mark.parametrize("seed", range(30))
def test_prefilter_is_sound(seed):
    rng = random.Random(1000 + seed)
    K = random_complex(rng, rng.randint(2, 6))
    for F in (QQ, GF2):
        for I, J in disjoint_pairs(K.m):
            pruned = product_rank(K, I, J, F)
            full = product_rank(K, I, J, F, prune=False)
            assert {n: r for n, r in full.items() if r} == {n: r for n, r in pruned.items() if r}
