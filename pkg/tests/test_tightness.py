import random

import pytest
from hypothesis import given, settings

from golodtight.complex import build, is_connected
from golodtight.errors import DimensionTooLow, NotConnected, NotPseudomanifold, PrerequisiteFailed
from golodtight.generators import boundary_simplex, cycle, random_complex, stacked_sphere
from golodtight.io import load_zoo
from golodtight.linalg import GF2, QQ, Field
from golodtight.tightness import (
    is_k_neighborly,
    is_locally_stacked,
    is_stacked_manifold_evidence,
    is_stacked_sphere,
    is_tight,
    is_tight_neighborly,
    middle_dimension_check,
    tight_neighborly_identity,
    validate_manifold,
)

from strategies import complexes


def test_neighborly_examples():
    S = boundary_simplex(3)
    assert is_k_neighborly(S, 1) and is_k_neighborly(S, 2)
    assert not is_k_neighborly(S, 3)
    assert not is_k_neighborly(cycle(4), 1)
    assert is_k_neighborly(load_zoo("t7"), 1)
    with pytest.raises(ValueError):
        is_k_neighborly(S, 0)


def test_tight_examples():
    r = is_tight(cycle(4), QQ)
    assert not r.tight and r.witness == ((1, 3), 0)
    assert is_tight(boundary_simplex(3), QQ).tight
    rp2 = load_zoo("rp2_6")
    assert is_tight(rp2, GF2).tight
    q = is_tight(rp2, QQ)
    assert not q.tight and q.witness[1] == 1


def test_tight_preconditions():
    with pytest.raises(NotConnected):
        is_tight(build(2, [[1], [2]]), QQ)
    with pytest.raises(NotConnected):
        is_tight(build(3, [[1, 2]], allow_isolated=True), QQ)


def test_unpruned_matches_pruned_on_zoo():
    for name in ("rp2_6", "t7"):
        K = load_zoo(name)
        for F in (QQ, GF2, Field(3)):
            assert is_tight(K, F).tight == is_tight(K, F, prune=False).tight


@settings(max_examples=60, deadline=None)
@given(complexes(max_m=7, connected=True))
def test_pruning_is_sound(K):
    for F in (QQ, GF2):
        a, b = is_tight(K, F), is_tight(K, F, prune=False)
        assert a.tight == b.tight
        if a.tight:
            assert is_k_neighborly(K, 1)


def test_validate_manifold_examples():
    r = validate_manifold(boundary_simplex(4), (QQ, GF2))
    assert r.ok and r.certified
    assert set(r.link_verdicts.values()) == {"sphere-certified"}
    assert r.orientable_over == {"Q": True, "F2": True}
    rp2 = validate_manifold(load_zoo("rp2_6"), (QQ, GF2))
    assert rp2.is_closed_pseudomanifold and rp2.links_ok
    assert rp2.orientable_over == {"Q": False, "F2": True}


def test_dangling_edge_fails_with_witness():
    r = validate_manifold(build(5, [[1, 2], [2, 3], [3, 4], [1, 4], [4, 5]]))
    assert not r.ok
    assert not r.is_closed_pseudomanifold
    assert r.witnesses["pseudomanifold"] == (4,)


def test_impure_complex_fails_purity():
    r = validate_manifold(build(5, [[1, 2, 3], [3, 4], [4, 5]]))
    assert not r.is_pure and not r.ok


def test_stacked_examples():
    d = is_stacked_sphere(boundary_simplex(4))
    assert d.blocks == [(1, 2, 3, 4, 5)]
    assert len(is_stacked_sphere(stacked_sphere(3, 2))) == 2
    assert is_stacked_sphere(load_zoo("t7")) is None
    with pytest.raises(NotPseudomanifold):
        is_stacked_sphere(build(3, [[1, 2], [2, 3]]))


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_stacked_round_trip(d, k):
    S = stacked_sphere(d, k)
    dec = is_stacked_sphere(S)
    assert dec is not None and len(dec) == k
    assert set(dec.replay().facet_masks) == set(S.facet_masks)


def test_octahedron_is_not_stacked():
    octa = build(6, [[a, b, c] for a in (1, 2) for b in (3, 4) for c in (5, 6)])
    assert is_stacked_sphere(octa) is None


def test_locally_stacked_examples():
    assert set(is_locally_stacked(boundary_simplex(4)).values()) == {"stacked"}
    assert set(is_locally_stacked(stacked_sphere(3, 3)).values()) == {"stacked"}
    assert set(is_locally_stacked(load_zoo("t7")).values()) == {"not-applicable"}
    assert is_stacked_manifold_evidence(boundary_simplex(4))
    with pytest.raises(DimensionTooLow):
        is_stacked_manifold_evidence(load_zoo("t7"))
    with pytest.raises(PrerequisiteFailed):
        is_locally_stacked(build(3, [[1, 2], [2, 3]]))


def test_tight_neighborly_arithmetic():
    t = is_tight_neighborly(boundary_simplex(4), QQ)
    assert (t.m, t.d, t.beta1, t.lhs, t.rhs) == (5, 3, 0, 0, 0) and t.holds
    t = tight_neighborly_identity(9, 3, 1)
    assert (t.lhs, t.rhs) == (10, 10) and t.holds
    t = tight_neighborly_identity(8, 3, 1)
    assert (t.lhs, t.rhs) == (6, 10) and not t.holds
    with pytest.raises(DimensionTooLow):
        is_tight_neighborly(load_zoo("t7"), QQ)
    with pytest.raises(DimensionTooLow):
        tight_neighborly_identity(7, 2, 1)


def test_tight_neighborly_needs_connected():
    two = build(10, [[a for a in range(1, 6) if a != i] for i in range(1, 6)] +
                [[a for a in range(6, 11) if a != i] for i in range(6, 11)])
    with pytest.raises(NotConnected):
        is_tight_neighborly(two, QQ)


def test_middle_dimension_on_boundary_of_five_simplex():
    # a 4-sphere: 1-connected, 2-neighborly, tight
    chk = middle_dimension_check(boundary_simplex(5), (QQ, GF2))
    assert chk.connected_enough and chk.neighborly and chk.consistent
    with pytest.raises(PrerequisiteFailed):
        middle_dimension_check(boundary_simplex(4), (QQ,))


@pytest.mark.parametrize("seed", range(40))
def test_tight_implies_neighborly_random(seed):
    rng = random.Random(seed)
    K = random_complex(rng, rng.randint(2, 7))
    if not is_connected(K):
        return
    for F in (QQ, GF2):
        if is_tight(K, F).tight:
            assert is_k_neighborly(K, 1)
