from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from golodtight.complex import (
    build,
    euler_characteristic,
    f_vector,
    faces,
    full_subcomplex,
    is_cone,
    join,
    link,
    minimal_non_faces,
    vertex_deletion,
)
from golodtight.errors import (
    DimensionMismatch,
    EmptyInput,
    EmptySubset,
    LabelOutOfRange,
    MissingVertex,
    OverlapTooLarge,
    TooManyVertices,
)
from golodtight.generators import boundary_simplex, circ_union, connected_sum, cycle, simplex, stacked_sphere
from golodtight.homology import betti
from golodtight.linalg import QQ

from strategies import complexes


def test_build_boundary_of_tetrahedron():
    K = build(4, [list(c) for c in combinations(range(1, 5), 3)])
    assert K.dim == 2 and len(K.facets) == 4
    assert K == boundary_simplex(3)


def test_build_cycle():
    K = build(4, [[1, 2], [2, 3], [3, 4], [1, 4]])
    assert K == cycle(4)
    assert K.facets == ((1, 2), (1, 4), (2, 3), (3, 4))


def test_build_dedups_but_rejects_unused_label():
    with pytest.raises(MissingVertex):
        build(3, [[1, 2], [1, 2], [1]])
    K = build(3, [[1, 2], [1, 2], [1]], allow_isolated=True)
    assert K.facets == ((1, 2),)


@pytest.mark.parametrize("m, facets, exc", [
    (0, [[1]], EmptyInput),
    (3, [], EmptyInput),
    (3, [[]], EmptyInput),
    (3, [[1, 4]], LabelOutOfRange),
    (3, [[0, 1]], LabelOutOfRange),
    (64, [list(range(1, 65))], TooManyVertices),
])
def test_build_errors(m, facets, exc):
    with pytest.raises(exc):
        build(m, facets)


def test_full_subcomplex_examples():
    D = boundary_simplex(3)
    assert full_subcomplex(D, [1, 2, 3]).facets == ((1, 2, 3),)
    two = full_subcomplex(cycle(4), [1, 3])
    assert two.facets == ((1,), (2,)) and two.labels == (1, 3)
    path = full_subcomplex(cycle(4), [1, 2, 3])
    assert path.original_facets() == ((1, 2), (2, 3))
    with pytest.raises(EmptySubset):
        full_subcomplex(D, [])


def test_link_examples():
    L = link(boundary_simplex(3), 1)
    assert L == cycle(3) and L.labels == (2, 3, 4)
    L = link(cycle(4), 1)
    assert L.original_facets() == ((2,), (4,))
    L = link(simplex(1), 1)
    assert L.original_facets() == ((2,),)
    with pytest.raises(LabelOutOfRange):
        link(cycle(4), 5)


def test_vertex_deletion():
    assert vertex_deletion(boundary_simplex(3), 4).facets == ((1, 2, 3),)


def test_minimal_non_faces_examples():
    assert minimal_non_faces(boundary_simplex(3)) == [(1, 2, 3, 4)]
    assert minimal_non_faces(cycle(4)) == [(1, 3), (2, 4)]
    assert minimal_non_faces(simplex(2)) == []


def test_join_examples():
    pt = build(1, [[1]])
    assert join(pt, pt).facets == ((1, 2),)
    two = build(2, [[1], [2]])
    assert betti(join(two, two), QQ) == (0, 1)
    assert len(join(two, two).faces_by_dim[1]) == 4
    cone = join(boundary_simplex(2), pt)
    assert betti(cone, QQ) == (0, 0, 0)


def test_stacked_sphere_examples():
    assert stacked_sphere(3, 1) == boundary_simplex(4)
    S = stacked_sphere(3, 2)
    assert S.m == 6 and f_vector(S) == (6, 14, 16, 8)


def test_connected_sum_of_tetrahedra():
    D = boundary_simplex(3)
    S = connected_sum(D, (1, 2, 3), D, (1, 2, 3))
    assert f_vector(S) == (5, 9, 6)
    assert betti(S, QQ) == (0, 0, 1)


def test_circ_union_keeps_shared_facet():
    D = boundary_simplex(3)
    U = circ_union(D, (1, 2, 3), D, (1, 2, 3))
    assert (1, 2, 3) in U.facets and len(U.facets) == 7


def test_gluing_errors():
    D = boundary_simplex(3)
    with pytest.raises(DimensionMismatch):
        connected_sum(D, (1, 2, 3), cycle(4), (1, 2))
    with pytest.raises(DimensionMismatch):
        connected_sum(D, (1, 2), D, (1, 2, 3))
    with pytest.raises(OverlapTooLarge):
        connected_sum(D, (1, 2, 3), D, (1, 2, 3), matching={1: 1, 2: 2, 3: 3, 4: 1})


def test_connected_sum_with_matching():
    D = boundary_simplex(3)
    S = connected_sum(D, (2, 3, 4), D, (1, 2, 3), matching={1: 2, 2: 3, 3: 4})
    assert S.m == 5 and f_vector(S) == (5, 9, 6)


def test_f_vector_euler_and_cone():
    assert f_vector(boundary_simplex(3)) == (4, 6, 4)
    assert euler_characteristic(boundary_simplex(3)) == 2
    assert f_vector(cycle(4)) == (4, 4)
    assert euler_characteristic(cycle(4)) == 0
    assert is_cone(simplex(2)) == 1
    assert is_cone(cycle(4)) is None
    assert faces(cycle(4), 0) == [(1,), (2,), (3,), (4,)]
    assert faces(cycle(4), 5) == []


@pytest.mark.parametrize("n", range(1, 7))
def test_boundary_simplex_euler(n):
    assert euler_characteristic(boundary_simplex(n)) == 1 + (-1) ** (n - 1)


@settings(max_examples=60, deadline=None)
@given(complexes(max_m=7), st.data())
def test_restriction_composes(K, data):
    I = data.draw(st.sets(st.integers(1, K.m), min_size=1))
    J = data.draw(st.sets(st.sampled_from(sorted(I)), min_size=1))
    KI = full_subcomplex(K, I)
    local = [sorted(I).index(j) + 1 for j in J]
    assert full_subcomplex(KI, local).original_facets() == full_subcomplex(K, J).original_facets()


@settings(max_examples=40, deadline=None)
@given(complexes(max_m=6))
def test_minimal_non_faces_are_hollow_simplices(K):
    mnf = set(minimal_non_faces(K))
    for size in range(1, min(K.m, K.dim + 2) + 1):
        for I in combinations(range(1, K.m + 1), size):
            sub = full_subcomplex(K, I)
            hollow = size >= 2 and sub == boundary_simplex(size - 1)
            if size == 1:
                hollow = not K.has_face(I)
            assert (I in mnf) == hollow


@settings(max_examples=40, deadline=None)
@given(complexes(max_m=5), complexes(max_m=4))
def test_join_face_count_is_convolution(K, L):
    a = (1,) + f_vector(K)
    b = (1,) + f_vector(L)
    conv = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            conv[i + j] += x * y
    assert (1,) + f_vector(join(K, L)) == tuple(conv)


@settings(max_examples=40, deadline=None)
@given(complexes(max_m=7))
def test_euler_characteristic_matches_f_vector(K):
    assert euler_characteristic(K) == sum((-1) ** i * f for i, f in enumerate(f_vector(K)))


def test_labels_do_not_affect_equality():
    a = full_subcomplex(cycle(4), [1, 3])
    b = build(2, [[1], [2]])
    assert a == b and hash(a) == hash(b)
