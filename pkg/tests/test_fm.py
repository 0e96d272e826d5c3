import pytest

from golodtight.complex import build, minimal_non_faces
from golodtight.errors import DimensionTooLow, LinkNotStacked
from golodtight.fm import build_FM, compute_SM, link_decomposition, verify_FM
from golodtight.generators import boundary_simplex, stacked_sphere
from golodtight.io import load_zoo
from golodtight.linalg import GF2, QQ

# boundary of the 4-dimensional cross-polytope: a 3-sphere whose links are octahedra
CROSS = build(8, [[a, b, c, d] for a in (1, 2) for b in (3, 4) for c in (5, 6) for d in (7, 8)])


def test_simplex_boundary():
    M = boundary_simplex(4)
    assert build_FM(M).facets == M.facets
    assert compute_SM(M) == [(1, 2, 3, 4, 5)]
    assert link_decomposition(M, 1) == [(2, 3, 4, 5)]
    r = verify_FM(M, (QQ, GF2))
    assert r.passed
    assert r.betti == {"Q": (0, 0, 0, 1), "F2": (0, 0, 0, 1)}


def test_fm_contains_filled_non_faces():
    M = stacked_sphere(3, 2)
    F = build_FM(M)
    size4 = [s for s in minimal_non_faces(M) if len(s) == 4]
    assert size4
    for s in size4:
        assert F.has_face(s)
    assert all(F.has_face(f) for f in M.facets)


def test_shared_tetrahedron_vertex_has_two_blocks():
    M = stacked_sphere(3, 2)
    assert link_decomposition(M, 1) == [(2, 3, 4, 5)]
    assert len(link_decomposition(M, 2)) == 2


def test_walkup_type_manifold():
    r = verify_FM(load_zoo("walkup9"))
    assert r.passed
    assert len(r.SM) == 9
    for b in r.betti.values():
        assert b == (0, 1, 0, 9)
    assert len(r.FM.facets) > len(r.M.facets)


def test_non_stacked_links_are_reported():
    with pytest.raises(LinkNotStacked) as err:
        link_decomposition(CROSS, 1)
    assert err.value.vertex == 1
    r = verify_FM(CROSS, (QQ,))
    assert not r.passed
    assert not r.claims["links stacked"].passed
    assert r.claims["links stacked"].witness == 1
    assert not r.claims["(iv) homology"].passed


def test_surface_rejected():
    with pytest.raises(DimensionTooLow):
        verify_FM(load_zoo("t7"))
    with pytest.raises(DimensionTooLow):
        link_decomposition(load_zoo("t7"), 1)
