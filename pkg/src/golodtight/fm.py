"""F(M): fill the (d+1)-element minimal non-faces of a d-manifold and check it.

For a tight-neighborly M every vertex link is a stacked sphere
dd(V(v,1)) # ... # dd(V(v,n_v)); the sets V(v,k) + v make up S(M), and F(M)
is expected to be the union of the simplex boundaries over S(M) with homology
concentrated in degrees 1 and d.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Sequence

from .complex import (
    SimplicialComplex,
    _restrict,
    is_connected,
    link,
    mask_of,
    maximalize,
    minimal_non_faces,
    popcount,
    vertices_of,
)
from .errors import CharacterizationMismatch, DimensionTooLow, LinkNotStacked, NotPseudomanifold, PrerequisiteFailed
from .homology import betti
from .linalg import GF2, QQ, Field
from .tightness import is_k_neighborly, is_stacked_sphere, is_tight_neighborly, validate_manifold

log = logging.getLogger(__name__)

DEFAULT_FIELDS = (QQ, GF2, Field(3), Field(5))


def _require_dim(M: SimplicialComplex):
    if M.dim < 3:
        raise DimensionTooLow(f"F(M) is built for d >= 3, got d = {M.dim}")
    if not is_connected(M):
        raise PrerequisiteFailed("M must be connected")


def build_FM(M: SimplicialComplex) -> SimplicialComplex:
    """M with every minimal non-face of cardinality d+1 filled in."""
    _require_dim(M)
    try:
        if not is_tight_neighborly(M, GF2).holds:
            log.warning("M is not tight-neighborly; F(M) claims may fail")
    except PrerequisiteFailed:
        pass
    d = M.dim
    fill = [mask_of(s) for s in minimal_non_faces(M) if len(s) == d + 1]
    return SimplicialComplex.from_masks(M.m, list(M.facet_masks) + fill)


def link_decomposition(M: SimplicialComplex, v: int) -> list[tuple[int, ...]]:
    """Blocks V(v,1)..V(v,n_v) of the stacked link of v, in M's labels."""
    _require_dim(M)
    L = link(M, v)
    try:
        dec = is_stacked_sphere(L)
    except NotPseudomanifold:
        dec = None
    if dec is None:
        raise LinkNotStacked(f"link of vertex {v} is not a stacked sphere", vertex=v)
    return dec.original_blocks()


def _sm_from_links(M: SimplicialComplex) -> tuple[set[tuple[int, ...]], dict[int, list]]:
    decs = {}
    out = set()
    for v in range(1, M.m + 1):
        decs[v] = link_decomposition(M, v)
        for V in decs[v]:
            out.add(tuple(sorted(V + (v,))))
    return out, decs


def _sm_direct(M: SimplicialComplex) -> set[tuple[int, ...]]:
    """(d+2)-sets I with some v whose link in M_I is (d-2)-neighborly on I - v."""
    d = M.dim
    faces = M.face_masks
    out = set()
    for I in combinations(range(1, M.m + 1), d + 2):
        for v in I:
            rest = [u for u in I if u != v]
            bit = 1 << (v - 1)
            if all((mask_of(s) | bit) in faces for s in combinations(rest, d - 1)):
                out.add(I)
                break
    return out


def compute_SM(M: SimplicialComplex) -> list[tuple[int, ...]]:
    """S(M) computed both ways; CharacterizationMismatch if they differ."""
    _require_dim(M)
    via_links, _ = _sm_from_links(M)
    direct = _sm_direct(M)
    if via_links != direct:
        diff = sorted(via_links ^ direct)
        raise CharacterizationMismatch(f"S(M) routes disagree on {diff[0]}", witness=diff[0])
    return sorted(direct)


@dataclass
class Claim:
    passed: bool
    witness: object = None
    detail: str = ""


@dataclass
class FMResult:
    M: SimplicialComplex
    FM: SimplicialComplex
    SM: list[tuple[int, ...]]
    link_decompositions: dict[int, list[tuple[int, ...]]]
    claims: dict[str, Claim] = dc_field(default_factory=dict)
    betti: dict[str, tuple[int, ...]] = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims.values())


def _boundary_masks(V: int) -> list[int]:
    return [V & ~(1 << (u - 1)) for u in vertices_of(V)]


def verify_FM(M: SimplicialComplex, fields: Sequence[Field] = DEFAULT_FIELDS) -> FMResult:
    """Construct F(M) and check its structural and homological claims.

    Failures are recorded with witnesses rather than raised; only d < 3 or a
    disconnected M is refused outright.
    """
    _require_dim(M)
    d = M.dim
    FM = build_FM(M)
    claims: dict[str, Claim] = {}
    report = validate_manifold(M, [GF2])
    claims["manifold"] = Claim(report.ok, report.witnesses or None)

    decs: dict[int, list] = {}
    stuck = None
    for v in range(1, M.m + 1):
        try:
            decs[v] = link_decomposition(M, v)
        except LinkNotStacked:
            stuck = stuck or v
    claims["links stacked"] = Claim(stuck is None, stuck)

    via_links = {tuple(sorted(V + (v,))) for v, blocks in decs.items() for V in blocks}
    direct = _sm_direct(M)
    diff = sorted(via_links ^ direct)
    claims["S(M) characterizations agree"] = Claim(not diff, diff[0] if diff else None)
    SM = sorted(direct)
    faces_F = FM.face_masks

    # (i) every V(v,k) + v is a minimal non-face of F(M)
    bad = None
    for I in sorted(via_links):
        mI = mask_of(I)
        if mI in faces_F or not all(f in faces_F for f in _boundary_masks(mI)):
            bad = I
            break
    claims["(i) minimal non-faces"] = Claim(bad is None, bad)

    # (ii) lk_F(v) is the union of the boundaries of its blocks
    bad = None
    for v, blocks in decs.items():
        Lf = link(FM, v)
        got = sorted(tuple(sorted(Lf.original(f))) for f in Lf.facets)
        want = maximalize(f for V in blocks for f in _boundary_masks(mask_of(V)))
        if got != sorted(vertices_of(f) for f in want):
            bad = v
            break
    claims["(ii) link of F(M)"] = Claim(bad is None, bad)

    # (iii) F(M) is the union of the simplex boundaries over S(M)
    union = SimplicialComplex.from_masks(M.m, [f for I in SM for f in _boundary_masks(mask_of(I))])
    sym = sorted(set(FM.facets) ^ set(union.facets))
    claims["(iii) F(M) from S(M)"] = Claim(not sym, sym[0] if sym else None)

    # (iv) homology of F(M) per field, and agreement across fields
    ranks = {}
    bad = None
    for F in fields:
        bF = betti(FM, F, reduced=True)
        bM = betti(M, F, reduced=True)
        ranks[F.name] = bF
        expect_zero = [i for i in range(len(bF)) if i not in (1, d) and bF[i]]
        if bF[d] != len(SM) or expect_zero or bF[1] != bM[1]:
            bad = bad or (F.name, bF)
    claims["(iv) homology"] = Claim(bad is None, bad, f"|S(M)| = {len(SM)}")
    distinct = set(ranks.values())
    claims["(iv) field independence"] = Claim(len(distinct) <= 1, None if len(distinct) <= 1 else ranks)

    # (v) M restricted to each V(v,k) + v is (d-1)-neighborly
    bad = None
    for I in sorted(via_links):
        if not is_k_neighborly(_restrict(M, mask_of(I)), d - 1):
            bad = I
            break
    claims["(v) neighborly blocks"] = Claim(bad is None, bad)

    return FMResult(M, FM, SM, decs, claims, ranks)
