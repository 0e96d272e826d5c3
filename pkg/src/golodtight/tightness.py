"""Tightness, neighborliness, manifold validation and stacked spheres."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .complex import (
    SimplicialComplex,
    _restrict,
    euler_characteristic,
    is_cone,
    is_connected,
    link,
    mask_of,
    popcount,
    vertices_of,
)
from .errors import (
    DimensionTooLow,
    NotConnected,
    NotPseudomanifold,
    PrerequisiteFailed,
    TooManyVertices,
)
from .homology import ChainComplex, betti
from .hochster import DEFAULT_MAX_VERTICES, subsets_in_order
from .linalg import GF2, Field, FieldMatrix, column_space_basis, hstack, rank

log = logging.getLogger(__name__)


def is_k_neighborly(K: SimplicialComplex, k: int) -> bool:
    """True iff every (k+1)-subset of [m] is a face."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k + 1 > K.m:
        return True
    if k > K.dim:
        return False
    return len(K.faces_by_dim[k]) == comb(K.m, k + 1)


def _first_non_edge(K: SimplicialComplex):
    for e in combinations(range(1, K.m + 1), 2):
        if mask_of(e) not in K.face_masks:
            return e
    return None


# ---------------------------------------------------------------- tightness

@dataclass
class TightnessReport:
    field: Field
    tight: bool
    witness: tuple[tuple[int, ...], int] | None = None
    checked: int = 0
    pruned: int = 0
    pruned_by: dict = dc_field(default_factory=dict)
    prune: bool = True

    @property
    def verdict(self) -> str:
        return "tight" if self.tight else "not-tight"


class _Target:
    """Boundary bases of K per degree, for cheap injectivity tests."""

    def __init__(self, K: SimplicialComplex, field: Field):
        self.cc = ChainComplex.of(K, reduced=False)
        self.field = field
        self._bases = {}

    def boundary_basis(self, k: int) -> FieldMatrix:
        if k not in self._bases:
            n = self.cc.size(k)
            if self.cc.size(k + 1) == 0:
                self._bases[k] = FieldMatrix.zeros(self.field, n, 0)
            else:
                self._bases[k] = column_space_basis(self.cc.boundary(k + 1, self.field))[0]
        return self._bases[k]


def _injective_degree(target: _Target, sub: SimplicialComplex, k: int) -> bool:
    """Does H_k(K_I) -> H_k(K) have full rank (unreduced homology)?"""
    field = target.field
    src = ChainComplex.of(sub, reduced=False)
    h = src.betti(k, field)
    if h == 0:
        return True
    Z = src.cycles(k, field)
    tgt = target.cc
    push = np.zeros((tgt.size(k), src.size(k)), dtype=np.int64)
    for j, s in enumerate(src.faces[k]):
        push[tgt.index[k][sub.original(s)], j] = 1
    image = FieldMatrix(field, push) @ Z
    B = target.boundary_basis(k)
    return rank(hstack(B, image)) - B.cols == h


def is_tight(K: SimplicialComplex, field: Field, prune: bool = True,
             max_vertices: int = DEFAULT_MAX_VERTICES) -> TightnessReport:
    """Injectivity of H_*(K_I) -> H_*(K) for every nonempty I.

    Pruning: a non-edge is an immediate degree-0 witness; cones and subsets
    with vanishing reduced homology are skipped (neighborliness already makes
    every K_I connected).
    """
    if not is_connected(K) or K.vertex_mask != (1 << K.m) - 1:
        raise NotConnected("tightness is defined for connected complexes on all of [m]")
    if K.m > max_vertices:
        raise TooManyVertices(f"m = {K.m} exceeds the enumeration cap {max_vertices}")
    report = TightnessReport(field, True, prune=prune)
    if prune:
        e = _first_non_edge(K)
        if e is not None:
            report.tight = False
            report.witness = (e, 0)
            report.checked = 1
            report.pruned_by["not-neighborly"] = 1
            return report
    target = _Target(K, field)
    top = (1 << K.m) - 1
    for I in subsets_in_order(K.m):
        imask = mask_of(I)
        if imask == top:
            continue
        sub = _restrict(K, imask)
        if prune:
            if is_cone(sub) is not None:
                report.pruned += 1
                report.pruned_by["cone"] = report.pruned_by.get("cone", 0) + 1
                continue
            if not any(betti(sub, field, reduced=True)):
                report.pruned += 1
                report.pruned_by["acyclic"] = report.pruned_by.get("acyclic", 0) + 1
                continue
        report.checked += 1
        start = 1 if prune else 0
        for k in range(start, sub.dim + 1):
            if not _injective_degree(target, sub, k):
                report.tight = False
                report.witness = (I, k)
                return report
    return report


# ------------------------------------------------------- manifold validation

@dataclass
class ManifoldReport:
    dim: int
    is_pure: bool
    is_closed_pseudomanifold: bool
    is_strongly_connected: bool
    is_connected: bool
    link_verdicts: dict[int, str]
    orientable_over: dict[str, bool]
    witnesses: dict[str, object] = dc_field(default_factory=dict)

    @property
    def links_ok(self) -> bool:
        return all(v != "failed" for v in self.link_verdicts.values())

    @property
    def certified(self) -> bool:
        """All links are genuine spheres (only decidable for d <= 3)."""
        return all(v == "sphere-certified" for v in self.link_verdicts.values())

    @property
    def ok(self) -> bool:
        return (self.is_pure and self.is_closed_pseudomanifold and self.is_strongly_connected
                and self.is_connected and self.links_ok)


def _ridge_counts(K: SimplicialComplex) -> dict[int, list[int]]:
    ridges: dict[int, list[int]] = {}
    for idx, f in enumerate(K.facet_masks):
        g = f
        while g:
            bit = g & -g
            ridges.setdefault(f & ~bit, []).append(idx)
            g &= g - 1
    return ridges


def _is_pure(K: SimplicialComplex):
    bad = next((f for f in K.facets if len(f) != K.dim + 1), None)
    return bad is None, bad


def _pseudomanifold_witness(K: SimplicialComplex):
    """First ridge not in exactly two facets, or None (assumes purity)."""
    if K.dim < 1:
        return ()
    for r, fs in sorted(_ridge_counts(K).items(), key=lambda kv: vertices_of(kv[0])):
        if len(fs) != 2:
            return vertices_of(r)
    return None


def _strongly_connected(K: SimplicialComplex) -> bool:
    n = len(K.facets)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for fs in _ridge_counts(K).values():
        for other in fs[1:]:
            parent[find(other)] = find(fs[0])
    return len({find(i) for i in range(n)}) == 1


def is_closed_pseudomanifold(K: SimplicialComplex) -> bool:
    return _is_pure(K)[0] and K.dim >= 1 and _pseudomanifold_witness(K) is None


def _is_single_cycle(L: SimplicialComplex) -> bool:
    if L.dim != 1 or not _is_pure(L)[0] or not is_connected(L):
        return False
    deg = [0] * (L.m + 1)
    for a, b in L.facets:
        deg[a] += 1
        deg[b] += 1
    return all(d == 2 for d in deg[1:])


def _is_two_sphere(L: SimplicialComplex) -> bool:
    if L.dim != 2 or not _is_pure(L)[0] or not is_connected(L):
        return False
    if _pseudomanifold_witness(L) is not None:
        return False
    if not all(_is_single_cycle(link(L, v)) for v in range(1, L.m + 1)):
        return False
    return euler_characteristic(L) == 2


def _is_homology_sphere(L: SimplicialComplex, dim: int, fields: Sequence[Field]) -> bool:
    if L.dim != dim:
        return False
    for F in fields:
        b = betti(L, F, reduced=True)
        if any(b[:-1]) or b[-1] != 1:
            return False
    return True


def _link_verdict(M: SimplicialComplex, v: int, fields: Sequence[Field]) -> str:
    L = link(M, v)
    d = M.dim
    if d == 1:
        return "sphere-certified" if L.m == 2 and L.dim == 0 else "failed"
    if d == 2:
        return "sphere-certified" if _is_single_cycle(L) else "failed"
    if d == 3:
        return "sphere-certified" if _is_two_sphere(L) else "failed"
    return "homology-sphere-only" if _is_homology_sphere(L, d - 1, fields) else "failed"


def validate_manifold(M: SimplicialComplex, fields: Iterable[Field] = (GF2,)) -> ManifoldReport:
    fields = list(fields)
    pure, bad_facet = _is_pure(M)
    witnesses: dict[str, object] = {}
    if not pure:
        witnesses["purity"] = bad_facet
    closed = False
    if pure and M.dim >= 1:
        ridge = _pseudomanifold_witness(M)
        closed = ridge is None
        if ridge is not None:
            witnesses["pseudomanifold"] = ridge
    strong = pure and _strongly_connected(M)
    links = {v: _link_verdict(M, v, fields) for v in range(1, M.m + 1)} if pure and M.dim >= 1 else {}
    failed = [v for v, verdict in links.items() if verdict == "failed"]
    if failed:
        witnesses["link"] = failed[0]
    orient = {}
    if closed:
        for F in fields:
            orient[F.name] = ChainComplex.of(M, reduced=False).betti(M.dim, F) == 1
    return ManifoldReport(M.dim, pure, closed, strong, is_connected(M), links, orient, witnesses)


# ----------------------------------------------------------- stacked spheres

@dataclass
class StackedDecomposition:
    """Blocks V_1..V_k in removal order, in the sphere's own labels."""

    sphere: SimplicialComplex
    blocks: list[tuple[int, ...]]

    def __len__(self):
        return len(self.blocks)

    def original_blocks(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(self.sphere.original(b))) for b in self.blocks]

    def replay(self) -> SimplicialComplex:
        """Rebuild the sphere by connected sums, last-removed block first."""
        last = mask_of(self.blocks[-1])
        facets = {last & ~(1 << (v - 1)) for v in self.blocks[-1]}
        for block in reversed(self.blocks[:-1]):
            V = mask_of(block)
            pieces = {V & ~(1 << (u - 1)) for u in block}
            shared = [f for f in pieces if f in facets]
            if len(shared) != 1:
                raise AssertionError(f"block {block} does not glue along exactly one facet")
            facets.remove(shared[0])
            facets |= pieces - {shared[0]}
        return SimplicialComplex.from_masks(self.sphere.m, facets)


def _is_simplex_boundary(facets: frozenset[int]):
    """If the facet set equals the boundary of a simplex, its vertex mask."""
    V = 0
    for f in facets:
        V |= f
    n = popcount(V)
    if len(facets) == n and all(popcount(f) == n - 1 for f in facets):
        return V
    return None


def _removable(facets: frozenset[int], faces_cache: set[int] | None = None) -> list[tuple[int, int]]:
    """Vertices whose link is the boundary of a simplex W with W not a face."""
    verts = 0
    for f in facets:
        verts |= f
    out = []
    for v in vertices_of(verts):
        bit = 1 << (v - 1)
        star = [f for f in facets if f & bit]
        lk = frozenset(f & ~bit for f in star)
        W = _is_simplex_boundary(lk)
        if W is None or popcount(W) != popcount(next(iter(facets))):
            continue
        if any(W & ~f == 0 for f in facets if not f & bit):
            continue
        out.append((v, W))
    return out


def _greedy(facets: frozenset[int], blocks: list[int]) -> list[int] | None:
    while True:
        V = _is_simplex_boundary(facets)
        if V is not None:
            return blocks + [V]
        cand = _removable(facets)
        if not cand:
            return None
        v, W = cand[0]
        bit = 1 << (v - 1)
        facets = frozenset({f for f in facets if not f & bit} | {W})
        blocks = blocks + [W | bit]


def is_stacked_sphere(S: SimplicialComplex) -> StackedDecomposition | None:
    """Recognize S as a connected sum of simplex boundaries.

    Greedy reverse vertex removal with lexicographic ties; if greedy gets
    stuck, each removable vertex of the initial frontier is tried once.
    """
    if not is_closed_pseudomanifold(S):
        raise NotPseudomanifold("stacked recognition needs a closed pseudomanifold")
    b = betti(S, GF2, reduced=True)
    if any(b[:-1]) or b[-1] != 1:
        return None
    facets = frozenset(S.facet_masks)
    found = _greedy(facets, [])
    if found is None:
        for v, W in _removable(facets)[1:]:
            bit = 1 << (v - 1)
            found = _greedy(frozenset({f for f in facets if not f & bit} | {W}), [W | bit])
            if found is not None:
                break
    if found is None:
        return None
    return StackedDecomposition(S, [vertices_of(V) for V in found])


def is_locally_stacked(M: SimplicialComplex) -> dict[int, str]:
    """Per-vertex verdict: stacked, not-stacked, or not-applicable (d <= 2)."""
    if not is_closed_pseudomanifold(M):
        raise PrerequisiteFailed("locally stacked needs a closed pseudomanifold")
    if M.dim <= 2:
        return {v: "not-applicable" for v in range(1, M.m + 1)}
    out = {}
    for v in range(1, M.m + 1):
        L = link(M, v)
        try:
            out[v] = "stacked" if is_stacked_sphere(L) is not None else "not-stacked"
        except NotPseudomanifold:
            out[v] = "not-stacked"
    return out


def is_stacked_manifold_evidence(M: SimplicialComplex) -> bool:
    """Neighborly and every vertex link a stacked sphere."""
    verdicts = is_locally_stacked(M)
    if M.dim <= 2:
        raise DimensionTooLow("stacked links are only meaningful for d >= 3")
    return is_k_neighborly(M, 1) and all(v == "stacked" for v in verdicts.values())


# ------------------------------------------------------------- tight-neighborly

@dataclass
class TightNeighborlyTrace:
    m: int
    d: int
    beta1: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def tight_neighborly_identity(m: int, d: int, beta1: int) -> TightNeighborlyTrace:
    """C(m-d-1, 2) against C(d+2, 2) * beta1."""
    if d < 3:
        raise DimensionTooLow(f"tight-neighborly needs d >= 3, got {d}")
    lhs = comb(m - d - 1, 2) if m - d - 1 >= 0 else 0
    return TightNeighborlyTrace(m, d, beta1, lhs, comb(d + 2, 2) * beta1)


def is_tight_neighborly(M: SimplicialComplex, field: Field) -> TightNeighborlyTrace:
    if M.dim < 3:
        raise DimensionTooLow(f"tight-neighborly needs d >= 3, got {M.dim}")
    if not is_connected(M):
        raise NotConnected("tight-neighborly needs a connected manifold")
    b1 = ChainComplex.of(M, reduced=True).betti(1, field)
    return tight_neighborly_identity(M.m, M.dim, b1)


@dataclass
class MiddleDimensionCheck:
    """Tightness against half-dimensional neighborliness for 2k-manifolds."""

    k: int
    connected_enough: bool
    tight: dict[str, bool]
    neighborly: bool

    @property
    def consistent(self) -> bool:
        if not self.connected_enough:
            return True
        return all(self.tight.values()) == self.neighborly


def middle_dimension_check(M: SimplicialComplex, fields: Sequence[Field]) -> MiddleDimensionCheck:
    """For a (k-1)-connected 2k-manifold, tight over every field iff k-neighborly.

    Connectivity is tested homologically: reduced Betti numbers below k vanish
    over each field.
    """
    if M.dim % 2 or M.dim < 2:
        raise PrerequisiteFailed("needs an even-dimensional manifold")
    k = M.dim // 2
    conn = all(not any(betti(M, F)[:k]) for F in fields)
    tight = {F.name: is_tight(M, F).tight for F in fields}
    return MiddleDimensionCheck(k, conn, tight, is_k_neighborly(M, k))
