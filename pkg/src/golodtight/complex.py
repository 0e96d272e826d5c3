"""Finite simplicial complexes on the vertex set [m].

Simplices are kept internally as bit masks (bit ``v - 1`` for vertex ``v``);
the public surface speaks in sorted tuples of 1-based labels.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import EmptyInput, EmptySubset, LabelOutOfRange, MissingVertex, TooManyVertices

log = logging.getLogger(__name__)

MAX_VERTICES = 63

Simplex = tuple[int, ...]


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def vertices_of(mask: int) -> Simplex:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int):
    """All nonempty submasks of ``mask``."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def maximalize(masks: Iterable[int]) -> list[int]:
    """Drop every mask contained in another one (duplicates collapse)."""
    ordered = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for f in ordered:
        if not any(f & g == f for g in kept):
            kept.append(f)
    return kept


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Immutable complex given by its inclusion-maximal facets.

    ``labels`` records, for complexes obtained by restriction or links, the
    label each local vertex had in the parent complex.  It is metadata only and
    does not take part in equality.
    """

    m: int
    facets: tuple[Simplex, ...]
    labels: tuple[int, ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_masks(cls, m: int, masks: Iterable[int], labels=None) -> "SimplicialComplex":
        facets = tuple(sorted(vertices_of(f) for f in maximalize(masks)))
        if not facets:
            facets = ((),)
        return cls(m, facets, tuple(labels) if labels is not None else None)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.m == other.m and self.facets == other.facets

    def __hash__(self):
        return hash((self.m, self.facets))

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, facets={list(self.facets)})"

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(f) for f in self.facets)

    @cached_property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @cached_property
    def face_masks(self) -> frozenset[int]:
        """All nonempty faces as masks."""
        out: set[int] = set()
        for f in self.facet_masks:
            if f in out:
                continue
            out.update(submasks(f))
        return frozenset(out)

    @cached_property
    def faces_by_dim(self) -> tuple[tuple[Simplex, ...], ...]:
        buckets: list[list[Simplex]] = [[] for _ in range(self.dim + 1)]
        for mask in self.face_masks:
            s = vertices_of(mask)
            buckets[len(s) - 1].append(s)
        return tuple(tuple(sorted(b)) for b in buckets)

    @cached_property
    def vertex_mask(self) -> int:
        out = 0
        for f in self.facet_masks:
            out |= f
        return out

    def has_face(self, simplex: Iterable[int]) -> bool:
        mask = mask_of(simplex)
        return mask == 0 or mask in self.face_masks

    def contains_mask(self, mask: int) -> bool:
        return mask == 0 or mask in self.face_masks

    def label(self, v: int) -> int:
        return self.labels[v - 1] if self.labels is not None else v

    def original(self, simplex: Iterable[int]) -> Simplex:
        """Translate a local simplex into the parent's labels."""
        return tuple(self.label(v) for v in simplex)

    def original_facets(self) -> tuple[Simplex, ...]:
        return tuple(sorted(tuple(sorted(self.original(f))) for f in self.facets))


def build(m: int, facets: Sequence[Sequence[int]], allow_isolated: bool = False) -> SimplicialComplex:
    """Validate and canonicalize a facet list on [m]."""
    if m <= 0 or not facets:
        raise EmptyInput("a complex needs m >= 1 and at least one facet")
    if m > MAX_VERTICES:
        raise TooManyVertices(f"m = {m} exceeds the supported maximum of {MAX_VERTICES}")
    masks = []
    for raw in facets:
        face = list(raw)
        if not face:
            raise EmptyInput("empty facet in input")
        for v in face:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1 or v > m:
                raise LabelOutOfRange(f"label {v!r} outside 1..{m}")
        masks.append(mask_of(face))
    K = SimplicialComplex.from_masks(m, masks)
    missing = [v for v in range(1, m + 1) if not K.vertex_mask >> (v - 1) & 1]
    if missing:
        if not allow_isolated:
            raise MissingVertex(f"vertices {missing} occur in no facet")
        log.warning("ghost vertices %s kept (allow_isolated)", missing)
    return K


def full_subcomplex(K: SimplicialComplex, I: Iterable[int]) -> SimplicialComplex:
    """K_I relabeled onto 1..|I| (in increasing order of I)."""
    verts = sorted(set(I))
    if not verts:
        raise EmptySubset("full subcomplex over the empty set")
    for v in verts:
        if v < 1 or v > K.m:
            raise LabelOutOfRange(f"label {v} outside 1..{K.m}")
    return _restrict(K, mask_of(verts))


def _restrict(K: SimplicialComplex, imask: int) -> SimplicialComplex:
    cache = K._cache.setdefault("restrict", {})
    hit = cache.get(imask)
    if hit is not None:
        return hit
    verts = vertices_of(imask)
    local = {v: i + 1 for i, v in enumerate(verts)}
    pieces = {f & imask for f in K.facet_masks} - {0}
    masks = [mask_of(local[v] for v in vertices_of(p)) for p in pieces]
    labels = tuple(K.label(v) for v in verts)
    sub = SimplicialComplex.from_masks(len(verts), masks, labels)
    if K.m <= 14:
        cache[imask] = sub
    return sub


def link(K: SimplicialComplex, v: int) -> SimplicialComplex:
    """lk_K(v), relabeled onto its own vertex set."""
    if v < 1 or v > K.m:
        raise LabelOutOfRange(f"label {v} outside 1..{K.m}")
    bit = 1 << (v - 1)
    rest = [f & ~bit for f in K.facet_masks if f & bit]
    verts_mask = 0
    for f in rest:
        verts_mask |= f
    verts = vertices_of(verts_mask)
    local = {u: i + 1 for i, u in enumerate(verts)}
    masks = [mask_of(local[u] for u in vertices_of(f)) for f in rest if f]
    labels = tuple(K.label(u) for u in verts)
    return SimplicialComplex.from_masks(len(verts), masks, labels)


def vertex_deletion(K: SimplicialComplex, v: int) -> SimplicialComplex:
    if v < 1 or v > K.m:
        raise LabelOutOfRange(f"label {v} outside 1..{K.m}")
    return full_subcomplex(K, [u for u in range(1, K.m + 1) if u != v])


def minimal_non_faces(K: SimplicialComplex) -> list[Simplex]:
    """All minimal non-faces, lexicographically sorted."""
    faces = K.face_masks
    found: list[int] = []
    for v in range(1, K.m + 1):
        if (1 << (v - 1)) not in faces:
            found.append(1 << (v - 1))
    level = [f for f in faces if popcount(f) == 1]
    for size in range(2, K.dim + 3):
        cands = set()
        for tau in level:
            top = tau.bit_length()
            for v in range(top + 1, K.m + 1):
                c = tau | (1 << (v - 1))
                if c in faces or c in cands:
                    continue
                if all((c & ~(1 << (u - 1))) in faces for u in vertices_of(c)):
                    cands.add(c)
        found.extend(cands)
        level = [f for f in faces if popcount(f) == size]
    return sorted(vertices_of(c) for c in found)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """K * L with L's labels shifted past K's."""
    shift = K.m
    kf = [f for f in K.facet_masks]
    lf = [g << shift for g in L.facet_masks]
    masks = [f | g for f in kf for g in lf]
    labels = None
    if K.labels is not None and L.labels is not None:
        labels = K.labels + L.labels
    return SimplicialComplex.from_masks(K.m + L.m, masks, labels)


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return tuple(len(b) for b in K.faces_by_dim)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** i * n for i, n in enumerate(f_vector(K)))


def faces(K: SimplicialComplex, k: int) -> list[Simplex]:
    if k < 0 or k > K.dim:
        return []
    return list(K.faces_by_dim[k])


def is_cone(K: SimplicialComplex) -> int | None:
    """Least vertex lying in every facet, or None."""
    common = K.facet_masks[0]
    for f in K.facet_masks[1:]:
        common &= f
    if not common:
        return None
    return (common & -common).bit_length()


def is_connected(K: SimplicialComplex) -> bool:
    if K.vertex_mask == 0:
        return False
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in K.facet_masks:
        vs = vertices_of(f)
        for u in vs[1:]:
            parent[find(u)] = find(vs[0])
        find(vs[0])
    roots = {find(v) for v in vertices_of(K.vertex_mask)}
    return len(roots) == 1
