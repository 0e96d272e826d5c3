"""Standard complexes and gluing constructions."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Mapping, Sequence

from .complex import SimplicialComplex, build, is_connected, mask_of, vertices_of
from .errors import DimensionMismatch, EmptyInput, OverlapTooLarge


def simplex(n: int) -> SimplicialComplex:
    """The full n-simplex on n + 1 vertices."""
    return build(n + 1, [list(range(1, n + 2))])


def boundary_simplex(n: int) -> SimplicialComplex:
    """The boundary of the n-simplex, an (n-1)-sphere on n + 1 vertices."""
    if n < 1:
        raise EmptyInput("boundary_simplex needs n >= 1")
    return build(n + 1, [list(c) for c in combinations(range(1, n + 2), n)])


def cycle(n: int) -> SimplicialComplex:
    if n < 3:
        raise EmptyInput("a cycle needs at least 3 vertices")
    return build(n, [[i, i + 1] for i in range(1, n)] + [[1, n]])


def stacked_sphere(d: int, k: int) -> SimplicialComplex:
    """Connected sum of k copies of the boundary of the (d+1)-simplex.

    Block j spans the consecutive window j..j+d+1; consecutive windows share
    the d-simplex j+1..j+d+1, which is removed.
    """
    if d < 1 or k < 1:
        raise EmptyInput("stacked_sphere needs d >= 1 and k >= 1")
    m = d + k + 1
    facets = set()
    for j in range(1, k + 1):
        window = range(j, j + d + 2)
        for face in combinations(window, d + 1):
            facets.add(face)
    for j in range(1, k):
        facets.discard(tuple(range(j + 1, j + d + 2)))
    return build(m, sorted(facets))


def _glue(K1, f1, K2, f2, matching, keep_shared):
    f1 = tuple(sorted(f1))
    f2 = tuple(sorted(f2))
    if f1 not in K1.facets or f2 not in K2.facets:
        raise DimensionMismatch("glued simplices must be facets of their complexes")
    if len(f1) != len(f2) or K1.dim != K2.dim or len(f1) != K1.dim + 1:
        raise DimensionMismatch("glued facets must be top-dimensional and of equal dimension")
    if matching is None:
        matching = dict(zip(f2, f1))
    matching = dict(matching)
    if sorted(matching[v] for v in f2 if v in matching) != list(f1) or any(v not in matching for v in f2):
        raise DimensionMismatch("matching must biject the vertices of f2 onto those of f1")
    if len(set(matching.values())) != len(matching):
        raise OverlapTooLarge("matching identifies two vertices of K2 with one vertex of K1")
    relabel = {}
    nxt = K1.m + 1
    for v in range(1, K2.m + 1):
        if v in matching:
            relabel[v] = matching[v]
        else:
            relabel[v] = nxt
            nxt += 1
    m = nxt - 1
    moved = [mask_of(relabel[v] for v in f) for f in K2.facets]
    shared = mask_of(f1)
    k2_verts = 0
    for g in moved:
        k2_verts |= g
    extra = k2_verts & K1.vertex_mask & ~shared
    if extra:
        raise OverlapTooLarge(f"K1 and K2 also share vertices {vertices_of(extra)}")
    masks = list(K1.facet_masks) + moved
    if not keep_shared:
        masks = [f for f in masks if f != shared]
    else:
        masks = list(dict.fromkeys(masks))
    return build(m, [vertices_of(f) for f in masks])


def connected_sum(K1: SimplicialComplex, f1: Sequence[int], K2: SimplicialComplex,
                  f2: Sequence[int], matching: Mapping[int, int] | None = None) -> SimplicialComplex:
    """K1 # K2 along facets f1 ~ f2.

    ``matching`` maps K2 labels to K1 labels and must contain a bijection
    f2 -> f1; the default matches both facets in increasing order.  Vertices of
    K2 outside the matching get fresh labels after K1's.
    """
    return _glue(K1, f1, K2, f2, matching, keep_shared=False)


def circ_union(K1: SimplicialComplex, f1: Sequence[int], K2: SimplicialComplex,
               f2: Sequence[int], matching: Mapping[int, int] | None = None) -> SimplicialComplex:
    """K1 o K2: the union glued along f1 ~ f2, keeping the shared facet."""
    return _glue(K1, f1, K2, f2, matching, keep_shared=True)


def random_complex(rng: random.Random, m: int, kind: str | None = None) -> SimplicialComplex:
    """A random connected complex on [m] for property suites.

    Several families are mixed so that neighborly and tight complexes occur
    with reasonable frequency.
    """
    kinds = ("facets", "neighborly", "skeleton", "flag")
    kind = kind or rng.choice(kinds)
    verts = list(range(1, m + 1))
    while True:
        if kind == "facets":
            masks = set()
            for _ in range(rng.randint(1, 2 * m)):
                size = rng.randint(1, min(m, 4))
                masks.add(mask_of(rng.sample(verts, size)))
        elif kind == "neighborly":
            masks = {mask_of(e) for e in combinations(verts, 2)}
            for _ in range(rng.randint(0, 2 * m) if m >= 3 else 0):
                masks.add(mask_of(rng.sample(verts, rng.randint(3, min(m, 4)))))
        elif kind == "skeleton":
            k = rng.randint(1, max(1, min(m - 1, 3)))
            masks = {mask_of(c) for c in combinations(verts, k + 1)}
            pool = list(combinations(verts, min(k + 2, m)))
            for c in rng.sample(pool, rng.randint(0, min(len(pool), 3))):
                masks.add(mask_of(c))
        else:
            edges = [e for e in combinations(verts, 2) if rng.random() < 0.6]
            adj = {mask_of(e) for e in edges}
            masks = set(adj)
            for tri in combinations(verts, 3):
                if all(mask_of(e) in adj for e in combinations(tri, 2)):
                    masks.add(mask_of(tri))
        cover = 0
        for f in masks:
            cover |= f
        for v in verts:
            if not cover >> (v - 1) & 1:
                masks.add(mask_of([v, rng.choice([u for u in verts if u != v])]) if m > 1 else 1)
        K = SimplicialComplex.from_masks(m, masks)
        if is_connected(K):
            return build(m, list(K.facets))


def random_neighborly(rng: random.Random, m: int, k: int) -> SimplicialComplex:
    """Random complex containing every (k+1)-subset of [m] as a face."""
    verts = list(range(1, m + 1))
    masks = {mask_of(c) for c in combinations(verts, k + 1)}
    bigger = list(combinations(verts, min(m, k + 2)))
    for c in rng.sample(bigger, rng.randint(0, min(len(bigger), m))):
        masks.add(mask_of(c))
    return build(m, [vertices_of(f) for f in masks])
