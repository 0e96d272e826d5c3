"""Bigraded Betti numbers, join products and weak Golodness.

The Koszul homology of the Stanley-Reisner ring splits over nonempty vertex
subsets I into the reduced cohomology of the full subcomplexes K_I.  Products
between the I and J summands vanish unless I and J are disjoint, in which case
they are induced by the inclusion K_{I+J} -> K_I * K_J sending a simplex to
its two halves.  Products are evaluated on homology: over a field the induced
map and its dual have equal rank.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable

import numpy as np

from .complex import (
    SimplicialComplex,
    _restrict,
    is_cone,
    join,
    mask_of,
    vertices_of,
)
from .errors import EmptySubset, LabelOutOfRange, NotDisjoint, PrerequisiteFailed, TooManyVertices
from .homology import ChainComplex, _degree_homology, check_chain_map
from .linalg import Field, FieldMatrix, hstack, rank

DEFAULT_MAX_VERTICES = 20


def subsets_in_order(m: int, min_size: int = 1):
    """Nonempty subsets of [m] by size, then lexicographically."""
    for size in range(min_size, m + 1):
        for combo in combinations(range(1, m + 1), size):
            yield combo


def _check_budget(K: SimplicialComplex, max_vertices: int):
    if K.m > max_vertices:
        raise TooManyVertices(f"m = {K.m} exceeds the enumeration cap {max_vertices}")
    if K.vertex_mask != (1 << K.m) - 1:
        raise PrerequisiteFailed("complex has ghost vertices; full-subcomplex analyses need all of [m]")


@dataclass
class HochsterTable:
    """Reduced Betti numbers of every full subcomplex K_I.

    ``rows[I]`` is the tuple (b~_0(K_I), ..., b~_dim(K_I)); homology and
    cohomology ranks agree over a field.
    """

    m: int
    field: Field
    rows: dict[tuple[int, ...], tuple[int, ...]]
    cones_skipped: int = 0

    def betti(self, I: Iterable[int], p: int) -> int:
        row = self.rows[tuple(sorted(I))]
        return row[p] if 0 <= p < len(row) else 0

    def nonzero_rows(self) -> list[tuple[tuple[int, ...], int, int]]:
        out = []
        for I in subsets_in_order(self.m):
            for p, b in enumerate(self.rows[I]):
                if b:
                    out.append((I, p, b))
        return out

    def by_size(self) -> dict[tuple[int, int], int]:
        """Aggregated ranks keyed by (|I|, p)."""
        agg: dict[tuple[int, int], int] = {}
        for I, p, b in self.nonzero_rows():
            agg[(len(I), p)] = agg.get((len(I), p), 0) + b
        return dict(sorted(agg.items()))

    def koszul_ranks(self) -> dict[int, int]:
        """Total rank of Koszul homology in degree i = sum over I of b~^{i-|I|-1}(K_I)."""
        out: dict[int, int] = {}
        for I, p, b in self.nonzero_rows():
            i = p + len(I) + 1
            out[i] = out.get(i, 0) + b
        return dict(sorted(out.items()))


def hochster_table(K: SimplicialComplex, field: Field, prune: bool = True,
                   max_vertices: int = DEFAULT_MAX_VERTICES) -> HochsterTable:
    _check_budget(K, max_vertices)
    key = ("hochster", field, prune)
    hit = K._cache.get(key)
    if hit is not None:
        return hit
    rows = {}
    skipped = 0
    for I in subsets_in_order(K.m):
        sub = _restrict(K, mask_of(I))
        if prune and is_cone(sub) is not None:
            rows[I] = (0,) * (sub.dim + 1)
            skipped += 1
            continue
        cc = ChainComplex.of(sub, reduced=True)
        rows[I] = tuple(cc.betti(k, field) for k in range(sub.dim + 1))
    table = HochsterTable(K.m, field, rows, skipped)
    K._cache[key] = table
    return table


# ------------------------------------------------------------------ products

def _shuffle_sign(sigma: Iterable[int], imask: int) -> int:
    """Sign of reordering sigma (increasing) into (sigma & I, sigma & J)."""
    inversions = 0
    seen_j = 0
    for v in sigma:
        if imask >> (v - 1) & 1:
            inversions += seen_j
        else:
            seen_j += 1
    return -1 if inversions % 2 else 1


@dataclass
class IotaMap:
    """The chain map K_{I+J} -> K_I * K_J, given simplex by simplex.

    Source simplices are in the local labels of K_{I+J}; target simplices in
    the join's labels, K_I's block first.
    """

    I: tuple[int, ...]
    J: tuple[int, ...]
    source: SimplicialComplex
    target: SimplicialComplex
    _to_target: dict = dc_field(repr=False, default_factory=dict)
    _imask: int = 0
    _verts: tuple = ()

    def __call__(self, s: tuple) -> dict:
        if not s:
            return {(): 1}
        orig = tuple(self._verts[v - 1] for v in s)
        img = tuple(sorted(self._to_target[v] for v in orig))
        return {img: _shuffle_sign(orig, self._imask)}


def _validate_pair(K: SimplicialComplex, I, J):
    I = tuple(sorted(set(I)))
    J = tuple(sorted(set(J)))
    if not I or not J:
        raise EmptySubset("product needs nonempty I and J")
    for v in I + J:
        if v < 1 or v > K.m:
            raise LabelOutOfRange(f"label {v} outside 1..{K.m}")
    if set(I) & set(J):
        raise NotDisjoint(f"{I} and {J} intersect")
    return I, J


def iota_chain_map(K: SimplicialComplex, I: Iterable[int], J: Iterable[int], check: bool = True) -> IotaMap:
    I, J = _validate_pair(K, I, J)
    imask, jmask = mask_of(I), mask_of(J)
    key = ("iota", imask, jmask)
    hit = K._cache.get(key)
    if hit is not None:
        return hit
    source = _restrict(K, imask | jmask)
    KI, KJ = _restrict(K, imask), _restrict(K, jmask)
    target = join(KI, KJ)
    to_target = {v: i + 1 for i, v in enumerate(I)}
    to_target.update({v: len(I) + i + 1 for i, v in enumerate(J)})
    iota = IotaMap(I, J, source, target, to_target, imask, tuple(sorted(I + J)))
    if check:
        check_chain_map(iota, ChainComplex.of(source, True), ChainComplex.of(target, True))
        K._cache[key] = iota
    return iota


def aligned_degrees(table: HochsterTable, I, J) -> list[int]:
    """Degrees n = p+q+1 where source and both factors all carry homology."""
    rI, rJ = table.rows[tuple(I)], table.rows[tuple(J)]
    rIJ = table.rows[tuple(sorted(I + J))]
    out = set()
    for p, a in enumerate(rI):
        for q, b in enumerate(rJ):
            n = p + q + 1
            if a and b and n < len(rIJ) and rIJ[n]:
                out.add(n)
    return sorted(out)


def _pushforward_rank(iota: IotaMap, n: int, field: Field) -> int:
    src = ChainComplex.of(iota.source, True)
    tgt = ChainComplex.of(iota.target, True)
    if src.size(n) == 0 or tgt.size(n) == 0:
        return 0
    Z = src.cycles(n, field)
    if Z.cols == 0:
        return 0
    push = np.zeros((tgt.size(n), src.size(n)), dtype=np.int64)
    for j, s in enumerate(src.faces[n]):
        for t, c in iota(s).items():
            push[tgt.index[n][t], j] = c
    image = FieldMatrix(field, push) @ Z
    if tgt.size(n + 1) == 0:
        return rank(image)
    B = tgt.boundary(n + 1, field)
    return rank(hstack(B, image)) - tgt.rank(n + 1, field)


def product_rank(K: SimplicialComplex, I: Iterable[int], J: Iterable[int], field: Field,
                 prune: bool = True, table: HochsterTable | None = None) -> dict[int, int]:
    """Rank, per homological degree n, of the map H~_n(K_{I+J}) -> H~_n(K_I * K_J).

    With ``prune`` the degree-alignment prefilter decides which degrees can be
    nonzero; skipped degrees are reported as absent (zero).
    """
    I, J = _validate_pair(K, I, J)
    if prune:
        table = table or hochster_table(K, field)
        degrees = aligned_degrees(table, I, J)
        if not degrees:
            return {}
    else:
        dim = _restrict(K, mask_of(I + J)).dim
        degrees = list(range(0, dim + 1))
    iota = iota_chain_map(K, I, J)
    return {n: _pushforward_rank(iota, n, field) for n in degrees}


def product_bidegree_ranks(K: SimplicialComplex, I: Iterable[int], J: Iterable[int],
                           field: Field) -> dict[tuple[int, int], int]:
    """Rank of the cohomology product H~^p(K_I) x H~^q(K_J) -> H~^{p+q+1}(K_{I+J}).

    Evaluated by pairing dual cocycle bases of K_I and K_J against the image of
    the cycles of K_{I+J}; this route never builds the join.
    """
    I, J = _validate_pair(K, I, J)
    imask, jmask = mask_of(I), mask_of(J)
    KI, KJ, KS = _restrict(K, imask), _restrict(K, jmask), _restrict(K, imask | jmask)
    ccI, ccJ, ccS = (ChainComplex.of(X, True) for X in (KI, KJ, KS))
    posI = {v: i + 1 for i, v in enumerate(I)}
    posJ = {v: i + 1 for i, v in enumerate(J)}
    S = tuple(sorted(I + J))
    out = {}
    for p in range(0, KI.dim + 1):
        hp = _degree_homology(ccI, p, field)
        if hp.dim == 0:
            continue
        alpha = _scatter(hp, ccI.size(p), field)
        for q in range(0, KJ.dim + 1):
            n = p + q + 1
            if n > KS.dim:
                continue
            hq = _degree_homology(ccJ, q, field)
            if hq.dim == 0:
                continue
            beta = _scatter(hq, ccJ.size(q), field)
            Z = ccS.cycles(n, field)
            if Z.cols == 0:
                out[(p, q)] = 0
                continue
            rows = []
            for i in range(alpha.rows):
                for j in range(beta.rows):
                    coeffs = np.zeros((1, ccS.size(n)), dtype=object)
                    coeffs[:] = 0
                    for idx, s in enumerate(ccS.faces[n]):
                        orig = tuple(S[v - 1] for v in s)
                        a = tuple(posI[v] for v in orig if imask >> (v - 1) & 1)
                        b = tuple(posJ[v] for v in orig if jmask >> (v - 1) & 1)
                        if len(a) != p + 1 or len(b) != q + 1:
                            continue
                        ea = alpha.entry(i, ccI.index[p][a])
                        eb = beta.entry(j, ccJ.index[q][b])
                        if ea and eb:
                            coeffs[0, idx] = _shuffle_sign(orig, imask) * ea * eb
                    rows.append(FieldMatrix(field, coeffs) @ Z)
            pairing = FieldMatrix(field, np.vstack([r.data.astype(object) for r in rows]))
            out[(p, q)] = rank(pairing)
    return out


def _scatter(h, size: int, field: Field) -> FieldMatrix:
    """Projector rows of a DegreeHomology as full-length cocycles."""
    full = np.zeros((h.dim, size), dtype=object)
    full[:] = 0
    for col, row in enumerate(h.pivot_rows):
        for i in range(h.dim):
            full[i, row] = h.projector.entry(i, col)
    return FieldMatrix(field, full)


@dataclass
class GolodWitness:
    I: tuple[int, ...]
    J: tuple[int, ...]
    degree: int
    bidegree: tuple[int, int]
    rank: int


@dataclass
class GolodCertificate:
    field: Field
    vanishing: bool
    witness: GolodWitness | None = None
    pairs_total: int = 0
    pairs_computed: int = 0
    pairs_prefiltered: int = 0

    @property
    def verdict(self) -> str:
        return "vanishing" if self.vanishing else "witness"


def disjoint_pairs(m: int):
    """Unordered disjoint pairs (I, J), I before J in size-then-lex order."""
    order = list(subsets_in_order(m))
    masks = [mask_of(s) for s in order]
    for a, I in enumerate(order):
        for b in range(a + 1, len(order)):
            if masks[a] & masks[b] == 0:
                yield I, order[b]


def is_weakly_golod(K: SimplicialComplex, field: Field, prune: bool = True,
                    max_vertices: int = DEFAULT_MAX_VERTICES) -> GolodCertificate:
    """Decide whether every product of disjoint summands vanishes.

    Overlapping pairs are never computed (their product is zero).  The first
    nonzero pair in enumeration order is returned as the witness.
    """
    _check_budget(K, max_vertices)
    table = hochster_table(K, field) if prune else None
    cert = GolodCertificate(field, True)
    for I, J in disjoint_pairs(K.m):
        cert.pairs_total += 1
        ranks = product_rank(K, I, J, field, prune=prune, table=table)
        if prune and not ranks:
            cert.pairs_prefiltered += 1
            continue
        cert.pairs_computed += 1
        hit = next(((n, r) for n, r in sorted(ranks.items()) if r), None)
        if hit is None:
            continue
        n, r = hit
        bi = product_bidegree_ranks(K, I, J, field)
        pq = next((pq for pq, rk in sorted(bi.items()) if rk and sum(pq) + 1 == n), (None, None))
        cert.vanishing = False
        cert.witness = GolodWitness(I, J, n, pq, r)
        return cert
    return cert


# ------------------------------------------------------------------- series

@dataclass
class PoincareSeries:
    coefficients: tuple[int, ...]
    role: str
    truncation: int

    def __getitem__(self, i):
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0


def tor_poincare_series(K: SimplicialComplex, field: Field, N: int) -> PoincareSeries:
    """1 + sum over I, p of b~^p(K_I) t^{p+|I|+1}, truncated at degree N."""
    if N < 1:
        raise ValueError("truncation degree must be >= 1")
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for i, r in hochster_table(K, field).koszul_ranks().items():
        if i <= N:
            coeffs[i] += r
    return PoincareSeries(tuple(coeffs), "tor-series", N)


def golod_bound_series(K: SimplicialComplex, field: Field, N: int) -> PoincareSeries:
    """(1+t^2)^m / (1 - t (P(Tor) - 1)) as a formal power series mod t^{N+1}."""
    tor = tor_poincare_series(K, field, N).coefficients
    shifted = [0] + [tor[i - 1] if i >= 2 else 0 for i in range(1, N + 1)]
    inv = [0] * (N + 1)
    inv[0] = 1
    for n in range(1, N + 1):
        inv[n] = sum(shifted[j] * inv[n - j] for j in range(1, n + 1))
    num = [0] * (N + 1)
    from math import comb
    for k in range(0, K.m + 1):
        if 2 * k <= N:
            num[2 * k] = comb(K.m, k)
    out = [sum(num[j] * inv[n - j] for j in range(n + 1)) for n in range(N + 1)]
    return PoincareSeries(tuple(out), "golod-bound", N)


def _trim(vals: list[int]) -> tuple[int, ...]:
    while len(vals) > 1 and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


def zk_betti(K: SimplicialComplex, field: Field) -> tuple[int, ...]:
    """Betti numbers of the moment-angle complex predicted by the Hochster table."""
    ranks = hochster_table(K, field).koszul_ranks()
    top = max(ranks, default=0)
    vals = [0] * (top + 1)
    vals[0] = 1
    for i, r in ranks.items():
        vals[i] += r
    return _trim(vals)


def rzk_betti_predicted(K: SimplicialComplex, field: Field) -> tuple[int, ...]:
    """Betti numbers of the real moment-angle complex: one |Sigma K_I| per I."""
    vals = [1] + [0] * (K.m)
    for I, p, b in hochster_table(K, field).nonzero_rows():
        vals[p + 1] += b
    return _trim(vals)
