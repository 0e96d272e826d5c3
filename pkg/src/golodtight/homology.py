"""Simplicial homology with field coefficients.

Simplices are oriented by increasing labels and
``d[v0..vk] = sum_i (-1)^i [v0..^vi..vk]``.  Reduced complexes carry the empty
simplex in degree -1 with d_0 the augmentation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np
from scipy import sparse

from .complex import SimplicialComplex, full_subcomplex
from .errors import EmptySubset, NotAChainMap, NotPseudomanifold
from .linalg import (
    Field,
    FieldMatrix,
    column_space_basis,
    hstack,
    inverse,
    kernel_basis,
    rank,
    rref,
    sparse_integer_rank,
)

Chain = dict  # simplex tuple -> integer coefficient

# dense elimination below this size, column reduction above
SPARSE_THRESHOLD = 64
# largest boundary (entries) kept dense for the d^2 = 0 check
DENSE_LIMIT = 4_000_000


def simplex_boundary(s: tuple) -> list[tuple[int, tuple]]:
    return [((-1) ** i, s[:i] + s[i + 1:]) for i in range(len(s))]


class ChainComplex:
    """Integer boundary matrices of a complex, ranked on demand over any field.

    ``faces[k]`` is the ordered basis of C_k for k >= 0 (and k = -1 when
    reduced).  The integer matrices are field independent, so one instance
    serves every field; ranks are cached per field.
    """

    def __init__(self, basis: Mapping[int, list[tuple]], reduced: bool = True, check: bool = True):
        self.reduced = reduced
        self.faces = dict(basis)
        if reduced:
            self.faces[-1] = [()]
        self.top = max((k for k, b in self.faces.items() if b), default=-1)
        self.index = {k: {s: i for i, s in enumerate(b)} for k, b in self.faces.items()}
        self._int = {}
        self._rank = {}
        self._cycles = {}
        if check:
            self.check()

    @classmethod
    def of(cls, K: SimplicialComplex, reduced: bool = True) -> "ChainComplex":
        key = ("chain", reduced)
        cc = K._cache.get(key)
        if cc is None:
            basis = {k: list(fs) for k, fs in enumerate(K.faces_by_dim)}
            cc = cls(basis, reduced=reduced)
            K._cache[key] = cc
        return cc

    @property
    def degrees(self):
        lo = -1 if self.reduced else 0
        return range(lo, self.top + 1)

    def size(self, k: int) -> int:
        return len(self.faces.get(k, ()))

    def _entries(self, k: int):
        src = self.faces.get(k, [])
        tgt_index = self.index.get(k - 1, {})
        rows, cols, vals = [], [], []
        if src and tgt_index and not (k == 0 and not self.reduced):
            for j, s in enumerate(src):
                for sign, t in simplex_boundary(s):
                    if t not in tgt_index:
                        raise ValueError(f"face {t} of {s} missing from the basis")
                    rows.append(tgt_index[t])
                    cols.append(j)
                    vals.append(sign)
        return (len(tgt_index), len(src)), rows, cols, vals

    def integer_boundary(self, k: int) -> np.ndarray:
        """d_k : C_k -> C_{k-1} as a dense integer matrix."""
        hit = self._int.get(k)
        if hit is not None:
            return hit
        shape, rows, cols, vals = self._entries(k)
        mat = np.zeros(shape, dtype=np.int64)
        mat[rows, cols] = vals
        self._int[k] = mat
        return mat

    def sparse_boundary(self, k: int) -> sparse.csr_matrix:
        shape, rows, cols, vals = self._entries(k)
        return sparse.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)), shape=shape)

    def boundary(self, k: int, field: Field) -> FieldMatrix:
        return FieldMatrix(field, self.integer_boundary(k))

    def check(self):
        for k in self.degrees:
            a, b = self.faces.get(k - 1, ()), self.faces.get(k + 1, ())
            if not a or not b:
                continue
            if len(a) * len(self.faces[k]) > DENSE_LIMIT or len(b) * len(self.faces[k]) > DENSE_LIMIT:
                bad = (self.sparse_boundary(k) @ self.sparse_boundary(k + 1)).count_nonzero()
            else:
                bad = np.count_nonzero(self.integer_boundary(k) @ self.integer_boundary(k + 1))
            if bad:
                raise AssertionError(f"boundary of boundary nonzero in degree {k}")

    def rank(self, k: int, field: Field) -> int:
        key = (k, field)
        if key not in self._rank:
            n_src, n_tgt = self.size(k), self.size(k - 1)
            if n_src == 0 or n_tgt == 0 or (k == 0 and not self.reduced):
                self._rank[key] = 0
            elif min(n_src, n_tgt) > SPARSE_THRESHOLD:
                self._rank[key] = sparse_integer_rank(self.sparse_boundary(k), field)
            else:
                self._rank[key] = rank(FieldMatrix(field, self.integer_boundary(k)))
        return self._rank[key]

    def betti(self, k: int, field: Field) -> int:
        return self.size(k) - self.rank(k, field) - self.rank(k + 1, field)

    def cycles(self, k: int, field: Field) -> FieldMatrix:
        key = (k, field)
        if key not in self._cycles:
            if self.size(k - 1) == 0 or (k == 0 and not self.reduced):
                self._cycles[key] = FieldMatrix.identity(field, self.size(k))
            else:
                self._cycles[key] = kernel_basis(self.boundary(k, field))
        return self._cycles[key]


def betti(K: SimplicialComplex, field: Field, reduced: bool = True) -> tuple[int, ...]:
    """Betti numbers in degrees 0..dim K."""
    cc = ChainComplex.of(K, reduced)
    return tuple(cc.betti(k, field) for k in range(0, K.dim + 1))


def chain_vector(cc: ChainComplex, k: int, chain: Mapping[tuple, int], field: Field) -> FieldMatrix:
    vec = np.zeros((cc.size(k), 1), dtype=object)
    vec[:] = 0
    for s, c in chain.items():
        vec[cc.index[k][s], 0] += c
    return FieldMatrix(field, vec)


@dataclass
class DegreeHomology:
    """Homology in one degree: representatives plus a coordinate projector.

    ``boundaries`` (b columns) and ``reps`` (h columns) together form a basis
    of the cycles.  ``pivot_rows`` select b + h rows of that basis forming an
    invertible block; ``projector`` is the last h rows of its inverse, so the
    class of a cycle z has coordinates ``projector @ z[pivot_rows]``.
    """

    degree: int
    reps: FieldMatrix
    boundaries: FieldMatrix
    pivot_rows: tuple[int, ...]
    projector: FieldMatrix

    @property
    def dim(self) -> int:
        return self.reps.cols

    def coordinates(self, cycles: FieldMatrix) -> FieldMatrix:
        if self.dim == 0:
            return FieldMatrix.zeros(cycles.field, 0, cycles.cols)
        return self.projector @ cycles.take_rows(self.pivot_rows)


@dataclass
class HomologySpace:
    field: Field
    chain: ChainComplex
    degrees: dict[int, DegreeHomology]

    def betti(self) -> dict[int, int]:
        return {k: h.dim for k, h in self.degrees.items()}

    def __getitem__(self, k) -> DegreeHomology:
        return self.degrees[k]


def _degree_homology(cc: ChainComplex, k: int, field: Field) -> DegreeHomology:
    n = cc.size(k)
    Z = cc.cycles(k, field)
    B, _ = column_space_basis(cc.boundary(k + 1, field)) if cc.size(k + 1) else (FieldMatrix.zeros(field, n, 0), ())
    b = B.cols
    if Z.cols == b:
        empty = FieldMatrix.zeros(field, n, 0)
        return DegreeHomology(k, empty, B, (), FieldMatrix.zeros(field, 0, 0))
    _, piv = rref(hstack(B, Z))
    chosen = [c - b for c in piv if c >= b]
    reps = Z.columns(chosen)
    basis = hstack(B, reps)
    _, rows = rref(basis.T)
    block = basis.take_rows(rows)
    inv = inverse(block)
    projector = inv.take_rows(range(b, b + reps.cols))
    return DegreeHomology(k, reps, B, tuple(rows), projector)


def homology_basis(K: SimplicialComplex, field: Field, reduced: bool = True) -> HomologySpace:
    cc = ChainComplex.of(K, reduced)
    return homology_of_chain(cc, field)


def homology_of_chain(cc: ChainComplex, field: Field) -> HomologySpace:
    degrees = {k: _degree_homology(cc, k, field) for k in cc.degrees if cc.size(k)}
    return HomologySpace(field, cc, degrees)


@dataclass
class InducedMap:
    source: HomologySpace
    target: HomologySpace
    matrices: dict[int, FieldMatrix]

    def ranks(self) -> dict[int, int]:
        return {k: rank(m) for k, m in self.matrices.items()}


def _push_cycles(f: Callable[[tuple], Mapping[tuple, int]], src: ChainComplex, tgt: ChainComplex,
                 k: int, cols: FieldMatrix) -> FieldMatrix:
    """Apply a chain map given simplex-wise to the columns of ``cols``."""
    field = cols.field
    rows = tgt.size(k)
    images = []
    for s in src.faces[k]:
        img = f(s)
        images.append([(tgt.index[k][t], c) for t, c in img.items()])
    mat = np.zeros((rows, src.size(k)), dtype=np.int64)
    for j, img in enumerate(images):
        for i, c in img:
            mat[i, j] += c
    return FieldMatrix(field, mat) @ cols


def _bd(s: tuple, reduced: bool):
    if not s or (len(s) == 1 and not reduced):
        return []
    return simplex_boundary(s)


def check_chain_map(f, src: ChainComplex, tgt: ChainComplex):
    """Raise NotAChainMap unless d(f(s)) == f(d s) for every simplex s."""
    if src.reduced != tgt.reduced:
        raise ValueError("source and target must both be reduced or both unreduced")
    for k in src.degrees:
        for s in src.faces.get(k, []):
            lhs: dict = {}
            for t, c in f(s).items():
                for sign, u in _bd(t, tgt.reduced):
                    lhs[u] = lhs.get(u, 0) + sign * c
            rhs: dict = {}
            for sign, u in _bd(s, src.reduced):
                for t, c in f(u).items():
                    rhs[t] = rhs.get(t, 0) + sign * c
            if {u: c for u, c in lhs.items() if c} != {u: c for u, c in rhs.items() if c}:
                raise NotAChainMap(f"chain map condition fails on {s}", witness=s)


def chain_map_induced(f: Callable[[tuple], Mapping[tuple, int]], source: SimplicialComplex | ChainComplex,
                      target: SimplicialComplex | ChainComplex, field: Field,
                      reduced: bool = True) -> InducedMap:
    """Induced map on homology of a chain map given on simplices."""
    src = source if isinstance(source, ChainComplex) else ChainComplex.of(source, reduced)
    tgt = target if isinstance(target, ChainComplex) else ChainComplex.of(target, reduced)
    check_chain_map(f, src, tgt)
    hs = homology_of_chain(src, field)
    ht = homology_of_chain(tgt, field)
    mats = {}
    for k, h in hs.degrees.items():
        if h.dim == 0:
            continue
        if k not in ht.degrees or ht[k].dim == 0:
            mats[k] = FieldMatrix.zeros(field, 0, h.dim)
            continue
        pushed = _push_cycles(f, src, tgt, k, h.reps)
        mats[k] = ht[k].coordinates(pushed)
    return InducedMap(hs, ht, mats)


def inclusion_chain_map(sub: SimplicialComplex) -> Callable[[tuple], dict]:
    """Chain map of K_I -> K for a complex produced by full_subcomplex."""
    return lambda s: {sub.original(s): 1}


def induced_inclusion_map(K: SimplicialComplex, I: Iterable[int], field: Field) -> InducedMap:
    """Map on unreduced homology induced by K_I -> K."""
    I = list(I)
    if not I:
        raise EmptySubset("empty vertex subset")
    sub = full_subcomplex(K, I)
    return chain_map_induced(inclusion_chain_map(sub), sub, K, field, reduced=False)


def is_injective_inclusion(K: SimplicialComplex, I: Iterable[int], field: Field) -> bool:
    im = induced_inclusion_map(K, I, field)
    return all(rank(m) == m.cols for m in im.matrices.values())


def fundamental_class(M: SimplicialComplex, field: Field) -> FieldMatrix | None:
    """Top-degree cycle generating H_d(M), normalized to a leading 1."""
    cc = ChainComplex.of(M, reduced=False)
    d = M.dim
    Z = cc.cycles(d, field)
    if Z.cols == 0:
        return None
    if Z.cols > 1:
        raise NotPseudomanifold(f"top homology has rank {Z.cols} > 1")
    lead = next(Z.entry(i, 0) for i in range(Z.rows) if Z.entry(i, 0) != 0)
    scale = FieldMatrix(field, [[field.scalar(1 / lead if field.is_rational else pow(lead, -1, field.p))]])
    return Z @ scale


def is_orientable_over(M: SimplicialComplex, field: Field) -> bool:
    return fundamental_class(M, field) is not None
