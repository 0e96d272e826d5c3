"""Brute-force cellular models of the (real) moment-angle complex.

Both models are assembled cell by cell straight from K, with no reference to
full subcomplexes, so they serve as independent checks of the ranks predicted
from the Hochster table.

Real model: a cell is a pair (J, eps) with J a face of K (possibly empty) and
eps a sign for every coordinate outside J; its dimension is |J|.

Complex model: a cell assigns to each coordinate one of v (0-cell), a (1-cell)
or b (2-cell) of the minimal CW structure on the disk, the b-set being a face
of K.  The boundary is the derivation d b = a with Koszul signs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .complex import SimplicialComplex, popcount, submasks, vertices_of
from .errors import TooManyVertices
from .linalg import Field, sparse_integer_rank

RZK_MAX_VERTICES = 14
ZK_MAX_VERTICES = 9


@dataclass
class CellChain:
    """Cells per degree and sparse integer boundaries d_k: C_k -> C_{k-1}."""

    cells: dict[int, list]
    boundaries: dict[int, sparse.csr_matrix]

    @property
    def top(self) -> int:
        return max(self.cells)

    def size(self, k: int) -> int:
        return len(self.cells.get(k, ()))

    def check(self):
        for k in range(1, self.top):
            prod = self.boundaries[k] @ self.boundaries[k + 1]
            if prod.count_nonzero():
                raise AssertionError(f"cellular boundary squares to nonzero in degree {k}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(c) for k, c in self.cells.items())

    def betti(self, field: Field) -> tuple[int, ...]:
        ranks = {k: sparse_integer_rank(d, field) if d.nnz else 0 for k, d in self.boundaries.items()}
        out = [self.size(k) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(self.top + 1)]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)


def _assemble(cells: dict[int, list], boundary_of) -> CellChain:
    index = {k: {c: i for i, c in enumerate(cs)} for k, cs in cells.items()}
    top = max(cells)
    bds = {}
    for k in range(1, top + 1):
        rows, cols, vals = [], [], []
        for j, c in enumerate(cells[k]):
            for face, coeff in boundary_of(c):
                rows.append(index[k - 1][face])
                cols.append(j)
                vals.append(coeff)
        bds[k] = sparse.csr_matrix(
            (np.array(vals, dtype=np.int64), (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
            shape=(len(cells[k - 1]), len(cells[k])),
        )
    chain = CellChain(cells, bds)
    chain.check()
    return chain


def _faces_with_empty(K: SimplicialComplex) -> list[int]:
    return [0] + sorted(K.face_masks, key=lambda f: (popcount(f), vertices_of(f)))


def _subsets_with_empty(mask: int) -> list[int]:
    return [0] + sorted(submasks(mask))


def rzk_cells(K: SimplicialComplex, max_vertices: int = RZK_MAX_VERTICES) -> CellChain:
    if K.m > max_vertices:
        raise TooManyVertices(f"cubical model needs m <= {max_vertices}, got {K.m}")
    full = (1 << K.m) - 1
    cells: dict[int, list] = {k: [] for k in range(K.dim + 2)}
    for J in _faces_with_empty(K):
        for plus in _subsets_with_empty(full & ~J):
            cells[popcount(J)].append((J, plus))
    cells = {k: c for k, c in cells.items() if c}

    def boundary(cell):
        J, plus = cell
        out = []
        for pos, j in enumerate(vertices_of(J)):
            bit = 1 << (j - 1)
            sign = -1 if pos % 2 else 1
            out.append(((J & ~bit, plus | bit), sign))
            out.append(((J & ~bit, plus), -sign))
        return out

    return _assemble(cells, boundary)


def zk_cells(K: SimplicialComplex, max_vertices: int = ZK_MAX_VERTICES) -> CellChain:
    if K.m > max_vertices:
        raise TooManyVertices(f"cell model needs m <= {max_vertices}, got {K.m}")
    full = (1 << K.m) - 1
    cells: dict[int, list] = {}
    for B in _faces_with_empty(K):
        for A in _subsets_with_empty(full & ~B):
            cells.setdefault(popcount(A) + 2 * popcount(B), []).append((A, B))
    top = max(cells)
    cells = {k: cells.get(k, []) for k in range(top + 1)}

    def boundary(cell):
        A, B = cell
        out = []
        for i in vertices_of(B):
            bit = 1 << (i - 1)
            # degree to the left of coordinate i; b's contribute evenly
            sign = -1 if popcount(A & (bit - 1)) % 2 else 1
            out.append(((A | bit, B & ~bit), sign))
        return out

    return _assemble(cells, boundary)


def rzk_betti_oracle(K: SimplicialComplex, field: Field, max_vertices: int = RZK_MAX_VERTICES) -> tuple[int, ...]:
    """Betti numbers of the real moment-angle complex from its cubical model."""
    return rzk_cells(K, max_vertices).betti(field)


def zk_betti_oracle(K: SimplicialComplex, field: Field, max_vertices: int = ZK_MAX_VERTICES) -> tuple[int, ...]:
    """Betti numbers of the moment-angle complex from its minimal cell model."""
    return zk_cells(K, max_vertices).betti(field)
