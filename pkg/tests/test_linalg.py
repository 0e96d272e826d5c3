from fractions import Fraction
import random

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings, strategies as st

from golodtight.generators import boundary_simplex, cycle
from golodtight.homology import ChainComplex
from golodtight.linalg import (
    GF2,
    QQ,
    Field,
    FieldMatrix,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
    sparse_integer_rank,
)

FIELDS = [QQ, GF2, Field(3), Field(10007)]

int_matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_field_parsing():
    assert Field.parse("q") == QQ
    assert Field.parse("2") == GF2
    assert Field.parse("F5") == Field(5)
    assert QQ.name == "Q" and Field(3).name == "F3"
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(2 ** 31 + 11)


def test_rank_examples():
    assert rank(FieldMatrix.identity(GF2, 2)) == 2
    assert rank(FieldMatrix(GF2, [[2]])) == 0
    d1 = ChainComplex.of(cycle(4), reduced=False).boundary(1, QQ)
    assert d1.shape == (4, 4)
    assert rank(d1) == 3


def test_kernel_examples():
    K = kernel_basis(FieldMatrix.zeros(QQ, 2, 3))
    assert K == FieldMatrix.identity(QQ, 3)
    assert kernel_basis(FieldMatrix.identity(QQ, 3)).cols == 0
    d2 = ChainComplex.of(boundary_simplex(3)).boundary(2, QQ)
    assert d2.shape == (6, 4)
    assert kernel_basis(d2).cols == 1


def test_rational_entries_stay_exact():
    A = FieldMatrix(QQ, [[Fraction(1, 3), Fraction(2, 3)], [1, 2]])
    assert rank(A) == 1
    k = kernel_basis(A)
    assert (A @ k).is_zero()
    assert k.entry(0, 0) == Fraction(-2)


def test_inverse_and_solve():
    A = FieldMatrix(QQ, [[2, 1], [1, 1]])
    assert A @ inverse(A) == FieldMatrix.identity(QQ, 2)
    X = solve(A, FieldMatrix(QQ, [[3], [2]]))
    assert X == FieldMatrix(QQ, [[1], [1]])
    assert solve(FieldMatrix(QQ, [[1, 1], [1, 1]]), FieldMatrix(QQ, [[1], [2]])) is None
    with pytest.raises(ValueError):
        inverse(FieldMatrix(QQ, [[1, 1], [1, 1]]))
    B = FieldMatrix(Field(7), [[3, 1], [0, 5]])
    assert B @ inverse(B) == FieldMatrix.identity(Field(7), 2)


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        FieldMatrix.identity(QQ, 2) @ FieldMatrix.identity(GF2, 2)


@pytest.mark.parametrize("field", FIELDS)
@settings(max_examples=60, deadline=None)
@given(rows=int_matrices)
def test_rank_properties(field, rows):
    A = FieldMatrix(field, rows)
    r = rank(A)
    assert r == rank(A.T)
    K = kernel_basis(A)
    assert K.cols == A.cols - r
    assert (A @ K).is_zero()
    if K.cols:
        assert rank(K) == K.cols
    R, piv = rref(A)
    assert len(piv) == r
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    assert sparse_integer_rank(sp.csr_matrix(np.array(rows, dtype=np.int64)), field) == r


def _unimodular(rng, n):
    """Random product of integer elementary matrices (determinant 1)."""
    U = np.eye(n, dtype=object)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            U[i] = U[i] + rng.randint(-2, 2) * U[j]
    return U


@pytest.mark.parametrize("seed", range(25))
def test_rational_agrees_with_primes_on_known_elementary_divisors(seed):
    # A = U diag(d) V with U, V unimodular, so rank over F_p counts the d_i not divisible by p
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    divisors = [rng.choice([0, 1, 1, 2, 3, 6, 10007]) for _ in range(n)]
    A = _unimodular(rng, n).dot(np.diag(np.array(divisors, dtype=object))).dot(_unimodular(rng, n))
    A = A.astype(np.int64)
    assert rank(FieldMatrix(QQ, A)) == sum(1 for d in divisors if d)
    for p in (2, 3, 10007):
        assert rank(FieldMatrix(Field(p), A)) == sum(1 for d in divisors if d % p)
