"""Exact dense linear algebra over the rationals and prime fields.

Prime fields are handled by vectorized Gauss-Jordan elimination on int64
residues (p < 2**31 keeps every product below 2**62).  Rational matrices are
reduced modulo a large prime, the reduced row echelon form is lifted by
rational reconstruction, and the lift is accepted only after an exact integer
check that its kernel annihilates the input.  Because rank mod p never exceeds
the rational rank, a verified kernel of the right size pins the rank exactly.
Anything that fails the check falls back to plain Fraction elimination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

_CERT_PRIMES = (2147483647, 2147483629, 2147483587)
_INT64_SAFE = 1 << 62


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if self.p >= 1 << 31 or not _is_prime(self.p):
                raise ValueError(f"{self.p} is not a prime below 2**31")

    @classmethod
    def rational(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(int(p))

    @classmethod
    def parse(cls, value) -> "Field":
        if isinstance(value, Field):
            return value
        text = str(value).strip().lower()
        if text in ("q", "qq", "rational", "rationals", "0"):
            return cls(0)
        text = text.removeprefix("f").removeprefix("_")
        return cls(int(text))

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __str__(self):
        return self.name

    def scalar(self, x):
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p


QQ = Field(0)
GF2 = Field(2)


def _normalize(field: Field, data) -> np.ndarray:
    arr = np.asarray(data)
    if arr.ndim != 2:
        if arr.size:
            raise ValueError("FieldMatrix data must be two-dimensional")
        arr = np.zeros((0, 0), dtype=np.int64)
    if field.p:
        if arr.dtype == object:
            flat = [field.scalar(x) for x in arr.ravel()]
            return np.array(flat, dtype=np.int64).reshape(arr.shape)
        return np.mod(arr.astype(np.int64, copy=False), field.p)
    if arr.dtype == object:
        flat = [Fraction(x) for x in arr.ravel()]
        if all(x.denominator == 1 and abs(x.numerator) < _INT64_SAFE for x in flat):
            return np.array([x.numerator for x in flat], dtype=np.int64).reshape(arr.shape)
        out = np.empty(arr.shape, dtype=object)
        out.ravel()[:] = flat
        return out
    if arr.dtype.kind == "f":
        raise TypeError("floating point entries are not exact")
    return arr.astype(np.int64, copy=False)


class FieldMatrix:
    """Dense matrix with exact entries in ``field``.

    Storage is an int64 array (prime fields, or integral rationals) or an
    object array of Fractions.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data):
        self.field = field
        self.data = _normalize(field, data)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def shape(self):
        return self.data.shape

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    def entry(self, i, j):
        x = self.data[i, j]
        return Fraction(x) if self.field.is_rational else int(x)

    def tolist(self):
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def column(self, j):
        return FieldMatrix(self.field, self.data[:, j:j + 1])

    def column_entries(self, j) -> list:
        return [self.entry(i, j) for i in range(self.rows)]

    def columns(self, idx):
        return FieldMatrix(self.field, self.data[:, list(idx)])

    def take_rows(self, idx):
        return FieldMatrix(self.field, self.data[list(idx), :])

    @property
    def T(self):
        return FieldMatrix(self.field, self.data.T.copy())

    def is_zero(self) -> bool:
        if self.data.dtype == object:
            return all(x == 0 for x in self.data.ravel())
        return not np.any(self.data)

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        _same_field(self, other)
        return FieldMatrix(self.field, _matmul(self.field, self.data, other.data))

    def __add__(self, other):
        _same_field(self, other)
        return FieldMatrix(self.field, _obj_or_int(self.data) + _obj_or_int(other.data))

    def __sub__(self, other):
        _same_field(self, other)
        return FieldMatrix(self.field, _obj_or_int(self.data) - _obj_or_int(other.data))

    def __neg__(self):
        return FieldMatrix(self.field, -_obj_or_int(self.data))

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"FieldMatrix({self.field.name}, {self.tolist()})"


def _same_field(a: FieldMatrix, b: FieldMatrix):
    if a.field != b.field:
        raise ValueError(f"mixed-field arithmetic: {a.field} vs {b.field}")


def _obj_or_int(a: np.ndarray) -> np.ndarray:
    return a.astype(object) if a.dtype != object and np.abs(a).max(initial=0) > 1 << 30 else a


def _matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if field.p:
        if (field.p - 1) ** 2 * a.shape[1] < _INT64_SAFE:
            return (a @ b) % field.p
        prod = np.dot(a.astype(object), b.astype(object)) % field.p
        return prod.astype(np.int64)
    if a.dtype != object and b.dtype != object:
        bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * a.shape[1]
        if bound < _INT64_SAFE:
            return a @ b
    return np.dot(a.astype(object), b.astype(object))


def hstack(*mats: FieldMatrix) -> FieldMatrix:
    field = mats[0].field
    for m in mats[1:]:
        _same_field(mats[0], m)
    datas = [m.data for m in mats]
    if any(d.dtype == object for d in datas):
        datas = [d.astype(object) for d in datas]
    return FieldMatrix(field, np.hstack(datas))


# ---------------------------------------------------------------- mod p core

def _rref_mod(a: np.ndarray, p: int, full: bool = True):
    """Reduced (or plain, if not ``full``) row echelon form of residues mod p."""
    if p == 2:
        return _rref_mod2(a, full)
    a = a.copy()
    rows, cols = a.shape
    r = 0
    piv = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c] if full else a[r + 1:, c]
        targets = np.flatnonzero(col)
        if not full:
            targets = targets + r + 1
        else:
            targets = targets[targets != r]
        if targets.size:
            factors = a[targets, c][:, None]
            a[targets, c:] = (a[targets, c:] - factors * a[r, c:]) % p
        piv.append(c)
        r += 1
    return a, piv


def _rref_mod2(a: np.ndarray, full: bool = True):
    a = (a & 1).astype(np.uint8)
    rows, cols = a.shape
    r = 0
    piv = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        if full:
            targets = np.flatnonzero(a[:, c])
            targets = targets[targets != r]
        else:
            targets = np.flatnonzero(a[r + 1:, c]) + r + 1
        if targets.size:
            a[targets, c:] ^= a[r, c:]
        piv.append(c)
        r += 1
    return a.astype(np.int64), piv


# -------------------------------------------------------------- rational core

def _integer_rows(a: np.ndarray) -> np.ndarray:
    """Scale each row of a rational matrix to integers (same row space)."""
    if a.dtype != object:
        return a
    out = np.empty(a.shape, dtype=object)
    for i in range(a.shape[0]):
        row = [Fraction(x) for x in a[i]]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out[i] = [x.numerator * (den // x.denominator) for x in row]
    return out


def _mod_reduce(a: np.ndarray, p: int) -> np.ndarray:
    if a.dtype == object:
        return np.array([int(x) % p for x in a.ravel()], dtype=np.int64).reshape(a.shape)
    return np.mod(a, p)


def _reconstruct_scalar(x: int, p: int, bound: int):
    r0, r1 = p, x
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _reconstruct(block: np.ndarray, p: int):
    """Lift residues to rationals; returns int64 or Fraction array, or None."""
    bound = isqrt(p // 2)
    small = block <= bound
    neg = block >= p - bound
    direct = np.where(neg, block - p, block)
    if np.all(small | neg):
        return direct.astype(np.int64)
    out = direct.astype(object)
    for idx in zip(*np.nonzero(~(small | neg))):
        frac = _reconstruct_scalar(int(block[idx]), p, bound)
        if frac is None:
            return None
        out[idx] = frac
    return np.array([Fraction(x) for x in out.ravel()], dtype=object).reshape(out.shape)


def _verify_kernel(a_int: np.ndarray, r_free: np.ndarray, piv, free) -> bool:
    """Exact check that A[:, piv] @ R_free == A[:, free]."""
    if not free:
        return True
    lhs_a = a_int[:, piv]
    rhs = a_int[:, free]
    if r_free.dtype == object:
        dens = []
        for j in range(r_free.shape[1]):
            den = 1
            for x in r_free[:, j]:
                d = Fraction(x).denominator
                den = den * d // gcd(den, d)
            dens.append(den)
        scaled = np.empty(r_free.shape, dtype=object)
        for j, den in enumerate(dens):
            scaled[:, j] = [int(Fraction(x) * den) for x in r_free[:, j]]
        rhs = rhs.astype(object) * np.array(dens, dtype=object)[None, :]
        r_free = scaled
    if lhs_a.dtype != object and r_free.dtype != object and rhs.dtype != object:
        bound = int(np.abs(lhs_a).max(initial=0)) * int(np.abs(r_free).max(initial=0)) * max(1, len(piv))
        if bound < _INT64_SAFE:
            return bool(np.array_equal(lhs_a @ r_free, rhs))
    prod = np.dot(lhs_a.astype(object), r_free.astype(object)) if len(piv) else np.zeros(rhs.shape, dtype=object)
    return bool(np.all(prod == rhs.astype(object)))


def _rref_fraction(a: np.ndarray):
    rows, cols = a.shape
    m = [[Fraction(x) for x in a[i]] for i in range(rows)]
    r = 0
    piv = []
    for c in range(cols):
        if r == rows:
            break
        i = next((k for k in range(r, rows) if m[k][c] != 0), None)
        if i is None:
            continue
        m[r], m[i] = m[i], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(rows):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        piv.append(c)
        r += 1
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        out[i] = m[i]
    return out, piv


def _rref_rational(a: np.ndarray):
    rows, cols = a.shape
    a_int = _integer_rows(a)
    for p in _CERT_PRIMES:
        red, piv = _rref_mod(_mod_reduce(a_int, p), p, full=True)
        r = len(piv)
        free = [c for c in range(cols) if c not in set(piv)]
        r_free = _reconstruct(red[:r][:, free], p) if r else np.zeros((0, len(free)), dtype=np.int64)
        if r_free is None:
            continue
        if not _verify_kernel(a_int, r_free, piv, free):
            continue
        if r_free.dtype == object:
            out = np.zeros((rows, cols), dtype=object)
            out[:] = Fraction(0)
        else:
            out = np.zeros((rows, cols), dtype=np.int64)
        for i, c in enumerate(piv):
            out[i, c] = 1
        if free and r:
            out[:r, free] = r_free
        return out, piv
    return _rref_fraction(a)


# ------------------------------------------------------------------- public

def rref(A: FieldMatrix) -> tuple[FieldMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (unique over a field)."""
    if A.field.p:
        red, piv = _rref_mod(A.data, A.field.p, full=True)
    else:
        red, piv = _rref_rational(A.data)
    return FieldMatrix(A.field, red), tuple(piv)


SMALL_RANK_ENTRIES = 4096


def _small_rank(a: np.ndarray, p: int) -> int:
    """Rank by plain Python elimination; faster than numpy on tiny inputs."""
    if p == 2:
        basis: dict[int, int] = {}
        for row in a.tolist():
            bits = 0
            for j, x in enumerate(row):
                if x & 1:
                    bits |= 1 << j
            while bits:
                top = bits.bit_length() - 1
                if top not in basis:
                    basis[top] = bits
                    break
                bits ^= basis[top]
        return len(basis)
    rows = [[x % p for x in row] if p else list(row) for row in a.tolist()]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        i = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        pr = rows[r]
        if p:
            inv = pow(pr[c], -1, p)
            for k in range(r + 1, len(rows)):
                f = rows[k][c] * inv % p
                if f:
                    rows[k] = [(x - f * y) % p for x, y in zip(rows[k], pr)]
        else:
            a0 = pr[c]
            for k in range(r + 1, len(rows)):
                b0 = rows[k][c]
                if b0:
                    g = gcd(a0, b0)
                    new = [(a0 // g) * x - (b0 // g) * y for x, y in zip(rows[k], pr)]
                    g = 0
                    for x in new:
                        g = gcd(g, x)
                    rows[k] = [x // g for x in new] if g > 1 else new
        r += 1
        if r == len(rows):
            break
    return r


def rank(A: FieldMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    if A.rows * A.cols <= SMALL_RANK_ENTRIES:
        data = A.data if A.field.p or A.data.dtype != object else _integer_rows(A.data)
        return _small_rank(data, A.field.p)
    if A.field.p:
        data = A.data
        if data.shape[0] > data.shape[1]:
            data = data.T
        return len(_rref_mod(data, A.field.p, full=False)[1])
    data = A.data
    if data.shape[1] > data.shape[0]:
        data = data.T
    return len(_rref_rational(data)[1])


def kernel_basis(A: FieldMatrix) -> FieldMatrix:
    """Columns spanning ker A, one per free column of the RREF."""
    cols = A.cols
    if A.rows == 0:
        return FieldMatrix.identity(A.field, cols)
    R, piv = rref(A)
    free = [c for c in range(cols) if c not in set(piv)]
    dtype = object if R.data.dtype == object else np.int64
    K = np.zeros((cols, len(free)), dtype=dtype)
    if dtype == object:
        K[:] = Fraction(0)
    for j, f in enumerate(free):
        K[f, j] = 1
        for i, c in enumerate(piv):
            K[c, j] = -R.data[i, f]
    return FieldMatrix(A.field, K)


def column_space_basis(A: FieldMatrix) -> tuple[FieldMatrix, tuple[int, ...]]:
    """Pivot columns of A (a basis of its column space) and their indices."""
    if A.rows == 0 or A.cols == 0:
        return FieldMatrix.zeros(A.field, A.rows, 0), ()
    _, piv = rref(A)
    return A.columns(piv), piv


def inverse(A: FieldMatrix) -> FieldMatrix:
    n = A.rows
    if A.cols != n:
        raise ValueError("inverse of a non-square matrix")
    aug = hstack(A, FieldMatrix.identity(A.field, n))
    R, piv = rref(aug)
    if n and (len(piv) < n or piv[n - 1] != n - 1):
        raise ValueError("matrix is singular")
    return FieldMatrix(A.field, R.data[:, n:])


def solve(A: FieldMatrix, B: FieldMatrix) -> FieldMatrix | None:
    """One solution X of A X = B (free variables zero), or None if inconsistent."""
    aug = hstack(A, B)
    R, piv = rref(aug)
    n = A.cols
    if any(c >= n for c in piv):
        return None
    dtype = object if R.data.dtype == object else np.int64
    X = np.zeros((n, B.cols), dtype=dtype)
    if dtype == object:
        X[:] = Fraction(0)
    for i, c in enumerate(piv):
        X[c, :] = R.data[i, n:]
    return FieldMatrix(A.field, X)


def sparse_integer_rank(mat, field: Field) -> int:
    """Rank of an integer scipy.sparse matrix by column reduction.

    Columns are kept as dicts and reduced against earlier columns sharing the
    same lowest nonzero row, the standard reduction for boundary matrices.
    Over Q the columns stay integral (cross-multiplied and divided by their
    content), so the result is exact in every characteristic.
    """
    csc = mat.tocsc()
    p = field.p
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for j in range(csc.shape[1]):
        lo, hi = csc.indptr[j], csc.indptr[j + 1]
        col = {}
        for i, v in zip(csc.indices[lo:hi].tolist(), csc.data[lo:hi].tolist()):
            v = v % p if p else v
            if v:
                col[i] = v
        while col:
            low = max(col)
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = col
                r += 1
                break
            if p:
                f = col[low] * pow(piv[low], -1, p) % p
                for i, v in piv.items():
                    nv = (col.get(i, 0) - f * v) % p
                    if nv:
                        col[i] = nv
                    else:
                        col.pop(i, None)
            else:
                a, b = piv[low], col[low]
                g = gcd(a, b)
                a, b = a // g, b // g
                new = {}
                for i in col.keys() | piv.keys():
                    nv = a * col.get(i, 0) - b * piv.get(i, 0)
                    if nv:
                        new[i] = nv
                if new:
                    g = 0
                    for v in new.values():
                        g = gcd(g, v)
                    if g > 1:
                        new = {i: v // g for i, v in new.items()}
                col = new
    return r
