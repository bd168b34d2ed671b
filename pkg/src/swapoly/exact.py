"""Exact rational matrices and operators on tensor powers of F^d.

Scalars are Python ``int`` / :class:`fractions.Fraction`; matrices wrap numpy
object arrays so every entry stays an exact Python number.

Tensor index convention (shared by every module): the basis vector
``e_{i1} (x) ... (x) e_{in}`` has flat index ``sum_k i_k * d**(n-k)`` with zero
based ``i_k``, i.e. the first tensor factor is the most significant digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class DimensionError(ValueError):
    pass


class DegenerateDimension(ValueError):
    """Raised by :func:`decompose_sigma2` when d=1 and Id equals the swap."""


def as_scalar(v) -> Fraction:
    """Normalise an exact number to a reduced Fraction."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"not an exact scalar: {v!r}")


def _normalize(v):
    # Fractions with unit denominator collapse to int; keeps arithmetic fast.
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (int,)):
        return v
    if isinstance(v, str):
        return _normalize(Fraction(v))
    raise TypeError(f"not an exact scalar: {v!r}")


def fmt_scalar(v) -> str:
    v = as_scalar(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def object_array(rows: Iterable[Iterable]) -> np.ndarray:
    data = [[_normalize(v) for v in row] for row in rows]
    arr = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        for j, v in enumerate(row):
            arr[i, j] = v
    return arr


class ExactMatrix:
    """Dense matrix of exact rationals.  Treat instances as immutable."""

    __slots__ = ("a",)

    def __init__(self, data):
        if isinstance(data, ExactMatrix):
            arr = data.a
        elif isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
            arr = data
        else:
            arr = object_array(data)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise DimensionError(f"bad matrix shape {arr.shape}")
        self.a = arr

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        arr = np.empty((rows, cols), dtype=object)
        arr.fill(0)
        return cls(arr)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        m = cls.zeros(n)
        for i in range(n):
            m.a[i, i] = 1
        return m

    @classmethod
    def unit(cls, d: int, i: int, j: int) -> "ExactMatrix":
        """Matrix unit e_{ij} (zero based)."""
        m = cls.zeros(d)
        m.a[i, j] = 1
        return m

    # shape ----------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> Fraction:
        return as_scalar(self.a[i, j])

    def entries(self) -> list[Fraction]:
        """Row-major list of entries."""
        return [as_scalar(v) for v in self.a.flat]

    # arithmetic -----------------------------------------------------------
    def _check_same(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        other = _coerce(other)
        self._check_same(other)
        return ExactMatrix(self.a + other.a)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        other = _coerce(other)
        self._check_same(other)
        return ExactMatrix(self.a - other.a)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.a)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        other = _coerce(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return ExactMatrix(self.a.dot(other.a))

    def scale(self, c) -> "ExactMatrix":
        c = _normalize(c)
        return ExactMatrix(self.a * c)

    def __mul__(self, c) -> "ExactMatrix":
        if isinstance(c, ExactMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.a.T.copy())

    T = property(transpose)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.shape, tuple(as_scalar(v) for v in self.a.flat)))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.a.flat)

    def scalar_value(self):
        """Return c if the matrix equals c*Id, else None."""
        if not self.is_square():
            return None
        c = self.a[0, 0]
        for i in range(self.rows):
            for j in range(self.cols):
                if self.a[i, j] != (c if i == j else 0):
                    return None
        return as_scalar(c)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt_scalar(v) for v in row) for row in self.a)
        return f"ExactMatrix[{body}]"

    # linear algebra ---------------------------------------------------------
    def trace(self) -> Fraction:
        if not self.is_square():
            raise DimensionError("trace of a non-square matrix")
        return as_scalar(sum(self.a[i, i] for i in range(self.rows)))

    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        return bareiss_det(self.a)

    def rank(self) -> int:
        return row_echelon(self.a)[1]

    def nullity(self) -> int:
        return self.cols - self.rank()

    def adjugate(self) -> "ExactMatrix":
        if not self.is_square():
            raise DimensionError("adjugate of a non-square matrix")
        n = self.rows
        if n == 1:
            return ExactMatrix([[1]])
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                minor = np.delete(np.delete(self.a, j, axis=0), i, axis=1)
                out[i, j] = _normalize((-1) ** (i + j) * bareiss_det(minor))
        return ExactMatrix(out)

    def solve(self, b: "ExactMatrix") -> "ExactMatrix | None":
        """Solve self @ X = b; ``None`` when the square system is singular."""
        b = _coerce(b)
        if not self.is_square():
            raise DimensionError("solve needs a square system")
        if b.rows != self.rows:
            raise DimensionError("right-hand side has wrong height")
        return _solve(self.a, b.a)

    def inverse(self) -> "ExactMatrix | None":
        return self.solve(ExactMatrix.identity(self.rows))


def _coerce(m) -> ExactMatrix:
    if isinstance(m, ExactMatrix):
        return m
    return ExactMatrix(m)


def bareiss_det(a: np.ndarray) -> Fraction:
    """Fraction-free determinant (Bareiss); denominators are cleared first."""
    n = a.shape[0]
    if n == 0:
        return Fraction(1)
    lcm = 1
    for v in a.flat:
        if isinstance(v, Fraction):
            lcm = math.lcm(lcm, v.denominator)
    m = [[int(v * lcm) for v in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - f * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return Fraction(sign * m[n - 1][n - 1], lcm**n)


def row_echelon(a: np.ndarray) -> tuple[list[list[Fraction]], int]:
    """Exact reduced row echelon form; returns (rows, rank)."""
    m = [[as_scalar(v) for v in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return m, r


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(map(int, row)) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                row = m[i]
                new = [row[j] * p[c] - f * p[j] for j in range(ncols)]
                g = math.gcd(*new)
                m[i] = [v // g for v in new] if g > 1 else new
        r += 1
    return r


def _solve(a: np.ndarray, b: np.ndarray) -> ExactMatrix | None:
    n = a.shape[0]
    aug = np.concatenate([a, b], axis=1)
    rref, rank = row_echelon(aug)
    if rank < n or any(rref[i][i] != 1 for i in range(n)):
        return None
    return ExactMatrix([row[n:] for row in rref[:n]])


# ---------------------------------------------------------------------------
# tensor operators


@dataclass(frozen=True, eq=False)
class TensorOperator:
    """An element of M_d^{(x)n} stored as a d^n x d^n exact matrix."""

    d: int
    n: int
    mat: ExactMatrix

    def __post_init__(self):
        size = self.d**self.n
        if self.mat.shape != (size, size):
            raise DimensionError(
                f"operator of order {self.n} over d={self.d} needs {size}x{size}, "
                f"got {self.mat.shape}"
            )

    def _compat(self, other: "TensorOperator"):
        if (self.d, self.n) != (other.d, other.n):
            raise DimensionError("tensor operators of different shape")

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        self._compat(other)
        return TensorOperator(self.d, self.n, self.mat + other.mat)

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        self._compat(other)
        return TensorOperator(self.d, self.n, self.mat - other.mat)

    def __neg__(self) -> "TensorOperator":
        return TensorOperator(self.d, self.n, -self.mat)

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        self._compat(other)
        return TensorOperator(self.d, self.n, self.mat @ other.mat)

    def scale(self, c) -> "TensorOperator":
        return TensorOperator(self.d, self.n, self.mat.scale(c))

    __rmul__ = scale

    def __mul__(self, c):
        if isinstance(c, TensorOperator):
            return self @ c
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return (self.d, self.n) == (other.d, other.n) and self.mat == other.mat

    __hash__ = None

    def trace(self) -> Fraction:
        return self.mat.trace()

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    @classmethod
    def identity(cls, d: int, n: int) -> "TensorOperator":
        return cls(d, n, ExactMatrix.identity(d**n))

    @classmethod
    def zero(cls, d: int, n: int) -> "TensorOperator":
        return cls(d, n, ExactMatrix.zeros(d**n))


def kron(*factors) -> TensorOperator:
    """Kronecker product of square matrices/operators over one dimension d."""
    if not factors:
        raise DimensionError("kron of nothing")
    d = None
    n = 0
    arr = None
    for f in factors:
        if isinstance(f, TensorOperator):
            fd, fn, fa = f.d, f.n, f.mat.a
        else:
            m = _coerce(f)
            if not m.is_square():
                raise DimensionError("kron factors must be square")
            fd, fn, fa = m.rows, 1, m.a
        if d is None:
            d = fd
        elif fd != d:
            raise DimensionError("kron factors over different dimensions")
        n += fn
        arr = fa if arr is None else np.kron(arr, fa)
    return TensorOperator(d, n, ExactMatrix(arr))


def swap_operator(d: int) -> TensorOperator:
    """The switch sum_{ij} e_ij (x) e_ji on F^d (x) F^d."""
    if d < 1:
        raise DimensionError("d must be positive")
    m = ExactMatrix.zeros(d * d)
    for i in range(d):
        for j in range(d):
            m.a[i * d + j, j * d + i] = 1
    return TensorOperator(d, 2, m)


def tensor_digits(idx: int, d: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        idx, r = divmod(idx, d)
        out.append(r)
    return tuple(reversed(out))


def tensor_index(digits: Sequence[int], d: int) -> int:
    idx = 0
    for i in digits:
        idx = idx * d + i
    return idx


def permute_index(images: Sequence[int], idx: int, d: int) -> int:
    """Flat index of P_sigma e_idx; ``images`` are one-based sigma(k)."""
    n = len(images)
    digits = tensor_digits(idx, d, n)
    new = [0] * n
    for k, v in enumerate(digits):
        new[images[k] - 1] = v
    return tensor_index(new, d)


def perm_operator(sigma, d: int, n: int | None = None) -> TensorOperator:
    """Place permutation: the factor in position k moves to position sigma(k).

    Equivalently ``e_{i1}..e_{in} -> e_{i_{s^-1(1)}}..e_{i_{s^-1(n)}}``; this is a
    homomorphism, ``P(s t) = P(s) P(t)`` with ``(s t)(k) = s(t(k))``.
    """
    images = tuple(getattr(sigma, "images", sigma))
    if n is None:
        n = len(images)
    if len(images) != n:
        raise DimensionError("permutation degree differs from tensor order")
    size = d**n
    m = ExactMatrix.zeros(size)
    for j in range(size):
        m.a[permute_index(images, j, d), j] = 1
    return TensorOperator(d, n, m)


@dataclass(frozen=True)
class Sigma2Decomposition:
    a: Fraction
    b: Fraction
    residual_zero: bool


def decompose_sigma2(t: TensorOperator) -> Sigma2Decomposition:
    """Write an order-2 operator as a*Id + b*swap using the two trace pairings."""
    if t.n != 2:
        raise DimensionError("decompose_sigma2 needs an order-2 operator")
    d = t.d
    if d == 1:
        raise DegenerateDimension("d=1: identity and swap coincide")
    sw = swap_operator(d)
    t1 = t.trace()
    t2 = (sw @ t).trace()
    # tr(T) = a d^2 + b d ; tr(sw T) = a d + b d^2
    det = Fraction(d**4 - d**2)
    a = (t1 * d * d - t2 * d) / det
    b = (t2 * d * d - t1 * d) / det
    resid = t - TensorOperator.identity(d, 2).scale(a) - sw.scale(b)
    return Sigma2Decomposition(a, b, resid.is_zero())


def vectorized_det(mats: Sequence[ExactMatrix]) -> Fraction:
    """det of the d^2 x d^2 matrix whose columns are the row-major vec(x_i)."""
    cols = [m.entries() for m in mats]
    n = len(cols)
    if any(len(c) != n for c in cols):
        raise DimensionError("need exactly d^2 matrices of size d")
    return ExactMatrix([[cols[j][i] for j in range(n)] for i in range(n)]).det()


def partial_contract(t: TensorOperator, zeta: ExactMatrix) -> ExactMatrix:
    """For t = sum A_i (x) B_i return sum A_i zeta B_i."""
    if t.n != 2:
        raise DimensionError("needs an order-2 operator")
    d = t.d
    arr = t.mat.a.reshape(d, d, d, d)  # [p, r, q, s] = A[p,q] B[r,s]
    out = np.einsum("prqs,qr->ps", arr, zeta.a)
    return ExactMatrix(out)
