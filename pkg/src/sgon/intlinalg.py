"""Exact integer and rational linear algebra.

Matrices are plain lists of rows (``list[list[int]]`` or Fractions); the
:class:`IntMatrix` wrapper exists for JSON I/O.  Everything here is exact;
floating point only appears in bound reports.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import SchemaError

Matrix = list[list[int]]


@dataclass(frozen=True)
class IntMatrix:
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.data or not self.data[0]:
            raise SchemaError("matrix dimensions must be positive")
        if any(len(r) != len(self.data[0]) for r in self.data):
            raise SchemaError("ragged matrix")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0])

    def tolist(self) -> Matrix:
        return [list(r) for r in self.data]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": [[str(x) for x in r] for r in self.data]}

    @classmethod
    def from_json(cls, obj: dict) -> IntMatrix:
        try:
            r, c, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad IntMatrix object: {exc}") from exc
        if len(data) != r or any(len(row) != c for row in data):
            raise SchemaError("IntMatrix data does not match rows/cols")
        try:
            return cls.of([[int(x) for x in row] for row in data])
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"non-integer entry: {exc}") from exc


def _rows(M) -> Matrix:
    if isinstance(M, IntMatrix):
        return M.tolist()
    return [list(r) for r in M]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def sup_norm(v: Sequence[int]) -> int:
    return max((abs(x) for x in v), default=0)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def primitive(v: Sequence[int]) -> list[int]:
    """Divide by the gcd and make the first nonzero entry positive."""
    g = math.gcd(*v) if v else 0
    if g == 0:
        return list(v)
    out = [x // g for x in v]
    return normalize_sign(out)


def normalize_sign(v: Sequence[int]) -> list[int]:
    for x in v:
        if x:
            return list(v) if x > 0 else [-y for y in v]
    return list(v)


# ---------------------------------------------------------------------------
# Hermite normal form


def _colop(M: Matrix, p: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (col_p, col_j) <- (a*col_p + b*col_j, c*col_p + d*col_j)
    for row in M:
        x, y = row[p], row[j]
        row[p] = a * x + b * y
        row[j] = c * x + d * y


def hnf(M) -> tuple[Matrix, Matrix]:
    """Column Hermite normal form.

    Returns ``(H, U)`` with ``H == M @ U``, ``U`` unimodular and ``H`` lower
    echelon: the pivot of column ``k`` sits strictly below the pivot of
    column ``k-1``, pivots are positive, entries to the left of a pivot lie in
    ``[0, pivot)``, and columns after the last pivot are zero.
    """
    H = _rows(M)
    if not H or not H[0]:
        raise ValueError("hnf of an empty matrix")
    nrows, ncols = len(H), len(H[0])
    U = identity(ncols)
    col = 0
    for i in range(nrows):
        if col == ncols:
            break
        row = H[i]
        for j in range(col + 1, ncols):
            if row[j] == 0:
                continue
            a, b = row[col], row[j]
            g, x, y = xgcd(a, b)
            ops = (col, j, x, y, -b // g, a // g)
            _colop(H, *ops)
            _colop(U, *ops)
        p = row[col]
        if p == 0:
            continue
        if p < 0:
            for M_ in (H, U):
                for r in M_:
                    r[col] = -r[col]
            p = -p
        for j in range(col):
            q = row[j] // p
            if q:
                for M_ in (H, U):
                    for r in M_:
                        r[j] -= q * r[col]
        col += 1
    return H, U


def hnf_rank(H: Matrix) -> int:
    ncols = len(H[0])
    return sum(1 for j in range(ncols) if any(r[j] for r in H))


def row_hnf(vectors: Sequence[Sequence[int]]) -> Matrix:
    """Canonical basis (upper echelon rows) of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    H, _ = hnf(transpose(vectors))
    r = hnf_rank(H)
    return [list(c) for c in transpose(H)[:r]]


# ---------------------------------------------------------------------------
# Rational elimination


def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in M]
    if not A:
        return [], []
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A[:r], pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def adjugate_det(M) -> tuple[Matrix, int]:
    """Adjugate and determinant, with ``M @ adj == det * I`` exactly."""
    A = _rows(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("adjugate of a non-square matrix")
    det = bareiss_det(A)
    if n == 1:
        return [[1]], det
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(A) if k != i]
            adj[j][i] = (-1) ** (i + j) * bareiss_det(minor)
    return adj, det


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Some solution of ``A x = b`` over Q, or None if inconsistent."""
    aug = [list(r) + [v] for r, v in zip(A, b)]
    R, piv = rref(aug)
    ncols = len(A[0])
    if piv and piv[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(R, piv):
        x[c] = row[-1]
    return x


# ---------------------------------------------------------------------------
# Kernels


@dataclass(frozen=True)
class KernelBasis:
    """A lattice basis of ``{v in Z^c : M v = 0}``.

    ``bound`` and ``within_bound`` are filled in by :func:`reduce_kernel_basis`
    when a target bound was supplied.
    """

    vectors: tuple[tuple[int, ...], ...]
    source: tuple[tuple[int, ...], ...]
    bound: float | None = None
    within_bound: bool | None = None
    method: str = "hnf"
    cols: int = field(default=0)

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def sup_norm_product(self) -> int:
        return math.prod(sup_norm(v) for v in self.vectors)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "vectors": [[str(x) for x in v] for v in self.vectors],
            "sup_norm_product": str(self.sup_norm_product()),
            "bound": None if self.bound is None else repr(float(self.bound)),
            "within_bound": self.within_bound,
            "method": self.method,
        }


def integer_kernel(M) -> KernelBasis:
    """Saturated integer kernel, canonicalized to row Hermite form."""
    A = _rows(M)
    H, U = hnf(A)
    r = hnf_rank(H)
    raw = [list(c) for c in transpose(U)[r:]]
    vecs = row_hnf(raw) if raw else []
    return KernelBasis(tuple(tuple(v) for v in vecs), tuple(tuple(row) for row in A), cols=len(A[0]))


def _gso(b: list[list[int]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    k = len(b)
    bstar: list[list[Fraction]] = []
    Bn: list[Fraction] = []
    mu = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = sum(Fraction(x) * y for x, y in zip(b[i], bstar[j])) / Bn[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        Bn.append(sum(x * x for x in v))
    return mu, Bn


def lll(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """Exact LLL reduction of linearly independent integer rows."""
    b = [list(v) for v in basis]
    k = len(b)
    if k <= 1:
        return b
    mu, Bn = _gso(b)
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                for t in range(j + 1):
                    mu[i][t] -= q * (mu[j][t] if t < j else 1)
        if Bn[i] >= (delta - mu[i][i - 1] ** 2) * Bn[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, Bn = _gso(b)
            i = max(i - 1, 1)
    return b


def _canonical_order(vecs: Sequence[Sequence[int]]) -> Matrix:
    normed = [normalize_sign(v) for v in vecs]
    return sorted(normed, key=lambda v: (sup_norm(v), v))


def sup_norm_minima(basis: Sequence[Sequence[int]], budget: int = kernels.DEFAULT_BUDGET) -> Matrix:
    """Vectors realizing the successive minima of the lattice in the sup-norm.

    Enumerates coefficient vectors in a box derived from the dual basis; any
    lattice vector of sup-norm at most ``R`` has coefficients bounded by
    ``|d_i| * sqrt(c) * R`` for the dual rows ``d_i``.  ``R`` is the largest
    sup-norm of an LLL-reduced basis, which always dominates the last minimum.
    """
    b = lll(basis)
    ell = len(b)
    if ell == 0:
        return []
    c = len(b[0])
    R = max(sup_norm(v) for v in b)
    G = [[sum(x * y for x, y in zip(u, v)) for v in b] for u in b]
    Ginv_diag = _inverse_diagonal(G)
    bounds = [math.isqrt(math.floor(g * c * R * R)) for g in Ginv_diag]
    _, vecs = kernels.box_enumerate(b, bounds, R, budget=budget)
    cand = sorted((normalize_sign(list(map(int, v))) for v in vecs), key=lambda v: (sup_norm(v), v))
    chosen: Matrix = []
    for v in cand:
        if rank(chosen + [v]) > len(chosen):
            chosen.append(v)
            if len(chosen) == ell:
                break
    return chosen


def _inverse_diagonal(G: Sequence[Sequence[int]]) -> list[Fraction]:
    n = len(G)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(G)]
    R, _ = rref(aug)
    return [R[i][n + i] for i in range(n)]


def siegel_bound(B: Sequence[Sequence[int]]) -> float:
    """``(sqrt(n) * |B|)**rank(B)`` for an integer matrix with n columns."""
    n = len(B[0])
    m = rank(B)
    h = max(abs(x) for r in B for x in r)
    return (math.sqrt(n) * h) ** m


def reduce_kernel_basis(K: KernelBasis, target_bound: float | None = None,
                        exhaustive_fallback: bool = True) -> KernelBasis:
    """LLL-reduce a kernel basis, order it by sup-norm, and check it against a bound.

    The product of sup-norms never increases.  If the reduced basis misses
    ``target_bound`` and ``exhaustive_fallback`` is set, the sup-norm
    successive minima of the kernel lattice are computed by enumeration; when
    they span only a finite-index sublattice the method is reported as
    ``"exhaustive-sublattice"``.
    """
    if K.dimension == 0:
        return KernelBasis((), K.source, target_bound, True if target_bound is not None else None,
                           "empty", K.cols)
    reduced = _canonical_order(lll(K.vectors))
    before = K.sup_norm_product()
    if math.prod(sup_norm(v) for v in reduced) > before:
        reduced = _canonical_order(K.vectors)
    method = "lll"
    prod = math.prod(sup_norm(v) for v in reduced)
    ok = None
    if target_bound is not None:
        ok = prod <= target_bound * (1 + 1e-12)
        if not ok and exhaustive_fallback:
            minima = _canonical_order(sup_norm_minima(reduced))
            if math.prod(sup_norm(v) for v in minima) < prod:
                # sup-norm minima are independent but need not generate the lattice
                method = "exhaustive" if same_lattice(minima, reduced) else "exhaustive-sublattice"
                reduced = minima
                prod = math.prod(sup_norm(v) for v in reduced)
            ok = prod <= target_bound * (1 + 1e-12)
    return KernelBasis(tuple(tuple(v) for v in reduced), K.source, target_bound, ok, method, K.cols)


def siegel_kernel(B: Sequence[Sequence[int]]) -> KernelBasis:
    """Integer kernel of ``B`` reduced against the sup-norm Siegel bound."""
    return reduce_kernel_basis(integer_kernel(B), siegel_bound(B))


def same_lattice(U: Sequence[Sequence[int]], V: Sequence[Sequence[int]]) -> bool:
    return row_hnf(U) == row_hnf(V)


def as_int64(M: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array(M, dtype=np.int64)
