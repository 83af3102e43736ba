"""Sparse vectors in lattices ``L = A Z^n`` with symbolic real entries.

Conventions: the columns of ``A`` generate the lattice, its rows drive the
rational dimension.  Index sets are 0-based tuples.  Row ``i`` of ``A`` is
decomposed as ``a_i = sum_j alpha_ij f_ij`` with Q-independent reals
``alpha_ij`` and primitive integer vectors ``f_ij``; stacking the ``f_ij``
gives the integer matrix ``F(A)``.  Because the symbols are Q-independent,
coordinate ``i`` of ``A y`` vanishes exactly when ``f_ij . y = 0`` for all j,
so every sparsity question reduces to integer linear algebra on ``F(A)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import mpmath

from . import intlinalg as il
from . import kernels
from .errors import (
    DimensionCapExceeded,
    InvariantViolation,
    NotAxisAlignedVR,
    NumericallySingular,
    SchemaError,
    SingularBasis,
)
from .exact_arith import DEFAULT_PRECISION, GUARD_DIGITS, SymbolBasis, SymReal

SPARSITY_CAP = 14
MINIMA_CAP = 8


@dataclass(frozen=True, eq=False)
class LatticeBasis:
    """A nonsingular n x n matrix of SymReals over one symbol basis."""

    symbols: SymbolBasis
    matrix: tuple[tuple[SymReal, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if n < 1 or any(len(r) != n for r in self.matrix):
            raise SchemaError("basis matrix must be square and nonempty")
        for row in self.matrix:
            for x in row:
                if x.basis != self.symbols:
                    raise SchemaError("matrix entry over a different symbol basis")
        _check_nonsingular(self)

    @classmethod
    def from_coeffs(cls, symbols: SymbolBasis, rows) -> LatticeBasis:
        """``rows[r][c]`` is the coefficient vector of entry ``A[r][c]``."""
        return cls(symbols, tuple(tuple(symbols.from_coeffs(e) for e in row) for row in rows))

    @classmethod
    def from_terms(cls, symbols: SymbolBasis, rows) -> LatticeBasis:
        """``rows[r][c]`` is a rational or a ``{symbol: coefficient}`` mapping."""
        def entry(e):
            return symbols.real(e) if isinstance(e, dict) else symbols.const(e)
        return cls(symbols, tuple(tuple(entry(e) for e in row) for row in rows))

    @classmethod
    def rational(cls, rows) -> LatticeBasis:
        return cls.from_terms(SymbolBasis(("1",), ("1.0",)), rows)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def block(self, s: int) -> list[list[Fraction]]:
        """Rational coefficient matrix of symbol ``s``."""
        return [[x.coeffs[s] for x in row] for row in self.matrix]

    def apply(self, y: Sequence[int]) -> tuple[SymReal, ...]:
        zero = self.symbols.zero()
        out = []
        for row in self.matrix:
            acc = zero
            for a, c in zip(row, y):
                if c:
                    acc = acc + a * int(c)
            out.append(acc)
        return tuple(out)

    def numeric(self, precision: int = DEFAULT_PRECISION) -> mpmath.matrix:
        with mpmath.workdps(precision + GUARD_DIGITS):
            return mpmath.matrix([[x.eval(precision) for x in row] for row in self.matrix])

    def float_matrix(self) -> list[list[float]]:
        return [[float(x.eval(20)) for x in row] for row in self.matrix]

    def sup_norm(self, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
        return max(x.abs_eval(precision) for row in self.matrix for x in row)

    def is_member(self, x: Sequence[SymReal]) -> bool:
        """Exact test ``x in A Z^n`` by solving the coefficient equations over Q."""
        m = self.symbols.size
        eqs, rhs = [], []
        for i, row in enumerate(self.matrix):
            for s in range(m):
                eqs.append([a.coeffs[s] for a in row])
                rhs.append(x[i].coeffs[s])
        y = il.solve_rational(eqs, rhs)
        return y is not None and all(v.denominator == 1 for v in y)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.matrix)
        return f"LatticeBasis([{body}])"


def _check_nonsingular(A: LatticeBasis) -> None:
    n, m = A.n, A.symbols.size
    row_stack = [[x.coeffs[s] for s in range(m) for x in row] for row in A.matrix]
    col_stack = [[A.matrix[r][c].coeffs[s] for c in range(n)] for s in range(m) for r in range(n)]
    if il.rank(row_stack) < n or il.rank(col_stack) < n:
        raise SingularBasis("basis matrix is singular (rational dependence among rows or columns)")
    if all(x.is_rational() for row in A.matrix for x in row):
        return  # rational matrices: the exact rank test above is complete
    prec = DEFAULT_PRECISION
    with mpmath.workdps(prec + GUARD_DIGITS):
        M = A.numeric(prec)
        det = mpmath.det(M)
        scale = max(mpmath.mpf(1), max(abs(v) for v in M)) ** n
        if abs(det) < mpmath.mpf(10) ** (-prec + 5) * scale:
            raise SingularBasis("basis matrix is numerically singular at working precision")


# ---------------------------------------------------------------------------
# Row decomposition


@dataclass(frozen=True)
class RowPart:
    alphas: tuple[SymReal, ...]
    fvecs: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.fvecs)


@dataclass(frozen=True)
class RowDecomposition:
    rows: tuple[RowPart, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(r.d for r in self.rows)

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def F(self) -> list[list[int]]:
        return [list(f) for r in self.rows for f in r.fvecs]

    @property
    def row_of(self) -> list[int]:
        return [i for i, r in enumerate(self.rows) for _ in r.fvecs]

    def F_rows(self, index_set: Sequence[int]) -> list[list[int]]:
        return [list(f) for i in index_set for f in self.rows[i].fvecs]

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "total": self.total,
            "F": [[str(x) for x in f] for f in self.F],
            "alphas": [[x.to_strings() for x in r.alphas] for r in self.rows],
            "alphas_text": [[str(x) for x in r.alphas] for r in self.rows],
        }


def _primitive_scaling(row: Sequence[Fraction]) -> list[int]:
    den = math.lcm(*(x.denominator for x in row))
    return il.primitive([int(x * den) for x in row])


def decompose_row(row: Sequence[SymReal]) -> RowPart:
    """Canonical decomposition of one row.

    The coefficient columns of the row span a Q-space; its reduced row echelon
    basis, scaled to primitive integer vectors, gives the ``f_ij``.  The
    ``alpha_ij`` follow from the pivot coordinates.
    """
    m = row[0].basis.size
    C_t = [[x.coeffs[s] for x in row] for s in range(m)]
    R, pivots = il.rref(C_t)
    fvecs, alphas = [], []
    for r, p in zip(R, pivots):
        f = _primitive_scaling(r)
        fvecs.append(tuple(f))
        alphas.append(row[p] / f[p])
    return RowPart(tuple(alphas), tuple(fvecs))


def row_decompose(A: LatticeBasis) -> RowDecomposition:
    return RowDecomposition(tuple(decompose_row(row) for row in A.matrix))


def rational_dimension(A: LatticeBasis) -> tuple[tuple[int, ...], int]:
    dec = row_decompose(A)
    return dec.dims, dec.total


@dataclass(frozen=True)
class NuResult:
    is_zero: bool
    alphas: tuple[SymReal, ...] | None
    value: mpmath.mpf

    def to_json(self, digits: int = 30) -> dict:
        return {
            "is_zero": self.is_zero,
            "alphas": None if self.alphas is None else [str(a) for a in self.alphas],
            "value": mpmath.nstr(self.value, digits),
        }


def nu(A: LatticeBasis, precision: int = DEFAULT_PRECISION) -> NuResult:
    """Product of ``|alpha_i|`` when every row is a real multiple of an integer vector, else 0."""
    dec = row_decompose(A)
    if any(d > 1 for d in dec.dims):
        return NuResult(True, None, mpmath.mpf(0))
    alphas = tuple(r.alphas[0] for r in dec.rows)
    with mpmath.workdps(precision + GUARD_DIGITS):
        value = mpmath.fprod(a.abs_eval(precision) for a in alphas)
    return NuResult(False, alphas, value)


# ---------------------------------------------------------------------------
# mu(alpha)


@dataclass(frozen=True)
class MuEstimate:
    alphas: tuple[SymReal, ...]
    value: mpmath.mpf
    phi: mpmath.matrix
    coords: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def rank(self) -> int:
        return len(self.alphas)

    def to_json(self, digits: int = 30) -> dict:
        return {"alphas": [str(a) for a in self.alphas], "rank": self.rank,
                "value": mpmath.nstr(self.value, digits)}


def entry_group_basis(A: LatticeBasis) -> tuple[list[SymReal], list[list[list[int]]]]:
    """A Z-basis of the group generated by the entries of ``A``, and integer coordinates.

    Returns ``(alphas, N)`` with ``A == sum_k alphas[k] * N[k]`` entrywise.
    """
    entries = [x for row in A.matrix for x in row]
    den = math.lcm(*(c.denominator for x in entries for c in x.coeffs))
    ints = [[int(c * den) for c in x.coeffs] for x in entries]
    H = il.row_hnf(ints)
    alphas = [A.symbols.from_coeffs([Fraction(h, den) for h in hrow]) for hrow in H]
    Ht = il.transpose(H)
    n = A.n
    N = [[[0] * n for _ in range(n)] for _ in H]
    for idx, w in enumerate(ints):
        sol = il.solve_rational(Ht, w)
        if sol is None or any(v.denominator != 1 for v in sol):
            raise InvariantViolation("entry outside the computed group basis")
        r, c = divmod(idx, n)
        for k, v in enumerate(sol):
            N[k][r][c] = int(v)
    return alphas, N


def mu_estimate(A: LatticeBasis, precision: int = DEFAULT_PRECISION) -> MuEstimate:
    """Operator norm (sup to sup) of the coordinate map ``x -> (f_1, ..., f_k)``.

    With ``A = sum_k alpha_k N_k`` the map is ``S A^{-1}`` for the stacked
    integer blocks ``S``; its sup-to-sup norm is the largest row l1-norm.
    """
    alphas, N = entry_group_basis(A)
    with mpmath.workdps(precision + GUARD_DIGITS):
        try:
            Ainv = mpmath.inverse(A.numeric(precision))
        except ZeroDivisionError as exc:
            raise NumericallySingular("cannot invert the basis matrix") from exc
        S = mpmath.matrix([row for blk in N for row in blk])
        phi = S * Ainv
        value = max(mpmath.fsum(abs(phi[i, j]) for j in range(A.n)) for i in range(phi.rows))
    coords = tuple(tuple(tuple(r) for r in blk) for blk in N)
    return MuEstimate(tuple(alphas), value, phi, coords)


def f_norm(dec: RowDecomposition) -> int:
    return max(il.sup_norm(f) for f in dec.F)


# ---------------------------------------------------------------------------
# Sparse vectors with bounds


@dataclass(frozen=True, eq=False)
class SparseReport:
    lattice: LatticeBasis
    k: int
    index_set: tuple[int, ...]
    d_I: int
    ell: int
    kernel_dimension: int
    preimages: tuple[tuple[int, ...], ...]
    vectors: tuple[tuple[SymReal, ...], ...]
    sup_norms: tuple[mpmath.mpf, ...]
    lhs: mpmath.mpf
    bound: mpmath.mpf
    bound_satisfied: bool
    kernel_method: str
    precision: int

    def to_json(self, digits: int = 30) -> dict:
        return {
            "k": self.k,
            "index_set": list(self.index_set),
            "d_I": self.d_I,
            "ell": self.ell,
            "kernel_dimension": self.kernel_dimension,
            "preimages": [[str(v) for v in y] for y in self.preimages],
            "vectors": [[str(x) for x in v] for v in self.vectors],
            "vectors_exact": [[x.to_strings() for x in v] for v in self.vectors],
            "sup_norms": [mpmath.nstr(s, digits) for s in self.sup_norms],
            "lhs": mpmath.nstr(self.lhs, digits),
            "bound": mpmath.nstr(self.bound, digits),
            "bound_satisfied": self.bound_satisfied,
            "kernel_method": self.kernel_method,
        }


def _pruned_subsets(dims: Sequence[int], size: int, limit: int) -> Iterator[tuple[int, ...]]:
    """Subsets of the given size with ``sum(dims[i]) < limit``, pruning partial sums."""
    n = len(dims)

    def rec(start, chosen, total):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for i in range(start, n - (size - len(chosen)) + 1):
            t = total + dims[i]
            if t >= limit:
                continue
            chosen.append(i)
            yield from rec(i + 1, chosen, t)
            chosen.pop()

    yield from rec(0, [], 0)


def _colex(subsets):
    return sorted(subsets, key=lambda s: tuple(reversed(s)))


def sparsity(x: Sequence[SymReal]) -> int:
    return sum(1 for v in x if not v.is_zero())


def sparse_bound(n: int, d_I: int, normA, mu) -> mpmath.mpf:
    return mpmath.mpf(n) ** (n - mpmath.mpf(d_I) / 2) * normA ** n * mu ** d_I


def find_sparse(A: LatticeBasis, k: int, precision: int = DEFAULT_PRECISION) -> list[SparseReport]:
    """Sparse lattice vectors from integer kernels of row blocks of ``F(A)``.

    For every index set ``I`` of ``n - k`` rows with ``d_I(A) < n`` the
    kernel of ``F(A)_I`` yields ``n - d_I(A)`` independent lattice vectors
    vanishing on ``I``; they are reduced and checked against
    ``n^(n - d_I/2) |A|^n mu^d_I``.
    """
    n = A.n
    if not 1 <= k < n:
        raise ValueError(f"k must lie in [1, {n - 1}]")
    dec = row_decompose(A)
    dims = dec.dims
    subsets = _colex(_pruned_subsets(dims, n - k, n))
    if not subsets:
        return []
    mu = mu_estimate(A, precision).value
    normA = A.sup_norm(precision)
    reports = []
    for I in subsets:
        d_I = sum(dims[i] for i in I)
        ell = n - d_I
        FI = dec.F_rows(I)
        K = il.reduce_kernel_basis(il.integer_kernel(FI), il.siegel_bound(FI))
        ys = K.vectors[:ell]
        xs = tuple(A.apply(y) for y in ys)
        if any(sparsity(x) > k for x in xs):
            raise InvariantViolation(f"kernel vector for I={I} is not {k}-sparse")
        with mpmath.workdps(precision + GUARD_DIGITS):
            norms = tuple(max(v.abs_eval(precision) for v in x) for x in xs)
            lhs = mpmath.fprod(norms)
            bound = sparse_bound(n, d_I, normA, mu)
            ok = bool(lhs <= bound * (1 + mpmath.mpf(10) ** -15))
        reports.append(SparseReport(A, k, I, d_I, ell, K.dimension, ys, xs, norms, lhs, bound,
                                    ok, K.method, precision))
    reports.sort(key=lambda r: (r.d_I, r.index_set))
    return reports


def verify_sparse_bound(report: SparseReport) -> bool:
    """Recheck sparsity and the product bound at doubled precision."""
    if report.ell == 0:
        return True
    A, prec = report.lattice, 2 * report.precision
    xs = [A.apply(y) for y in report.preimages]
    if len(xs) != report.ell or any(sparsity(x) > report.k for x in xs):
        return False
    if il.rank([list(y) for y in report.preimages]) != report.ell:
        return False
    mu = mu_estimate(A, prec).value
    normA = A.sup_norm(prec)
    with mpmath.workdps(prec + GUARD_DIGITS):
        lhs = mpmath.fprod(max(v.abs_eval(prec) for v in x) for x in xs)
        rhs = sparse_bound(A.n, report.d_I, normA, mu)
        return bool(lhs <= rhs * (1 + mpmath.mpf(10) ** -15))


# ---------------------------------------------------------------------------
# Successive sparsity levels


@dataclass(frozen=True)
class SparsityLevels:
    levels: tuple[int, ...]
    span_dims: tuple[int, ...]
    witnesses: dict = field(default_factory=dict)  # level -> (preimages, vectors)

    def to_json(self) -> dict:
        return {
            "levels": list(self.levels),
            "span_dims": list(self.span_dims),
            "witnesses": {
                str(s): {"preimages": [[str(v) for v in y] for y in ys],
                         "vectors": [[str(x) for x in v] for v in xs]}
                for s, (ys, xs) in sorted(self.witnesses.items())
            },
        }


def _support_kernel(dec: RowDecomposition, n: int, support: Sequence[int]) -> list[list[int]]:
    zero_rows = [i for i in range(n) if i not in support]
    if not zero_rows:
        return il.identity(n)
    return [list(v) for v in il.integer_kernel(dec.F_rows(zero_rows)).vectors]


def _independent(vectors: Sequence[Sequence[int]], want: int | None = None) -> list[list[int]]:
    chosen: list[list[int]] = []
    for v in vectors:
        if il.rank(chosen + [list(v)]) > len(chosen):
            chosen.append(list(v))
            if want is not None and len(chosen) == want:
                break
    return chosen


def sparsity_levels(A: LatticeBasis, cap: int = SPARSITY_CAP) -> SparsityLevels:
    """Exact successive sparsity levels.

    The s-sparse lattice vectors span (over Q, on the preimage side) the sum
    over supports ``S`` of size ``s`` of ``ker F(A)_{[n] \\ S}``;
    ``s_i`` is the least ``s`` whose span has dimension at least ``i``.
    """
    n = A.n
    if n > cap:
        raise DimensionCapExceeded(f"n = {n} exceeds the sparsity-level cap {cap}")
    dec = row_decompose(A)
    span_dims, witnesses = [], {}
    for s in range(1, n + 1):
        gens = []
        for S in itertools.combinations(range(n), s):
            gens.extend(_support_kernel(dec, n, S))
        gens.sort(key=lambda v: (il.sup_norm(v), v))
        basis = _independent(gens)
        span_dims.append(len(basis))
        if not span_dims[:-1] or span_dims[-1] > span_dims[-2]:
            witnesses[s] = (tuple(tuple(y) for y in basis), tuple(A.apply(y) for y in basis))
        if len(basis) == n:
            span_dims.extend([n] * (n - s))
            break
    levels = tuple(min(s for s in range(1, n + 1) if span_dims[s - 1] >= i) for i in range(1, n + 1))
    return SparsityLevels(levels, tuple(span_dims), witnesses)


def sparsity_levels_bruteforce(A: LatticeBasis, box: int = 10,
                               budget: int = kernels.DEFAULT_BUDGET) -> tuple[int, ...] | None:
    """Successive sparsity levels from all preimages ``|y_i| <= box``.

    Returns None when the box does not contain enough sparse vectors to
    determine every level.
    """
    n = A.n
    dec = row_decompose(A)
    G = kernels.support_gram(dec.F, dec.row_of, n, box, budget=budget)
    dims = []
    for s in range(1, n + 1):
        acc = [[0] * n for _ in range(n)]
        for mask in range(1, 1 << n):
            if bin(mask).count("1") <= s:
                blk = G[mask]
                for a in range(n):
                    for b in range(n):
                        acc[a][b] += int(blk[a][b])
        dims.append(il.rank(acc))
    if dims[-1] < n:
        return None
    return tuple(min(s for s in range(1, n + 1) if dims[s - 1] >= i) for i in range(1, n + 1))


# ---------------------------------------------------------------------------
# Rectangular sublattice


@dataclass(frozen=True)
class RectangularSublattice:
    diagonal: tuple[SymReal, ...]
    B: tuple[tuple[SymReal, ...], ...]
    index: int
    det_F: int
    transform: tuple[tuple[int, ...], ...]
    cross_check_rel_error: mpmath.mpf

    def to_json(self, digits: int = 30) -> dict:
        return {
            "index": str(self.index),
            "det_F": str(self.det_F),
            "diagonal": [str(x) for x in self.diagonal],
            "diagonal_exact": [x.to_strings() for x in self.diagonal],
            "transform": [[str(v) for v in r] for r in self.transform],
            "cross_check_rel_error": mpmath.nstr(self.cross_check_rel_error, 5),
        }


def rectangular_sublattice(A: LatticeBasis, precision: int = DEFAULT_PRECISION) -> RectangularSublattice:
    """Diagonal sublattice ``A adj(F(A))`` of index ``|det F(A)|^(n-1)``.

    Requires rational dimension n; the index is cross-checked numerically
    against ``(det L / nu(L))^(n-1)``.
    """
    n = A.n
    dec = row_decompose(A)
    if dec.total != n:
        raise NotAxisAlignedVR(f"rational dimension {dec.total} > n = {n}")
    adj, det = il.adjugate_det(dec.F)
    zero = A.symbols.zero()
    B = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = zero
            for k in range(n):
                if adj[k][c]:
                    acc = acc + A.matrix[r][k] * adj[k][c]
            row.append(acc)
        B.append(tuple(row))
    for r in range(n):
        for c in range(n):
            if r != c and not B[r][c].is_zero():
                raise InvariantViolation("A adj(F(A)) is not diagonal")
    index = abs(det) ** (n - 1)
    with mpmath.workdps(precision + GUARD_DIGITS):
        detL = abs(mpmath.det(A.numeric(precision)))
        expected = (detL / nu(A, precision).value) ** (n - 1)
        rel = abs(expected - index) / index
    return RectangularSublattice(tuple(B[i][i] for i in range(n)), tuple(B), index, det,
                                 tuple(tuple(r) for r in adj), rel)


# ---------------------------------------------------------------------------
# Sparse successive minima by enumeration


@dataclass(frozen=True)
class SparseMinima:
    k: int
    radius: float
    values: tuple[mpmath.mpf, ...]
    preimages: tuple[tuple[int, ...], ...]
    vectors: tuple[tuple[SymReal, ...], ...]
    expected: int
    box: int

    @property
    def complete(self) -> bool:
        return len(self.values) >= self.expected

    def to_json(self, digits: int = 30) -> dict:
        return {
            "k": self.k,
            "radius": repr(self.radius),
            "minima": [mpmath.nstr(v, digits) for v in self.values],
            "preimages": [[str(v) for v in y] for y in self.preimages],
            "vectors": [[str(x) for x in v] for v in self.vectors],
            "complete": self.complete,
            "note": None if self.complete else "incomplete beyond radius",
            "box": self.box,
        }


def preimage_box(A: LatticeBasis, radius: float, precision: int = 30) -> int:
    with mpmath.workdps(precision):
        try:
            Ainv = mpmath.inverse(A.numeric(precision))
        except ZeroDivisionError as exc:
            raise NumericallySingular("cannot invert the basis matrix") from exc
        top = max(abs(v) for v in Ainv)
        return int(mpmath.ceil(mpmath.mpf(radius) * A.n * top))


def sparse_minima_oracle(A: LatticeBasis, k: int, radius: float, expected: int | None = None,
                         budget: int = kernels.DEFAULT_BUDGET,
                         precision: int = DEFAULT_PRECISION) -> SparseMinima:
    """k-sparse successive minima (sup-norm) among lattice vectors of norm <= radius."""
    n = A.n
    if n > MINIMA_CAP:
        raise DimensionCapExceeded(f"n = {n} exceeds the enumeration cap {MINIMA_CAP}")
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}]")
    dec = row_decompose(A)
    Y = preimage_box(A, radius)
    ys = kernels.sparse_scan(dec.F, dec.row_of, A.float_matrix(), Y, k, radius, budget=budget)
    cands = []
    with mpmath.workdps(precision + GUARD_DIGITS):
        for y in ys:
            y = tuple(int(v) for v in y)
            x = A.apply(y)
            if sparsity(x) > k:
                raise InvariantViolation("kernel zero pattern disagrees with exact evaluation")
            norm = max(v.abs_eval(precision) for v in x)
            if norm <= radius:
                cands.append((norm, y, x))
    cands.sort(key=lambda t: (t[0], t[1]))
    chosen = []
    for norm, y, x in cands:
        if il.rank([list(c[1]) for c in chosen] + [list(y)]) > len(chosen):
            chosen.append((norm, y, x))
            if len(chosen) == n:
                break
    return SparseMinima(k, radius, tuple(c[0] for c in chosen), tuple(c[1] for c in chosen),
                        tuple(c[2] for c in chosen), n if expected is None else expected, Y)
