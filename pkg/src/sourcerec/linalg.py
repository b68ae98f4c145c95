"""Field-generic dense matrices, vectors, and subspace operations.

Everything is immutable after construction and safe to share between threads.
Exact matrices hold Fraction (or QI) entries and all decisions are exact;
float matrices carry a ToleranceProfile that governs pivoting and equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import (DEFAULT_TOL, ToleranceProfile, abs_mag, conj,
                      is_exact_scalar, scalar_is_zero)


class NoSolution(Exception):
    """Raised by solve() on an inconsistent linear system."""


class ZeroVector(Exception):
    """Raised where a nonzero vector is required."""


# ---------------------------------------------------------------------------
# vectors are plain tuples of scalars

def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_neg(u):
    return tuple(-a for a in u)


def inner(u, v):
    """Canonical inner product <u, v> = sum u_i * conj(v_i)."""
    total = 0
    for a, b in zip(u, v, strict=True):
        total = total + a * conj(b)
    return total


def vec_is_zero(v, tol: ToleranceProfile | None = None) -> bool:
    return all(scalar_is_zero(a, tol) for a in v)


def unit_vector(d: int, i: int, exact: bool = True):
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    return tuple(one if k == i else zero for k in range(d))


def zero_vector(d: int, exact: bool = True):
    zero = Fraction(0) if exact else 0.0
    return (zero,) * d


class Mat:
    """Immutable row-major dense matrix over one field mode."""

    __slots__ = ("rows", "cols", "data", "exact", "tol")

    def __init__(self, data, exact: bool | None = None, tol: ToleranceProfile | None = None):
        data = tuple(tuple(row) for row in data)
        rows = len(data)
        cols = len(data[0]) if rows else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        if exact is None:
            exact = all(is_exact_scalar(x) for row in data for x in row) if rows else True
        if exact:
            if any(isinstance(x, float) for row in data for x in row):
                raise ValueError("float entry in exact matrix")
        else:
            data = tuple(tuple(float(x) for x in row) for row in data)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "tol", tol if tol is not None else (None if exact else DEFAULT_TOL))

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def from_cols(cols, exact: bool | None = None, tol: ToleranceProfile | None = None) -> "Mat":
        cols = [tuple(c) for c in cols]
        if not cols:
            raise ValueError("from_cols needs at least one column")
        d = len(cols[0])
        return Mat([[c[i] for c in cols] for i in range(d)], exact=exact, tol=tol)

    @staticmethod
    def identity(n: int, exact: bool = True, tol: ToleranceProfile | None = None) -> "Mat":
        one = Fraction(1) if exact else 1.0
        zero = Fraction(0) if exact else 0.0
        return Mat([[one if i == j else zero for j in range(n)] for i in range(n)],
                   exact=exact, tol=tol)

    @staticmethod
    def zeros(r: int, c: int, exact: bool = True, tol: ToleranceProfile | None = None) -> "Mat":
        zero = Fraction(0) if exact else 0.0
        return Mat([[zero] * c for _ in range(r)], exact=exact, tol=tol)

    # -- access ------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def _merge_tol(self, other: "Mat") -> ToleranceProfile | None:
        if self.exact != other.exact:
            raise ValueError("exact and float matrices must not be mixed")
        return self.tol or other.tol

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Mat") -> "Mat":
        tol = self._merge_tol(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
                   exact=self.exact, tol=tol)

    def __sub__(self, other: "Mat") -> "Mat":
        tol = self._merge_tol(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
                   exact=self.exact, tol=tol)

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.data], exact=self.exact, tol=self.tol)

    def scale(self, c) -> "Mat":
        return Mat([[c * a for a in row] for row in self.data], exact=self.exact, tol=self.tol)

    def __matmul__(self, other: "Mat") -> "Mat":
        tol = self._merge_tol(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for row in self.data:
            out.append([sum(a * b for a, b in zip(row, c)) for c in ocols])
        return Mat(out, exact=self.exact, tol=tol)

    def matvec(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in matvec")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.data)

    def power(self, n: int) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        result = Mat.identity(self.rows, exact=self.exact, tol=self.tol)
        base = self
        k = n
        while k > 0:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def adjoint(self) -> "Mat":
        """Conjugate transpose (plain transpose over the rationals)."""
        return Mat([[conj(self.data[i][j]) for i in range(self.rows)] for j in range(self.cols)],
                   exact=self.exact, tol=self.tol)

    def hstack(self, other: "Mat") -> "Mat":
        tol = self._merge_tol(other)
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Mat([r1 + r2 for r1, r2 in zip(self.data, other.data)], exact=self.exact, tol=tol)

    def to_float(self, tol: ToleranceProfile | None = None) -> "Mat":
        return Mat([[float(a) for a in row] for row in self.data], exact=False,
                   tol=tol or self.tol or DEFAULT_TOL)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Mat({[list(r) for r in self.data]!r})"


# ---------------------------------------------------------------------------
# elimination kernels

def _bareiss_rank(data) -> int:
    """Fraction-free (Bareiss) forward elimination; exact entries only."""
    m = [list(row) for row in data]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * piv - m[i][c] * m[r][j]) / prev
            m[i][c] = 0 * m[i][c]
        prev = piv
        r += 1
    return r


def _rref(data, exact: bool, tol: ToleranceProfile | None):
    """Reduced row echelon form; returns (rows, pivot_cols).

    Float mode uses partial pivoting with the relative cutoff
    rank_threshold * (largest entry magnitude seen).
    """
    m = [list(row) for row in data]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if exact:
        cutoff = None
    else:
        tol = tol or DEFAULT_TOL
        scale = max((abs_mag(x) for row in m for x in row), default=0.0)
        cutoff = tol.rank_threshold * max(scale, 1e-300)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        if exact:
            pivot_row = None
            for i in range(r, nrows):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
        else:
            pivot_row = max(range(r, nrows), key=lambda i: abs_mag(m[i][c]))
            if abs_mag(m[pivot_row][c]) <= cutoff:
                continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if scalar_is_zero(f) and exact:
                continue
            m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(M: Mat) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.exact:
        return _bareiss_rank(M.data)
    _, pivots = _rref(M.data, exact=False, tol=M.tol)
    return len(pivots)


def kernel(M: Mat) -> "SubspaceBasis":
    """Basis of the null space of M; empty basis for injective M."""
    rref_rows, pivots = _rref(M.data, M.exact, M.tol)
    pivot_set = set(pivots)
    free = [c for c in range(M.cols) if c not in pivot_set]
    zero = Fraction(0) if M.exact else 0.0
    one = Fraction(1) if M.exact else 1.0
    basis = []
    for f in free:
        v = [zero] * M.cols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -rref_rows[r][f]
        basis.append(tuple(v))
    return SubspaceBasis(M.cols, tuple(basis), exact=M.exact, tol=M.tol, _validated=True)


def _solve_square_float(M: Mat, rhs: Mat) -> Mat:
    """Gaussian elimination with partial pivoting, no rank cutoff.

    Square float systems must not be rank-thresholded: an ill-conditioned but
    invertible matrix would be misjudged singular.  Raises NoSolution only on
    a numerically vanishing pivot.
    """
    n = M.rows
    a = [list(row) + list(r2) for row, r2 in zip(M.data, rhs.data)]
    w = n + rhs.cols
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs_mag(a[i][k]))
        if abs_mag(a[p][k]) <= 1e-300:
            raise NoSolution("vanishing pivot in square float solve")
        a[k], a[p] = a[p], a[k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f == 0:
                continue
            for j in range(k, w):
                a[i][j] -= f * a[k][j]
    out = [[0.0] * rhs.cols for _ in range(n)]
    for col in range(rhs.cols):
        for i in range(n - 1, -1, -1):
            s = a[i][n + col] - sum(a[i][j] * out[j][col] for j in range(i + 1, n))
            out[i][col] = s / a[i][i]
    return Mat(out, exact=False, tol=M.tol or rhs.tol)


def solve(M: Mat, rhs: Mat) -> Mat:
    """A particular solution X of M X = rhs; raises NoSolution if inconsistent.

    Free variables are set to zero, making the result deterministic.
    """
    if M.rows != rhs.rows:
        raise ValueError("dimension mismatch in solve")
    if not M.exact and M.rows == M.cols:
        return _solve_square_float(M, rhs)
    aug = M.hstack(rhs)
    rref_rows, pivots = _rref(aug.data, aug.exact, aug.tol)
    if any(c >= M.cols for c in pivots):
        raise NoSolution("rank of augmented matrix exceeds rank of coefficient matrix")
    zero = Fraction(0) if aug.exact else 0.0
    out = [[zero] * rhs.cols for _ in range(M.cols)]
    for r, c in enumerate(pivots):
        for k in range(rhs.cols):
            out[c][k] = rref_rows[r][M.cols + k]
    return Mat(out, exact=M.exact, tol=M.tol or rhs.tol)


def invert(M: Mat) -> Mat:
    if M.rows != M.cols:
        raise ValueError("inverse of non-square matrix")
    X = solve(M, Mat.identity(M.rows, exact=M.exact, tol=M.tol))
    return X


def column_space(M: Mat) -> "SubspaceBasis":
    """Basis of the range of M (its pivot columns)."""
    _, pivots = _rref(M.data, M.exact, M.tol)
    return SubspaceBasis(M.rows, tuple(M.col(c) for c in pivots),
                         exact=M.exact, tol=M.tol, _validated=True)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of F^d given by linearly independent basis columns."""

    ambient_dim: int
    vectors: tuple
    exact: bool = True
    tol: ToleranceProfile | None = None
    _validated: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong dimension")
        if self.vectors and not self._validated:
            if rank(self.matrix()) != len(self.vectors):
                raise ValueError("basis columns are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> Mat:
        if not self.vectors:
            raise ValueError("empty basis has no matrix")
        return Mat.from_cols(self.vectors, exact=self.exact, tol=self.tol)

    def contains(self, v) -> bool:
        if not self.vectors:
            return vec_is_zero(v, self.tol)
        C = self.matrix()
        return rank(C) == rank(C.hstack(Mat.from_cols([v], exact=self.exact, tol=self.tol)))


def span_of(vectors, ambient_dim: int, exact: bool = True,
            tol: ToleranceProfile | None = None) -> SubspaceBasis:
    """Reduce an arbitrary generating set to an independent basis."""
    tracker = SpanTracker(ambient_dim, exact=exact, tol=tol)
    basis = []
    for v in vectors:
        if tracker.add(v) is None:
            basis.append(tuple(v))
    return SubspaceBasis(ambient_dim, tuple(basis), exact=exact, tol=tol, _validated=True)


def spans_equal(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    if a.dim != b.dim:
        return False
    if a.dim == 0:
        return True
    joint = span_of(list(a.vectors) + list(b.vectors), a.ambient_dim, a.exact, a.tol or b.tol)
    return joint.dim == a.dim


def orthogonal_projector(W: SubspaceBasis) -> Mat:
    """P_W = C (C* C)^{-1} C* for the basis matrix C; idempotent, self-adjoint."""
    if W.dim == 0:
        raise ValueError("orthogonal projector of the zero subspace")
    C = W.matrix()
    Cs = C.adjoint()
    X = solve(Cs @ C, Cs)  # (C*C)^{-1} C*, exact since C has full column rank
    return C @ X


class SpanTracker:
    """Incremental elimination with coordinate tracking.

    add(v) returns None when v is independent of everything accepted so far
    (v is then accepted into the basis), or the coordinates of v over the
    accepted vectors, in acceptance order.
    """

    def __init__(self, dim: int, exact: bool = True, tol: ToleranceProfile | None = None):
        self.dim = dim
        self.exact = exact
        self.tol = tol or (None if exact else DEFAULT_TOL)
        self._reduced = []   # (unit-pivot reduced vector, pivot index)
        self._coords = []    # reduced vector expressed over accepted originals
        self.count = 0

    def add(self, v):
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        r = list(v)
        acc = [0] * self.count
        scale = max((abs_mag(x) for x in r), default=0.0) if not self.exact else None
        for (u, p), uc in zip(self._reduced, self._coords):
            f = r[p]
            if self.exact and f == 0:
                continue
            r = [a - f * b for a, b in zip(r, u)]
            acc = [a + f * b for a, b in zip(acc, uc)]
        if self.exact:
            dependent = all(x == 0 for x in r)
        else:
            cutoff = self.tol.rank_threshold * max(scale, 1e-300)
            dependent = max((abs_mag(x) for x in r), default=0.0) <= cutoff
        if dependent:
            return acc
        if self.exact:
            pivot = next(i for i, x in enumerate(r) if x != 0)
        else:
            pivot = max(range(len(r)), key=lambda i: abs_mag(r[i]))
        pv = r[pivot]
        u = tuple(x / pv for x in r)
        uc = tuple((x - a) / pv for x, a in
                   zip([0] * self.count + [1], acc + [0]))
        self._coords = [tuple(c) + (0,) for c in self._coords]
        self._reduced.append((u, pivot))
        self._coords.append(uc)
        self.count += 1
        return None
