"""Dense exact linear algebra over a :class:`Field`.

Vectors are plain tuples of raw field values.  Matrices act on column
vectors: an ``m x n`` matrix maps ``F^n -> F^m``.  Elimination always picks
the first nonzero entry of a column as pivot, so every result is
deterministic.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import DimensionError
from .scalars import Field


# -- vectors ---------------------------------------------------------------
def vzero(field: Field, n: int):
    return (field.zero,) * n


def vunit(field: Field, n: int, i: int):
    return tuple(field.one if j == i else field.zero for j in range(n))


def vadd(field, u, v):
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} != {len(v)}")
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vsub(field, u, v):
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} != {len(v)}")
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vscale(field, c, u):
    return tuple(field.mul(c, a) for a in u)


def vcomb(field, coeffs, vectors, n):
    """sum_i coeffs[i] * vectors[i] in F^n."""
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for k, a in enumerate(v):
            if a != 0:
                out[k] = field.add(out[k], field.mul(c, a))
    return tuple(out)


def is_zero_vec(u) -> bool:
    return all(a == 0 for a in u)


def all_vectors(field: Field, n: int):
    """F^n in lexicographic order (first coordinate most significant)."""
    return itertools.product(field.elements(), repeat=n)


# -- matrices --------------------------------------------------------------
class Matrix:
    __slots__ = ("field", "rows", "nrows", "ncols", "_arr")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        rows = tuple(tuple(field.elem(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._arr = None

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = cls.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        m._arr = None
        return m

    @classmethod
    def identity(cls, field, n):
        return cls._raw(field, [vunit(field, n, i) for i in range(n)], n)

    @classmethod
    def zeros(cls, field, m, n):
        return cls._raw(field, [vzero(field, n)] * m, n)

    @classmethod
    def from_columns(cls, field, cols, nrows: int):
        cols = [tuple(field.elem(x) for x in c) for c in cols]
        return cls._raw(field, [tuple(c[i] for c in cols) for i in range(nrows)], len(cols))

    @classmethod
    def from_array(cls, field, arr):
        arr = np.asarray(arr)
        return cls(field, arr.tolist(), arr.shape[1])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def T(self) -> Matrix:
        return Matrix._raw(
            self.field, [tuple(r[j] for r in self.rows) for j in range(self.ncols)], self.nrows
        )

    def columns(self):
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in r) for r in self.rows)
        return f"Matrix({self.field.name}, {self.nrows}x{self.ncols}: [{body}])"

    def apply(self, v):
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} vs {self.ncols} columns")
        F = self.field
        out = []
        for r in self.rows:
            s = F.zero
            for a, b in zip(r, v):
                if a != 0 and b != 0:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [self.apply(c) for c in other.columns()]
            return Matrix.from_columns(self.field, cols, self.nrows) if cols else \
                Matrix.zeros(self.field, self.nrows, 0)
        return self.apply(tuple(other))

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Matrix._raw(
            self.field, [vadd(self.field, a, b) for a, b in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Matrix._raw(
            self.field, [vsub(self.field, a, b) for a, b in zip(self.rows, other.rows)], self.ncols
        )

    def scale(self, c) -> Matrix:
        c = self.field.elem(c)
        return Matrix._raw(self.field, [vscale(self.field, c, r) for r in self.rows], self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.rows)

    def flat(self):
        return tuple(x for r in self.rows for x in r)

    def array(self):
        """int64 array (finite fields only), cached."""
        if self._arr is None:
            if self.field.p is None:
                raise ValueError("array() needs a finite field")
            self._arr = np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)
        return self._arr

    def hstack(self, other: Matrix) -> Matrix:
        if self.nrows != other.nrows:
            raise DimensionError("row counts differ")
        return Matrix._raw(self.field, [a + b for a, b in zip(self.rows, other.rows)],
                           self.ncols + other.ncols)

    def vstack(self, other: Matrix) -> Matrix:
        if self.ncols != other.ncols:
            raise DimensionError("column counts differ")
        return Matrix._raw(self.field, self.rows + other.rows, self.ncols)

    # -- elimination -------------------------------------------------------
    def rref(self):
        """Reduced row echelon form and pivot columns."""
        F = self.field
        A = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, self.nrows) if A[i][c] != 0), None)
            if piv is None:
                continue
            A[r], A[piv] = A[piv], A[r]
            inv = F.inv(A[r][c])
            A[r] = [F.mul(inv, x) for x in A[r]]
            for i in range(self.nrows):
                if i != r and A[i][c] != 0:
                    f = A[i][c]
                    A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix._raw(F, A, self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self):
        return kernel(self)

    def inverse(self) -> Matrix:
        if self.nrows != self.ncols:
            raise DimensionError("inverse of a non-square matrix")
        n = self.nrows
        R, piv = self.hstack(Matrix.identity(self.field, n)).rref()
        if piv[:n] != tuple(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix._raw(self.field, [r[n:] for r in R.rows], n)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


def kernel(M: Matrix):
    """Basis of the null space, one vector per free column (ascending)."""
    F = M.field
    R, piv = M.rref()
    free = [j for j in range(M.ncols) if j not in piv]
    basis = []
    for j in free:
        v = [F.zero] * M.ncols
        v[j] = F.one
        for i, c in enumerate(piv):
            v[c] = F.neg(R.rows[i][j])
        basis.append(tuple(v))
    return basis


def solve_linear(M: Matrix, b):
    """One solution of ``M x = b`` (free variables zero) or None."""
    b = tuple(M.field.elem(x) for x in b)
    if len(b) != M.nrows:
        raise DimensionError(f"right-hand side of length {len(b)} vs {M.nrows} rows")
    aug = M.hstack(Matrix._raw(M.field, [(x,) for x in b], 1)) if M.nrows else None
    if aug is None:
        return vzero(M.field, M.ncols)
    R, piv = aug.rref()
    if piv and piv[-1] == M.ncols:
        return None
    x = [M.field.zero] * M.ncols
    for i, c in enumerate(piv):
        x[c] = R.rows[i][M.ncols]
    return tuple(x)


def span_rref(field: Field, vectors, n: int):
    """Canonical (RREF) basis of the span of ``vectors`` in F^n."""
    if not vectors:
        return ()
    R, piv = Matrix(field, vectors, n).rref()
    return tuple(R.rows[: len(piv)])


def coordinates(field: Field, basis, v):
    """Coordinates of ``v`` in an independent ``basis`` or None if outside the span."""
    n = len(v)
    if not basis:
        return () if is_zero_vec(v) else None
    B = Matrix.from_columns(field, basis, n)
    return solve_linear(B, v)


def in_span(field, basis, v) -> bool:
    return coordinates(field, basis, v) is not None


def independent(field, vectors, n) -> bool:
    return not vectors or Matrix(field, vectors, n).rank() == len(vectors)


def iter_gl(field: Field, n: int):
    """Invertible n x n matrices in lexicographic row order."""
    vecs = list(all_vectors(field, n))

    def rec(rows):
        if len(rows) == n:
            yield Matrix._raw(field, rows, n)
            return
        for v in vecs:
            if independent(field, rows + [v], n):
                yield from rec(rows + [v])

    yield from rec([])


def gl_order(p: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= p**n - p**i
    return out
