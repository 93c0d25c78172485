"""Dense exact matrices over a :class:`~wildforms.fields.Field`.

Matrices are immutable; entries are stored row-major as tuples of raw field
elements.  Shapes ``0 x m`` and ``n x 0`` are legal, so direct sums with empty
blocks behave the way block-diagonal bookkeeping expects.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from .errors import Singular, SizeMismatch
from .fields import Field, FiniteField, Rationals

# Above this many entries, prime-field ranks go through numpy.
_NUMPY_RANK_THRESHOLD = 400


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, data: Iterable[Sequence] = (), shape: tuple[int, int] | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in data)
        if shape is None:
            if not rows:
                raise SizeMismatch("an empty matrix needs an explicit shape")
            shape = (len(rows), len(rows[0]))
        nr, nc = shape
        if nr < 0 or nc < 0:
            raise SizeMismatch(f"negative shape {shape}")
        if nc == 0:
            rows = ((),) * nr
        if len(rows) != nr or any(len(r) != nc for r in rows):
            raise SizeMismatch(f"entries do not match shape {shape}")
        self._set(field, rows, nr, nc)

    def _set(self, field, rows, nr, nc):
        self.field = field
        self.rows = rows
        self.nrows = nr
        self.ncols = nc
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, rows, nrows: int | None = None, ncols: int | None = None) -> "Matrix":
        """Build without coercion; ``rows`` must already hold field elements."""
        m = cls.__new__(cls)
        rows = tuple(tuple(r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if ncols == 0:
            rows = ((),) * nrows
        m._set(field, rows, nrows, ncols)
        return m

    # -- constructors -----------------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = nrows
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> "Matrix":
        n = len(values)
        vals = [field.coerce(v) for v in values]
        z = field.zero
        return cls._raw(field, [[vals[i] if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def scalar(cls, field: Field, value, n: int) -> "Matrix":
        return cls.diag(field, [value] * n)

    # -- basic protocol -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.shape, self.rows))
        return self._hash

    def __repr__(self) -> str:
        fmt = self.field.format
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols}>[{body}]"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def _check_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise SizeMismatch("matrices live over different fields")

    # -- arithmetic ---------------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise SizeMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.field.add
        return Matrix._raw(self.field, [[(add(a, b) if b else a) if a else b for a, b in zip(r, s)]
                                        for r, s in zip(self.rows, other.rows)], *self.shape)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise SizeMismatch(f"cannot subtract {self.shape} and {other.shape}")
        sub = self.field.sub
        return Matrix._raw(self.field, [[sub(a, b) for a, b in zip(r, s)]
                                        for r, s in zip(self.rows, other.rows)], *self.shape)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._raw(self.field, [[neg(a) for a in r] for r in self.rows], *self.shape)

    def scale(self, c) -> "Matrix":
        F = self.field
        mul, z = F.mul, F.zero
        return Matrix._raw(F, [[mul(c, a) if a else z for a in r] for r in self.rows], *self.shape)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise SizeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        orows = other.rows
        if isinstance(F, Rationals):
            # row-sparse accumulation; gadget matrices are mostly zero
            nc = other.ncols
            support = [[(j, b) for j, b in enumerate(row) if b] for row in orows]
            out = []
            for r in self.rows:
                acc = [F.zero] * nc
                for k, a in enumerate(r):
                    if a:
                        for j, b in support[k]:
                            acc[j] += a * b
                out.append(acc)
            return Matrix._raw(F, out, self.nrows, nc)
        cols = [[r[j] for r in orows] for j in range(other.ncols)]
        if isinstance(F, FiniteField) and F.k == 1:
            p = F.p
            out = [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in self.rows]
        else:
            add, mul, z = F.add, F.mul, F.zero
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = z
                    for a, b in zip(r, c):
                        if a and b:
                            acc = add(acc, mul(a, b))
                    row.append(acc)
                out.append(row)
        return Matrix._raw(F, out, self.nrows, other.ncols)

    @property
    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix._raw(self.field, [()] * self.ncols, self.ncols, 0)
        return Matrix._raw(self.field, list(zip(*self.rows)), self.ncols, self.nrows)

    def __pow__(self, e: int) -> "Matrix":
        if not self.is_square():
            raise SizeMismatch("powers need a square matrix")
        if e < 0:
            return inverse(self) ** (-e)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    # -- predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for r in self.rows for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_skew(self) -> bool:
        return self.is_square() and self.T == -self

    # -- slicing ------------------------------------------------------------------
    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, [[self.rows[i][j] for j in cols] for i in rows],
                           len(rows), len(cols))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return self.submatrix(range(r0, r1), range(c0, c1))

    def entries(self) -> Iterable:
        return itertools.chain.from_iterable(self.rows)


# -- assembly helpers -----------------------------------------------------------

def block_diag(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    """Direct sum of matrices; empty blocks append zero rows or columns."""
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    z = field.zero
    out = [[z] * nc for _ in range(nr)]
    r0 = c0 = 0
    for b in blocks:
        if b.field != field:
            raise SizeMismatch("block over a different field")
        for i, row in enumerate(b.rows):
            out[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix._raw(field, out, nr, nc)


def block_matrix(field: Field, grid: Sequence[Sequence[Matrix | None]],
                 row_sizes: Sequence[int] | None = None,
                 col_sizes: Sequence[int] | None = None) -> Matrix:
    """Assemble a block matrix; ``None`` entries stand for zero blocks."""
    if row_sizes is None:
        row_sizes = [next(b.nrows for b in row if b is not None) for row in grid]
    if col_sizes is None:
        col_sizes = [next(grid[i][j].ncols for i in range(len(grid)) if grid[i][j] is not None)
                     for j in range(len(grid[0]))]
    nr, nc = sum(row_sizes), sum(col_sizes)
    z = field.zero
    out = [[z] * nc for _ in range(nr)]
    r0 = 0
    for i, row in enumerate(grid):
        c0 = 0
        for j, b in enumerate(row):
            if b is not None:
                if b.shape != (row_sizes[i], col_sizes[j]):
                    raise SizeMismatch(f"block ({i},{j}) has shape {b.shape}")
                for a, brow in enumerate(b.rows):
                    out[r0 + a][c0:c0 + b.ncols] = brow
            c0 += col_sizes[j]
        r0 += row_sizes[i]
    return Matrix._raw(field, out, nr, nc)


def hstack(field: Field, mats: Sequence[Matrix]) -> Matrix:
    return block_matrix(field, [list(mats)], [mats[0].nrows], [m.ncols for m in mats])


def vstack(field: Field, mats: Sequence[Matrix]) -> Matrix:
    return block_matrix(field, [[m] for m in mats], [m.nrows for m in mats], [mats[0].ncols])


# -- elimination ----------------------------------------------------------------

def _row_ops(F: Field):
    """Return ``(axpy, scale)`` closures specialised to the field."""
    if isinstance(F, Rationals):
        def axpy(x, f, y):
            return [a - f * b if b else a for a, b in zip(x, y)]

        def scale(x, c):
            return [a * c for a in x]
    elif isinstance(F, FiniteField) and F.k == 1:
        p = F.p

        def axpy(x, f, y):
            return [(a - f * b) % p for a, b in zip(x, y)]

        def scale(x, c):
            return [a * c % p for a in x]
    else:
        sub, mul = F.sub, F.mul

        def axpy(x, f, y):
            return [sub(a, mul(f, b)) if b else a for a, b in zip(x, y)]

        def scale(x, c):
            return [mul(a, c) for a in x]
    return axpy, scale


def _gauss_jordan(M: Matrix, with_transform: bool):
    F = M.field
    axpy, scale = _row_ops(F)
    rows = [list(r) for r in M.rows]
    n = M.nrows
    T = [list(r) for r in Matrix.identity(F, n).rows] if with_transform else None
    z = F.zero
    r = 0
    pivots = []
    for c in range(M.ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if rows[i][c] != z), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if T is not None:
                T[r], T[piv] = T[piv], T[r]
        inv = F.inv(rows[r][c])
        rows[r] = scale(rows[r], inv)
        if T is not None:
            T[r] = scale(T[r], inv)
        prow = rows[r]
        for i in range(n):
            if i != r:
                f = rows[i][c]
                if f != z:
                    rows[i] = axpy(rows[i], f, prow)
                    if T is not None:
                        T[i] = axpy(T[i], f, T[r])
        pivots.append(c)
        r += 1
    return rows, T, pivots


def rank_rref(M: Matrix) -> tuple[int, Matrix, Matrix]:
    """Rank, reduced row echelon form and an invertible ``T`` with ``T @ M == rref``."""
    rows, T, pivots = _gauss_jordan(M, True)
    F = M.field
    return (len(pivots), Matrix._raw(F, rows, M.nrows, M.ncols),
            Matrix._raw(F, T, M.nrows, M.nrows))


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    rows, _, pivots = _gauss_jordan(M, False)
    return Matrix._raw(M.field, rows, M.nrows, M.ncols), pivots


def _rank_numpy_mod_p(rows, p: int) -> int:
    A = np.array(rows, dtype=np.int64) % p
    n, m = A.shape
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        below = A[r + 1:, c]
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            A[idx] = (A[idx] - np.outer(A[idx, c], A[r])) % p
        r += 1
    return r


def rank(M: Matrix) -> int:
    """Rank by forward elimination (no back substitution)."""
    F = M.field
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if isinstance(F, FiniteField) and F.k == 1 and M.nrows * M.ncols >= _NUMPY_RANK_THRESHOLD:
        return _rank_numpy_mod_p(M.rows, F.p)
    if isinstance(F, Rationals):
        return _rank_sparse_q(M)
    axpy, scale = _row_ops(F)
    rows = [list(r) for r in M.rows]
    z = F.zero
    n = M.nrows
    r = 0
    for c in range(M.ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if rows[i][c] != z), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        prow = scale(rows[r], inv)
        rows[r] = prow
        for i in range(r + 1, n):
            f = rows[i][c]
            if f != z:
                rows[i] = axpy(rows[i], f, prow)
        r += 1
    return r


def _rank_sparse_q(M: Matrix) -> int:
    """Rational rank with rows held as ``{column: value}`` dicts."""
    pending = [{j: x for j, x in enumerate(row) if x} for row in M.rows]
    pending = [r for r in pending if r]
    r = 0
    while pending:
        # pivot on the sparsest row to limit fill-in
        k = min(range(len(pending)), key=lambda i: len(pending[i]))
        prow = pending.pop(k)
        c = min(prow)
        inv = 1 / prow[c]
        rest = []
        for row in pending:
            f = row.get(c)
            if f:
                f = f * inv
                for j, x in prow.items():
                    v = row.get(j, 0) - f * x
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
            if row:
                rest.append(row)
        pending = rest
        r += 1
    return r


def det(M: Matrix):
    if not M.is_square():
        raise SizeMismatch("determinant needs a square matrix")
    F = M.field
    axpy, _ = _row_ops(F)
    rows = [list(r) for r in M.rows]
    n = M.nrows
    z = F.zero
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != z), None)
        if piv is None:
            return z
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = F.neg(d)
        pv = rows[c][c]
        d = F.mul(d, pv)
        inv = F.inv(pv)
        for i in range(c + 1, n):
            f = rows[i][c]
            if f != z:
                rows[i] = axpy(rows[i], F.mul(f, inv), rows[c])
    return d


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise SizeMismatch("only square matrices are invertible")
    rows, T, pivots = _gauss_jordan(M, True)
    if len(pivots) != M.nrows:
        raise Singular(f"matrix of rank {len(pivots)} < {M.nrows} is not invertible")
    return Matrix._raw(M.field, T, M.nrows, M.nrows)


def is_invertible(M: Matrix) -> bool:
    return M.is_square() and rank(M) == M.nrows


def nullspace(M: Matrix) -> list[list]:
    """Basis of ``{v : M v = 0}`` as coordinate lists, one per free column."""
    F = M.field
    R, pivots = rref(M)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.rows[i][f])
        basis.append(v)
    return basis


def row_space_basis(vectors: Sequence[Sequence], field: Field, length: int) -> list[list]:
    """Reduced echelon basis of the span of ``vectors``."""
    if not vectors:
        return []
    M = Matrix._raw(field, vectors, len(vectors), length)
    R, pivots = rref(M)
    return [list(R.rows[i]) for i in range(len(pivots))]


def linear_combination(field: Field, coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    nr, nc = mats[0].shape
    acc = Matrix.zeros(field, nr, nc)
    for c, m in zip(coeffs, mats):
        if c != field.zero:
            acc = acc + m.scale(c)
    return acc
