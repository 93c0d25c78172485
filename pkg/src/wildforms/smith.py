"""Smith normal form of matrices over ``F[x]``."""

from __future__ import annotations

from typing import Sequence

from .fields import Field
from .matrix import Matrix
from .poly import Poly

PolyGrid = list[list[Poly]]


def poly_identity(field: Field, n: int) -> PolyGrid:
    return [[Poly.one(field) if i == j else Poly.zero(field) for j in range(n)] for i in range(n)]


def pencil(A: Matrix, B: Matrix) -> PolyGrid:
    """The polynomial matrix ``x*A - B``."""
    F = A.field
    return [[Poly._raw(F, [F.neg(b), a]) for a, b in zip(ra, rb)] for ra, rb in zip(A.rows, B.rows)]


def poly_matmul(X: PolyGrid, Y: PolyGrid, field: Field) -> PolyGrid:
    inner = len(Y)
    ncols = len(Y[0]) if Y else 0
    out = []
    for row in X:
        new = []
        for j in range(ncols):
            acc = Poly.zero(field)
            for k in range(inner):
                if row[k] and Y[k][j]:
                    acc = acc + row[k] * Y[k][j]
            new.append(acc)
        out.append(new)
    return out


def smith_form(P: Sequence[Sequence[Poly]], field: Field, transforms: bool = False):
    """Diagonalise ``P`` by unimodular row and column operations.

    Returns ``(D, U, V)`` with ``U @ P @ V == D``; ``U`` and ``V`` are ``None``
    unless ``transforms`` is set.  The diagonal of ``D`` is monic and each
    nonzero entry divides the next.
    """
    A = [list(r) for r in P]
    m = len(A)
    n = len(A[0]) if m else 0
    U = poly_identity(field, m) if transforms else None
    V = poly_identity(field, n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def row_axpy(i, q, k):
        # row_i -= q * row_k
        ri, rk = A[i], A[k]
        for c in range(n):
            if rk[c]:
                ri[c] = ri[c] - q * rk[c]
        if U is not None:
            ui, uk = U[i], U[k]
            for c in range(m):
                if uk[c]:
                    ui[c] = ui[c] - q * uk[c]

    def col_axpy(j, q, k):
        # col_j -= q * col_k
        for row in A:
            if row[k]:
                row[j] = row[j] - q * row[k]
        if V is not None:
            for row in V:
                if row[k]:
                    row[j] = row[j] - q * row[k]

    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    e = A[i][j]
                    if e and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
                        if best[0] == 0:
                            break
                if best is not None and best[0] == 0:
                    break
            if best is None:
                return A, U, V
            _, i, j = best
            if i != k:
                swap_rows(i, k)
            if j != k:
                swap_cols(j, k)
            piv = A[k][k]
            clean = True
            for i in range(k + 1, m):
                if A[i][k]:
                    q, r = divmod(A[i][k], piv)
                    row_axpy(i, q, k)
                    if r:
                        clean = False
            for j in range(k + 1, n):
                if A[k][j]:
                    q, r = divmod(A[k][j], piv)
                    col_axpy(j, q, k)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = None
            if piv.degree > 0:
                for i in range(k + 1, m):
                    for j in range(k + 1, n):
                        if A[i][j] and not (A[i][j] % piv).is_zero():
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            # row_k += row_bad, then re-reduce
            row_axpy(k, Poly.const(field, field.neg(field.one)), bad)
        lead_inv = field.inv(A[k][k].lead)
        if lead_inv != field.one:
            A[k] = [e * lead_inv for e in A[k]]
            if U is not None:
                U[k] = [e * lead_inv for e in U[k]]
    return A, U, V


def invariant_factors(P: Sequence[Sequence[Poly]], field: Field) -> list[Poly]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of a polynomial matrix."""
    D, _, _ = smith_form(P, field)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(D[i][i].monic())
    return out


def smith_polymatrix(P: Sequence[Sequence[Poly]], field: Field) -> list[Poly]:
    return invariant_factors(P, field)
