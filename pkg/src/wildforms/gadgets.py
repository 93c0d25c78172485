"""Reductions of pair similarity to congruence of form triples.

:func:`build_T` embeds a matrix pair ``(A, B)`` into a triple of ``8n x 8n``
matrices whose congruence class determines the similarity class of the pair;
:func:`witness_from_similarity` turns a similarity into the matching
congruence.  :func:`intertwiner_similarity` decides pair similarity directly
by searching the solution space of ``A S = S C, B S = S D``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import DeskScaleExceeded, InvalidEpsilon, SizeMismatch, Singular
from .fields import Field
from .matrix import Matrix, block_diag, block_matrix, det, inverse, is_invertible, nullspace
from .tuples import EpsilonSignature, MatrixTuple, direct_sum, vee_lift

# Candidate budget for exhaustive searches through intertwiner spaces.
SEARCH_LIMIT = 10 ** 6


@dataclass(frozen=True)
class MatrixPair:
    A: Matrix
    B: Matrix

    def __post_init__(self):
        if not self.A.is_square() or self.A.shape != self.B.shape:
            raise SizeMismatch(f"pair members must be square of equal size, got {self.A.shape}, {self.B.shape}")
        if self.A.field != self.B.field:
            raise SizeMismatch("pair members over different fields")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def n(self) -> int:
        return self.A.nrows

    def as_tuple(self) -> MatrixTuple:
        return MatrixTuple((self.A, self.B))

    def conjugate(self, S: Matrix) -> "MatrixPair":
        """``S^-1 (A, B) S``."""
        Si = inverse(S)
        return MatrixPair(Si @ self.A @ S, Si @ self.B @ S)


@dataclass(frozen=True)
class SimilarityWitness:
    S: Matrix

    def verifies(self, P1: MatrixPair, P2: MatrixPair) -> bool:
        S = self.S
        if not is_invertible(S):
            return False
        return P1.A @ S == S @ P2.A and P1.B @ S == S @ P2.B


@dataclass(frozen=True)
class CongruenceWitness:
    R: Matrix

    def verifies(self, T1: MatrixTuple, T2: MatrixTuple) -> bool:
        R = self.R
        if not R.is_square() or R.nrows != T1.size or T1.arity != T2.arity:
            return False
        if not is_invertible(R):
            return False
        Rt = R.T
        return all(Rt @ A @ R == B for A, B in zip(T1.members, T2.members))


def build_J4(field: Field, n: int) -> Matrix:
    """``4n x 4n`` nilpotent matrix with ``I_n`` on the block superdiagonal."""
    if n < 1:
        raise SizeMismatch("J4 needs n >= 1")
    I = Matrix.identity(field, n)
    grid = [[I if j == i + 1 else None for j in range(4)] for i in range(4)]
    return block_matrix(field, grid, [n] * 4, [n] * 4)


def build_D(A: Matrix, B: Matrix) -> Matrix:
    """Block diagonal ``(I_n, A, B, 0_n)``."""
    if not A.is_square() or A.shape != B.shape:
        raise SizeMismatch(f"D needs square blocks of one size, got {A.shape}, {B.shape}")
    F = A.field
    n = A.nrows
    return block_diag(F, [Matrix.identity(F, n), A, B, Matrix.zeros(F, n)])


def _anti(field: Field, top: Matrix, bottom: Matrix) -> Matrix:
    m = top.nrows
    return block_matrix(field, [[None, top], [bottom, None]], [m, m], [m, m])


def build_T(P: MatrixPair, eps: EpsilonSignature) -> MatrixTuple:
    """The triple of block anti-diagonal matrices built from I, J4 and D(A, B)."""
    F = P.field
    if eps.eps1 == F.zero or eps.eps2 == F.zero:
        raise InvalidEpsilon("the first two epsilons must be nonzero")
    n = P.n
    I = Matrix.identity(F, 4 * n)
    J = build_J4(F, n)
    D = build_D(P.A, P.B)
    Dt = build_D(P.A.T, P.B.T)
    return MatrixTuple((
        _anti(F, I, I.scale(eps.eps1)),
        _anti(F, J, J.T.scale(eps.eps2)),
        _anti(F, D, Dt.scale(eps.eps3)),
    ))


def build_G(P: MatrixPair) -> MatrixTuple:
    """The triple ``(I_4n, J4(0_n), D(A, B))``."""
    F = P.field
    return MatrixTuple((Matrix.identity(F, 4 * P.n), build_J4(F, P.n), build_D(P.A, P.B)))


def witness_from_similarity(S: Matrix, n: int | None = None, eps: EpsilonSignature | None = None) -> CongruenceWitness:
    """``R = diag((S^T)^-1 x4, S x4)`` so that ``R^T T(A,B) R = T(S^-1 A S, S^-1 B S)``.

    ``eps`` does not change ``R``; it is accepted so call sites can mirror
    :func:`build_T`.
    """
    if not S.is_square():
        raise SizeMismatch("similarity matrix must be square")
    if n is not None and S.nrows != n:
        raise SizeMismatch(f"S is {S.nrows}x{S.nrows}, expected n={n}")
    StI = inverse(S.T)
    return CongruenceWitness(block_diag(S.field, [StI] * 4 + [S] * 4))


def _intertwiner_basis(P1: MatrixPair, P2: MatrixPair) -> list[Matrix]:
    """Basis of ``{S : A S = S C and B S = S D}``."""
    F = P1.field
    n = P1.n
    rows = []
    for X, Y in ((P1.A, P2.A), (P1.B, P2.B)):
        for i in range(n):
            for j in range(n):
                row = [F.zero] * (n * n)
                for k in range(n):
                    # (X S)_{ij} contributes X_ik S_kj
                    row[k * n + j] = F.add(row[k * n + j], X.rows[i][k])
                    # (S Y)_{ij} contributes S_il Y_lj
                    row[i * n + k] = F.sub(row[i * n + k], Y.rows[k][j])
                rows.append(row)
    system = Matrix._raw(F, rows, len(rows), n * n)
    return [Matrix._raw(F, [v[i * n:(i + 1) * n] for i in range(n)], n, n) for v in nullspace(system)]


def _combine(F: Field, coeffs, basis: list[Matrix]) -> Matrix:
    n = basis[0].nrows
    rows = [[F.zero] * n for _ in range(n)]
    for c, X in zip(coeffs, basis):
        if c == F.zero:
            continue
        for i in range(n):
            ri, xi = rows[i], X.rows[i]
            for j in range(n):
                if xi[j] != F.zero:
                    ri[j] = F.add(ri[j], F.mul(c, xi[j]))
    return Matrix._raw(F, rows, n, n)


def intertwiner_similarity(P1: MatrixPair, P2: MatrixPair, limit: int = SEARCH_LIMIT) -> SimilarityWitness | None:
    """Return ``S`` with ``S^-1 (A, B) S = (C, D)``, or ``None`` if the pairs are not similar.

    Single basis elements are tried first.  Over a finite field the
    intertwiner space is then searched exhaustively in lexicographic
    coefficient order.  Over the rationals a few deterministic
    probes are tried first; absence is then proved by exhausting the grid
    ``{0..n}^d``, on which ``det`` of a generic element cannot vanish
    identically unless it is the zero polynomial.
    """
    if P1.n != P2.n or P1.field != P2.field:
        raise SizeMismatch("pairs must share size and field")
    F = P1.field
    n = P1.n
    if n == 0:
        return SimilarityWitness(Matrix.zeros(F, 0))
    basis = _intertwiner_basis(P1, P2)
    d = len(basis)
    if d == 0:
        return None
    z = F.zero

    def attempt(coeffs):
        X = _combine(F, coeffs, basis)
        if det(X) != z:
            return SimilarityWitness(X)
        return None

    # single basis elements first: they give the sparsest witnesses
    for i in range(d):
        w = attempt([F.one if j == i else z for j in range(d)])
        if w is not None:
            return w

    if F.is_finite:
        if F.order ** d > limit:
            raise DeskScaleExceeded(f"intertwiner space of dimension {d} over GF({F.order}) is too large")
        for coeffs in itertools.product(range(F.order), repeat=d):
            if any(coeffs):
                w = attempt(coeffs)
                if w is not None:
                    return w
        return None

    rng = random.Random(1234)
    probes = [[F.coerce(i + 1) for i in range(d)]]
    probes += [[F.coerce(rng.randint(-9, 9)) for _ in range(d)] for _ in range(8)]
    for coeffs in probes:
        w = attempt(coeffs)
        if w is not None:
            return w
    if (n + 1) ** d > limit:
        raise DeskScaleExceeded(f"cannot certify absence: grid {(n + 1)}^{d} exceeds the search limit")
    for coeffs in itertools.product(range(n + 1), repeat=d):
        if any(coeffs):
            w = attempt([F.coerce(c) for c in coeffs])
            if w is not None:
                return w
    return None


def build_T_lemma42(P: MatrixPair, eps) -> MatrixTuple:
    """The rank-separated triple of size ``342 + 8n`` built around the pair gadget.

    Summands, each doubled with sign ``eps``: ``(I_100, 0, 0)``,
    ``(0, I_50, 0)``, ``(0, 0, I_20)``, ``(I_1, I_1, I_1)`` and
    ``(I_4n, J4(0_n), D(A, B))``.
    """
    F = P.field
    eps = F.coerce(eps)
    if eps != F.one and eps != F.neg(F.one):
        raise InvalidEpsilon("eps must be 1 or -1")

    def block(k, pattern):
        return MatrixTuple(tuple(Matrix.identity(F, k) if on else Matrix.zeros(F, k) for on in pattern))

    parts = [
        block(100, (1, 0, 0)),
        block(50, (0, 1, 0)),
        block(20, (0, 0, 1)),
        block(1, (1, 1, 1)),
        build_G(P),
    ]
    return direct_sum([vee_lift(T, eps) for T in parts])
