"""Matrix tuples and the group actions on them.

A tuple is acted on by equivalence ``R T S``, congruence ``Q^T T Q`` and by
invertible linear substitutions that replace each member with a linear
combination of all members.  The involution is the identity throughout, so
``A*`` is ``A.T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ArityMismatch, InvalidEpsilon, SizeMismatch, Singular
from .fields import Field
from .matrix import Matrix, block_diag, block_matrix, is_invertible, linear_combination, rank


@dataclass(frozen=True)
class MatrixTuple:
    """A nonempty sequence of equally sized matrices over one field."""

    members: tuple[Matrix, ...]

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ArityMismatch("a matrix tuple needs at least one member")
        shape, field = members[0].shape, members[0].field
        for m in members[1:]:
            if m.shape != shape:
                raise SizeMismatch(f"member shapes differ: {shape} vs {m.shape}")
            if m.field != field:
                raise SizeMismatch("members live over different fields")

    @classmethod
    def of(cls, *members: Matrix) -> "MatrixTuple":
        return cls(tuple(members))

    @property
    def field(self) -> Field:
        return self.members[0].field

    @property
    def arity(self) -> int:
        return len(self.members)

    @property
    def shape(self) -> tuple[int, int]:
        return self.members[0].shape

    @property
    def size(self) -> int:
        """Row count; for square tuples this is the size n."""
        return self.members[0].nrows

    def is_square(self) -> bool:
        return self.members[0].is_square()

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> Matrix:
        return self.members[i]

    def transpose(self) -> "MatrixTuple":
        return MatrixTuple(tuple(m.T for m in self.members))


@dataclass(frozen=True)
class EpsilonSignature:
    eps1: object
    eps2: object
    eps3: object

    @classmethod
    def parse(cls, field: Field, values) -> "EpsilonSignature":
        if isinstance(values, str):
            values = [v for v in values.split(",") if v.strip()]
        vals = [field.coerce(v) for v in values]
        if len(vals) != 3:
            raise InvalidEpsilon(f"need three epsilons, got {len(vals)}")
        return cls(*vals)

    def as_tuple(self) -> tuple:
        return (self.eps1, self.eps2, self.eps3)


def _require_square(T: MatrixTuple) -> None:
    if not T.is_square():
        raise SizeMismatch(f"members must be square, got {T.shape}")


def vee(A: Matrix, eps) -> Matrix:
    """``[[0, A], [eps*A^T, 0]]`` for a possibly rectangular ``A``."""
    F = A.field
    m, n = A.shape
    return block_matrix(F, [[None, A], [A.T.scale(eps), None]], [m, n], [m, n])


def vee_lift(T: MatrixTuple, eps) -> MatrixTuple:
    """Apply the doubling ``A -> [[0, A], [eps A^T, 0]]`` to every member."""
    eps = T.field.coerce(eps)
    return MatrixTuple(tuple(vee(m, eps) for m in T.members))


def _is_unit_sign(F: Field, eps) -> bool:
    return eps == F.one or eps == F.neg(F.one)


def direct_sum(tuples: Sequence[MatrixTuple]) -> MatrixTuple:
    if not tuples:
        raise ArityMismatch("direct sum of nothing")
    t = tuples[0].arity
    F = tuples[0].field
    for T in tuples:
        if T.arity != t:
            raise ArityMismatch(f"arity {T.arity} differs from {t}")
        if T.field != F:
            raise SizeMismatch("tuples over different fields")
    return MatrixTuple(tuple(block_diag(F, [T.members[i] for T in tuples]) for i in range(t)))


def apply_congruence(T: MatrixTuple, Q: Matrix) -> MatrixTuple:
    """Members become ``Q^T A Q``."""
    _require_square(T)
    if not Q.is_square() or Q.nrows != T.size:
        raise SizeMismatch(f"congruence matrix {Q.shape} does not fit size {T.size}")
    if not is_invertible(Q):
        raise Singular("congruence matrix is singular")
    Qt = Q.T
    return MatrixTuple(tuple(Qt @ A @ Q for A in T.members))


def apply_equivalence(T: MatrixTuple, R: Matrix, S: Matrix) -> MatrixTuple:
    """Members become ``R A S``."""
    m, n = T.shape
    if not R.is_square() or R.nrows != m or not S.is_square() or S.nrows != n:
        raise SizeMismatch(f"transforms {R.shape}, {S.shape} do not fit {T.shape}")
    if not is_invertible(R) or not is_invertible(S):
        raise Singular("equivalence transforms must be invertible")
    return MatrixTuple(tuple(R @ A @ S for A in T.members))


@dataclass(frozen=True)
class SubstitutionMatrix:
    gamma: Matrix

    def __post_init__(self):
        if not self.gamma.is_square():
            raise SizeMismatch("substitution matrix must be square")
        if not is_invertible(self.gamma):
            raise Singular("substitution matrix must be nonsingular")


def apply_substitution(T: MatrixTuple, G: SubstitutionMatrix | Matrix) -> MatrixTuple:
    """Member ``i`` becomes ``sum_j gamma[i][j] * A_j``."""
    gamma = G.gamma if isinstance(G, SubstitutionMatrix) else SubstitutionMatrix(G).gamma
    if gamma.nrows != T.arity:
        raise ArityMismatch(f"{gamma.nrows}x{gamma.nrows} substitution on arity {T.arity}")
    F = T.field
    return MatrixTuple(tuple(linear_combination(F, gamma.rows[i], T.members)
                             for i in range(T.arity)))


@dataclass(frozen=True)
class SplitComponent:
    component: MatrixTuple
    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]


def permutation_split(T: MatrixTuple, mode: str | None = None) -> list[SplitComponent]:
    """Finest splitting of ``T`` into a direct sum by permuting rows and columns.

    ``mode="congruence"`` (default for square tuples) applies one permutation
    to rows and columns alike, so indices ``i`` and ``j`` are joined whenever
    entry ``(i, j)`` is nonzero in some member.  ``mode="equivalence"`` permutes
    rows and columns independently over the bipartite support graph.
    Components are ordered by their smallest row index.
    """
    if mode is None:
        mode = "congruence" if T.is_square() else "equivalence"
    m, n = T.shape
    z = T.field.zero
    if mode == "congruence":
        _require_square(T)
        parent = list(range(m))
        offset = 0
    elif mode == "equivalence":
        parent = list(range(m + n))
        offset = m
    else:
        raise ValueError(f"unknown mode {mode!r}")

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for A in T.members:
        for i, row in enumerate(A.rows):
            for j, x in enumerate(row):
                if x != z:
                    ra, rb = find(i), find(offset + j)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, tuple[list[int], list[int]]] = {}
    if mode == "congruence":
        for i in range(m):
            groups.setdefault(find(i), ([], []))[0].append(i)
        for g in groups.values():
            g[1].extend(g[0])
    else:
        for i in range(m):
            groups.setdefault(find(i), ([], []))[0].append(i)
        for j in range(n):
            groups.setdefault(find(m + j), ([], []))[1].append(j)

    def order(g):
        rows, cols = g
        return (min(rows) if rows else m, min(cols) if cols else n)

    out = []
    for rows, cols in sorted(groups.values(), key=order):
        comp = MatrixTuple(tuple(A.submatrix(rows, cols) for A in T.members))
        out.append(SplitComponent(comp, tuple(rows), tuple(cols)))
    return out


def reassemble(parts: Sequence[SplitComponent], shape: tuple[int, int]) -> MatrixTuple:
    """Inverse of :func:`permutation_split`: scatter components back in place."""
    first = parts[0].component
    F = first.field
    m, n = shape
    z = F.zero
    out = [[[z] * n for _ in range(m)] for _ in range(first.arity)]
    for part in parts:
        for k, A in enumerate(part.component.members):
            for a, i in enumerate(part.row_indices):
                for b, j in enumerate(part.col_indices):
                    out[k][i][j] = A.rows[a][b]
    return MatrixTuple(tuple(Matrix._raw(F, rows, m, n) for rows in out))


def check_form_types(T: MatrixTuple, eps: EpsilonSignature | Sequence) -> bool:
    """True iff ``A_i^T == eps_i * A_i`` for every member."""
    F = T.field
    signs = eps.as_tuple() if isinstance(eps, EpsilonSignature) else tuple(F.coerce(e) for e in eps)
    if len(signs) != T.arity:
        raise ArityMismatch(f"{len(signs)} signs for arity {T.arity}")
    if not T.is_square():
        return False
    for e in signs:
        if not _is_unit_sign(F, e):
            raise InvalidEpsilon("form-type signs must be 1 or -1")
    return all(A.T == A.scale(e) for A, e in zip(T.members, signs))


def member_ranks(T: MatrixTuple) -> list[int]:
    return [rank(A) for A in T.members]


def span_dimension(T: MatrixTuple) -> int:
    """Dimension of the linear span of the members."""
    F = T.field
    vecs = [list(A.entries()) for A in T.members]
    if not vecs[0]:
        return 0
    return rank(Matrix._raw(F, vecs, len(vecs), len(vecs[0])))


def is_linearly_independent(T: MatrixTuple) -> bool:
    return span_dimension(T) == T.arity
