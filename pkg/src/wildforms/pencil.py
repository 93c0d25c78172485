"""Congruence invariants and canonical forms of skew-symmetric matrix pairs.

A pair ``(A, B)`` is studied through the pencil ``x*A - B``.  Up to
congruence it is a direct sum of doubled blocks

* ``(I_m, J_m(lam))`` -- finite eigenvalue ``lam`` (or, over a field where the
  eigenvalues do not split, ``(I, companion(q**m))`` for an irreducible ``q``),
* ``(J_m(0), I_m)`` -- the eigenvalue at infinity,
* ``(F_r, G_r)`` -- a singular block of odd size ``2r - 1``,

each doubled by ``M -> [[0, M], [-M^T, 0]]``.  Finite blocks are read from the
Smith form of the pencil, infinite ones from ranks of block Toeplitz matrices
of the reversed pencil, singular ones from kernel dimensions of block stripe
matrices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import NotSkew, SingularMobius, SizeMismatch
from .fields import Field
from .matrix import Matrix, block_matrix, rank
from .poly import Poly, companion, factor
from .smith import invariant_factors, pencil
from .tuples import MatrixTuple, apply_substitution, direct_sum, vee_lift


@dataclass(frozen=True)
class SkewPair:
    A: Matrix
    B: Matrix

    def __post_init__(self):
        if self.A.shape != self.B.shape or not self.A.is_square():
            raise SizeMismatch(f"skew pair needs square members of one size, got {self.A.shape}, {self.B.shape}")
        if self.A.field != self.B.field:
            raise SizeMismatch("pair members over different fields")
        if not self.A.is_skew() or not self.B.is_skew():
            raise NotSkew("both members must be skew-symmetric")

    @classmethod
    def from_tuple(cls, T: MatrixTuple) -> "SkewPair":
        if T.arity != 2:
            raise SizeMismatch(f"a pair has two members, got {T.arity}")
        return cls(T.members[0], T.members[1])

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def n(self) -> int:
        return self.A.nrows

    def as_tuple(self) -> MatrixTuple:
        return MatrixTuple((self.A, self.B))


@dataclass(frozen=True)
class SkewPencilInvariants:
    """Complete congruence invariant of a skew pair.

    ``finite`` holds ``(q, m)`` with ``q`` monic irreducible: a doubled block
    per entry.  ``infinite`` holds block sizes at infinity and ``minimal`` the
    indices ``r`` of the ``(F_r, G_r)`` blocks.
    """

    field: Field
    finite: tuple[tuple[Poly, int], ...] = ()
    infinite: tuple[int, ...] = ()
    minimal: tuple[int, ...] = ()
    _size: int = dc_field(default=-1, compare=False, repr=False)

    def __post_init__(self):
        fin = tuple(sorted(((q.monic(), int(m)) for q, m in self.finite), key=lambda qm: (qm[0].key(), qm[1])))
        for q, m in fin:
            if q.degree < 1 or m < 1:
                raise ValueError(f"bad finite divisor {q}^{m}")
        inf = tuple(sorted(int(m) for m in self.infinite))
        mins = tuple(sorted(int(r) for r in self.minimal))
        if any(m < 1 for m in inf) or any(r < 1 for r in mins):
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "finite", fin)
        object.__setattr__(self, "infinite", inf)
        object.__setattr__(self, "minimal", mins)
        size = (2 * sum(q.degree * m for q, m in fin) + 2 * sum(inf) + sum(2 * r - 1 for r in mins))
        object.__setattr__(self, "_size", size)

    @property
    def size(self) -> int:
        return self._size

    def splits(self) -> bool:
        return all(q.degree == 1 for q, _ in self.finite)

    def eigenvalue_blocks(self) -> list[tuple[object, int]]:
        """``(lam, m)`` for split finite blocks, ``(None, m)`` for infinite ones."""
        out = [(q.root(), m) for q, m in self.finite if q.degree == 1]
        out += [(None, m) for m in self.infinite]
        return out

    def to_json(self) -> dict:
        F = self.field
        return {
            "finite": [{"poly": [F.to_json(c) for c in q.coeffs], "m": m} for q, m in self.finite],
            "infinite": list(self.infinite),
            "minimal": list(self.minimal),
        }

    @classmethod
    def from_json(cls, field: Field, obj: dict) -> "SkewPencilInvariants":
        finite = [(Poly(field, [field.from_json(c) for c in d["poly"]]), int(d["m"])) for d in obj.get("finite", [])]
        return cls(field, tuple(finite), tuple(obj.get("infinite", [])), tuple(obj.get("minimal", [])))


# -- canonical blocks ---------------------------------------------------------------

def build_FG(field: Field, m: int) -> tuple[Matrix, Matrix]:
    """The ``(m-1) x m`` pair with ones on the diagonal / superdiagonal."""
    if m < 1:
        raise SizeMismatch("F_m, G_m need m >= 1")
    z, o = field.zero, field.one
    Fm = Matrix._raw(field, [[o if j == i else z for j in range(m)] for i in range(m - 1)], m - 1, m)
    Gm = Matrix._raw(field, [[o if j == i + 1 else z for j in range(m)] for i in range(m - 1)], m - 1, m)
    return Fm, Gm


def jordan_block(field: Field, m: int, lam) -> Matrix:
    z, o = field.zero, field.one
    return Matrix._raw(field, [[lam if i == j else (o if j == i + 1 else z) for j in range(m)] for i in range(m)], m, m)


def _doubled(field: Field, X: Matrix, Y: Matrix) -> MatrixTuple:
    return vee_lift(MatrixTuple((X, Y)), field.neg(field.one))


def canonical_blocks(inv: SkewPencilInvariants) -> list[MatrixTuple]:
    F = inv.field
    blocks = []
    for q, m in inv.finite:
        if q.degree == 1:
            blocks.append(_doubled(F, Matrix.identity(F, m), jordan_block(F, m, q.root())))
        else:
            C = companion(q ** m)
            blocks.append(_doubled(F, Matrix.identity(F, C.nrows), C))
    for m in inv.infinite:
        blocks.append(_doubled(F, jordan_block(F, m, F.zero), Matrix.identity(F, m)))
    for r in inv.minimal:
        blocks.append(_doubled(F, *build_FG(F, r)))
    return blocks


def emit_canonical_pair(inv: SkewPencilInvariants) -> SkewPair:
    """Direct sum of the doubled canonical blocks in deterministic order."""
    F = inv.field
    blocks = canonical_blocks(inv)
    if not blocks:
        return SkewPair(Matrix.zeros(F, 0), Matrix.zeros(F, 0))
    return SkewPair.from_tuple(direct_sum(blocks))


# -- invariant computation -------------------------------------------------------------

def _halve(counter: Counter, what: str) -> list:
    out = []
    for key, count in counter.items():
        if count % 2:
            raise ArithmeticError(f"{what} {key} occurs an odd number of times ({count}); "
                                  "a skew pencil must double every block")
        out.extend([key] * (count // 2))
    return out


def _finite_divisors(A: Matrix, B: Matrix) -> tuple[list[tuple[Poly, int]], int]:
    """Elementary divisors of ``x*A - B`` (with multiplicity) and the normal rank."""
    F = A.field
    facs = invariant_factors(pencil(A, B), F)
    r = len(facs)
    divisors = []
    nontrivial = [d for d in facs if d.degree > 0]
    if nontrivial:
        for q, _ in factor(nontrivial[-1]):
            for d in nontrivial:
                e = 0
                while d.degree >= q.degree:
                    quo, rem = divmod(d, q)
                    if rem:
                        break
                    d = quo
                    e += 1
                if e:
                    divisors.append((q, e))
    return divisors, r


def _toeplitz(P0: Matrix, P1: Matrix, k: int) -> Matrix:
    F = P0.field
    grid = [[P0 if i == j else (P1 if i == j + 1 else None) for j in range(k)] for i in range(k)]
    return block_matrix(F, grid, [P0.nrows] * k, [P0.ncols] * k)


def local_block_sizes(P0: Matrix, P1: Matrix, normal_rank: int) -> list[int]:
    """Sizes of the elementary divisors at ``t = 0`` of the pencil ``P0 + t*P1``.

    Uses ``rank T_k = k*r - sum_i min(k, m_i)`` for the block lower-triangular
    Toeplitz matrix ``T_k`` built from ``P0`` and ``P1``; singular blocks keep
    full rank there, so only the divisors at ``0`` register.
    """
    r = normal_rank
    defects = [0]
    k = 0
    while True:
        k += 1
        defects.append(k * r - rank(_toeplitz(P0, P1, k)))
        if defects[k] == defects[k - 1]:
            break
    at_least = [defects[j] - defects[j - 1] for j in range(1, k + 1)]
    sizes = []
    for j in range(1, k):
        count = at_least[j - 1] - at_least[j]
        sizes.extend([j] * count)
    return sorted(sizes)


def _stripe(A: Matrix, B: Matrix, k: int) -> Matrix:
    F = A.field
    mB = -B
    grid = [[(mB if i == j else (A if i == j + 1 else None)) for j in range(k + 1)] for i in range(k + 2)]
    return block_matrix(F, grid, [A.nrows] * (k + 2), [A.ncols] * (k + 1))


def column_minimal_indices(A: Matrix, B: Matrix, normal_rank: int) -> list[int]:
    """Column minimal indices of ``x*A - B`` from stripe kernel dimensions.

    With ``N_k`` the dimension of the degree-``<= k`` polynomial kernel,
    ``N_k - N_{k-1}`` counts the indices ``<= k``.
    """
    n = A.ncols
    total = n - normal_rank
    out: list[int] = []
    prev_n, prev_delta = 0, 0
    k = 0
    while len(out) < total:
        Nk = (k + 1) * n - rank(_stripe(A, B, k))
        delta = Nk - prev_n
        out.extend([k] * (delta - prev_delta))
        prev_n, prev_delta = Nk, delta
        k += 1
        if k > n + 1:  # pragma: no cover
            raise ArithmeticError("minimal index search did not terminate")
    return out


def pencil_invariants(P: SkewPair) -> SkewPencilInvariants:
    """Complete congruence invariants of a skew-symmetric pair."""
    if not isinstance(P, SkewPair):
        P = SkewPair(*P)
    F = P.field
    A, B = P.A, P.B
    n = P.n
    if n == 0:
        return SkewPencilInvariants(F)
    divisors, r = _finite_divisors(A, B)
    finite = _halve(Counter(divisors), "elementary divisor")
    infinite: list[int] = []
    if rank(A) < r:
        infinite = _halve(Counter(local_block_sizes(A, -B, r)), "infinite divisor of size")
    minimal = [e + 1 for e in column_minimal_indices(A, B, r)]
    inv = SkewPencilInvariants(F, tuple(finite), tuple(infinite), tuple(minimal))
    if inv.size != n:
        raise ArithmeticError(f"invariants account for size {inv.size}, pair has size {n}")
    return inv


def pairs_congruent(P1: SkewPair, P2: SkewPair) -> bool:
    if P1.n != P2.n or P1.field != P2.field:
        raise SizeMismatch("pairs must share size and field")
    return pencil_invariants(P1) == pencil_invariants(P2)


# -- substitutions (A, B) -> (aA + bB, cA + dB) ------------------------------------------

def check_mobius(field: Field, mobius: Sequence) -> tuple:
    a, b, c, d = (field.coerce(v) for v in mobius)
    if field.sub(field.mul(a, d), field.mul(b, c)) == field.zero:
        raise SingularMobius("alpha*delta - beta*gamma must be nonzero")
    return a, b, c, d


def transform_irreducible(q: Poly, mobius: Sequence) -> Poly:
    """Monic polynomial whose roots are the images of the roots of ``q``.

    A root ``lam`` goes to ``(g + d*lam) / (a + b*lam)``; ``q`` must have no
    root in the base field when ``b != 0``.
    """
    F = q.field
    a, b, c, d = mobius
    num = Poly._raw(F, [F.neg(c), a])          # a*mu - c
    den = Poly._raw(F, [d, F.neg(b)])          # d - b*mu
    deg = q.degree
    acc = Poly.zero(F)
    for i, coeff in enumerate(q.coeffs):
        if coeff != F.zero:
            acc = acc + (num ** i) * (den ** (deg - i)) * coeff
    return acc.monic()


def substitution_action_on_invariants(inv: SkewPencilInvariants, mobius: Sequence) -> SkewPencilInvariants:
    """Invariants of ``(aA + bB, cA + dB)`` given those of ``(A, B)``."""
    F = inv.field
    a, b, c, d = check_mobius(F, mobius)
    finite: list[tuple[Poly, int]] = []
    infinite: list[int] = []
    for q, m in inv.finite:
        if q.degree == 1:
            lam = q.root()
            num = F.add(c, F.mul(d, lam))
            den = F.add(a, F.mul(b, lam))
            if den == F.zero:
                infinite.append(m)
            else:
                finite.append((Poly.linear(F, F.div(num, den)), m))
        else:
            finite.append((transform_irreducible(q, (a, b, c, d)), m))
    for m in inv.infinite:
        if b == F.zero:
            infinite.append(m)
        else:
            finite.append((Poly.linear(F, F.div(d, b)), m))
    return SkewPencilInvariants(F, tuple(finite), tuple(infinite), inv.minimal)


def substitute_pair(P: SkewPair, mobius: Sequence) -> SkewPair:
    """``(A, B) -> (aA + bB, cA + dB)``."""
    F = P.field
    a, b, c, d = check_mobius(F, mobius)
    G = Matrix._raw(F, [[a, b], [c, d]], 2, 2)
    return SkewPair.from_tuple(apply_substitution(P.as_tuple(), G))
