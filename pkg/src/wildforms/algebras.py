"""Nilpotent algebras with ``R^3 = 0`` given by structure constants.

Such an algebra with ``dim R^2 = t`` is encoded, in a basis ``e_1..e_t`` of
``R^2`` completed by ``f_1..f_m``, by the tuple ``(A_1, .., A_t)`` of
``m x m`` matrices with ``f_i f_j = sum_k A_k[i][j] e_k``.  For Lie algebras
with a two-dimensional commutator the tuple is a skew pair whose pencil
invariants, taken modulo substitutions of the pair, classify the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    LinearlyDependent, MixedSymmetryTypes, NonSplitting, NotCommutative, NotHomogeneousSymmetry,
    NotLie, NotPrimeField, NotSkew, RadicalCubeNonzero, SizeMismatch, UnrealizableLabel,
    WrongCommutatorDim,
)
from .fields import Field, FiniteField, field_from_json
from .matrix import Matrix, block_diag, inverse, rank, rref
from .mobius import INF, PointConfiguration, apply_mobius, mobius_canonicalize, point_key
from .pencil import SkewPair, SkewPencilInvariants, emit_canonical_pair, pencil_invariants
from .poly import Poly
from .tuples import MatrixTuple, is_linearly_independent

Vector = tuple


@dataclass(frozen=True)
class StructureConstants:
    """``table[i][j]`` holds the coordinates of ``e_i e_j``."""

    field: Field
    dim: int
    table: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        F, n = self.field, self.dim
        table = tuple(tuple(tuple(F.coerce(c) for c in v) for v in row) for row in self.table)
        if len(table) != n or any(len(row) != n for row in table) or any(len(v) != n for row in table for v in row):
            raise SizeMismatch(f"structure table must be {n} x {n} of length-{n} vectors")
        object.__setattr__(self, "table", table)

    @classmethod
    def zero(cls, field: Field, n: int) -> "StructureConstants":
        z = (field.zero,) * n
        return cls(field, n, tuple(tuple(z for _ in range(n)) for _ in range(n)))

    def product(self, u: Sequence, v: Sequence) -> Vector:
        F, n = self.field, self.dim
        acc = [F.zero] * n
        for i, ui in enumerate(u):
            if ui == F.zero:
                continue
            for j, vj in enumerate(v):
                if vj == F.zero:
                    continue
                c = F.mul(ui, vj)
                for k, x in enumerate(self.table[i][j]):
                    if x != F.zero:
                        acc[k] = F.add(acc[k], F.mul(c, x))
        return tuple(acc)

    def basis_vector(self, i: int) -> Vector:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))

    def is_anticommutative(self) -> bool:
        """``u u = 0`` for every ``u``: zero diagonal and ``e_i e_j = -e_j e_i``."""
        F, n = self.field, self.dim
        for i in range(n):
            if any(c != F.zero for c in self.table[i][i]):
                return False
            for j in range(i + 1, n):
                if any(F.add(a, b) != F.zero for a, b in zip(self.table[i][j], self.table[j][i])):
                    return False
        return True

    def change_basis(self, P: Matrix) -> "StructureConstants":
        """Structure constants in the basis formed by the columns of ``P``."""
        F, n = self.field, self.dim
        if P.shape != (n, n):
            raise SizeMismatch(f"basis change must be {n} x {n}")
        Pi = inverse(P)
        cols = [tuple(P.rows[k][i] for k in range(n)) for i in range(n)]
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                v = self.product(cols[i], cols[j])
                support = [(k, x) for k, x in enumerate(v) if x != F.zero]
                row.append(tuple(F.sum(F.mul(Pi.rows[r][k], x) for k, x in support) for r in range(n)))
            table.append(tuple(row))
        return StructureConstants(F, n, tuple(table))

    def to_json(self) -> dict:
        F = self.field
        return {"field": F.spec_json(), "dim": self.dim,
                "table": [[[F.to_json(c) for c in v] for v in row] for row in self.table]}

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> "StructureConstants":
        F = field if field is not None else field_from_json(obj["field"])
        table = tuple(tuple(tuple(F.from_json(c) for c in v) for v in row) for row in obj["table"])
        return cls(F, int(obj["dim"]), table)


@dataclass(frozen=True)
class SemialgebraReport:
    cube_zero: bool
    square_dim: int
    commutative: bool
    anticommutative: bool


def _square_basis(R: StructureConstants) -> tuple[list[list], list[int]]:
    """Reduced echelon basis of ``R^2`` and its pivot columns."""
    F, n = R.field, R.dim
    vecs = [list(v) for row in R.table for v in row if any(c != F.zero for c in v)]
    if not vecs:
        return [], []
    E, pivots = rref(Matrix._raw(F, vecs, len(vecs), n))
    return [list(E.rows[i]) for i in range(len(pivots))], pivots


def check_semialgebra(R: StructureConstants) -> SemialgebraReport:
    basis, _ = _square_basis(R)
    F = R.field
    cube_zero = True
    for b in basis:
        for k in range(R.dim):
            e = R.basis_vector(k)
            if any(c != F.zero for c in R.product(b, e)) or any(c != F.zero for c in R.product(e, b)):
                cube_zero = False
                break
        if not cube_zero:
            break
    return SemialgebraReport(cube_zero, len(basis), R.is_commutative(), R.is_anticommutative())


def semialgebra_from_tuple(T: MatrixTuple) -> StructureConstants:
    """The algebra on ``e_1..e_t, f_1..f_m`` with ``f_i f_j = sum_k A_k[i][j] e_k``."""
    if not T.is_square():
        raise SizeMismatch("members must be square")
    if not is_linearly_independent(T):
        raise LinearlyDependent("members are linearly dependent")
    sym = all(A.is_symmetric() for A in T.members)
    skew = all(A.is_skew() for A in T.members)
    if not (sym or skew):
        raise MixedSymmetryTypes("members must be all symmetric or all skew-symmetric")
    F = T.field
    t, m = T.arity, T.size
    n = t + m
    z = (F.zero,) * n
    table = [[z] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            table[t + i][t + j] = tuple(T.members[k].rows[i][j] for k in range(t)) + (F.zero,) * m
    return StructureConstants(F, n, tuple(tuple(r) for r in table))


def tuple_from_semialgebra(R: StructureConstants) -> tuple[MatrixTuple, Matrix]:
    """Tuple of the algebra in an adapted basis, and that basis as the columns of a matrix.

    The basis starts with the reduced echelon basis of ``R^2`` and is
    completed by standard vectors outside its pivot columns, so algebras
    already in adapted position come back unchanged.
    """
    rep = check_semialgebra(R)
    if not rep.cube_zero:
        raise RadicalCubeNonzero("some product of three elements is nonzero")
    if not (rep.commutative or rep.anticommutative):
        raise NotHomogeneousSymmetry("multiplication is neither commutative nor anticommutative")
    if rep.square_dim == 0:
        raise WrongCommutatorDim("R^2 = 0, there is no tuple to extract")
    F, n = R.field, R.dim
    basis, pivots = _square_basis(R)
    t = len(basis)
    complement = [j for j in range(n) if j not in set(pivots)]
    cols = [tuple(b) for b in basis] + [R.basis_vector(j) for j in complement]
    P = Matrix._raw(F, [[cols[c][r] for c in range(n)] for r in range(n)], n, n)
    m = n - t
    members = []
    for k in range(t):
        rows = []
        for i in range(m):
            fi = cols[t + i]
            rows.append([R.product(fi, cols[t + j])[pivots[k]] for j in range(m)])
        members.append(Matrix._raw(F, rows, m, m))
    T = MatrixTuple(tuple(members))
    if semialgebra_from_tuple(T) != R.change_basis(P):  # pragma: no cover
        raise ArithmeticError("adapted basis does not reproduce the algebra")
    return T, P


def adjoin_identity(R: StructureConstants) -> StructureConstants:
    """``F*1 + R`` with ``(a1 + x)(b1 + y) = ab 1 + (a y + b x + x y)``; the unit is basis vector 0."""
    rep = check_semialgebra(R)
    if not rep.commutative:
        raise NotCommutative("identity adjunction needs a commutative algebra")
    if not rep.cube_zero:
        raise RadicalCubeNonzero("identity adjunction needs R^3 = 0")
    F, n = R.field, R.dim
    N = n + 1

    def unit(i):
        return tuple(F.one if k == i else F.zero for k in range(N))

    table = [[None] * N for _ in range(N)]
    for i in range(N):
        table[0][i] = unit(i)
        table[i][0] = unit(i)
    for i in range(n):
        for j in range(n):
            table[i + 1][j + 1] = (F.zero,) + R.table[i][j]
    L = StructureConstants(F, N, tuple(tuple(r) for r in table))
    if not is_associative(L):  # pragma: no cover
        raise ArithmeticError("adjoined algebra is not associative")
    return L


def is_associative(R: StructureConstants) -> bool:
    basis = [R.basis_vector(i) for i in range(R.dim)]
    for a in basis:
        for b in basis:
            ab = R.product(a, b)
            for c in basis:
                if R.product(ab, c) != R.product(a, R.product(b, c)):
                    return False
    return True


# -- Lie algebras with a small commutator ----------------------------------------------

@dataclass(frozen=True)
class CanonicalLabel:
    """Isomorphism label of a Lie algebra with ``L^3 = 0`` and ``dim L^2`` in ``{1, 2}``.

    ``t = 1`` uses ``(p, q)``; ``t = 2`` uses the minimal indices together with
    the normalized configuration of eigenvalue points.
    """

    t: int
    dim: int
    p: int | None = None
    q: int | None = None
    minimal: tuple[int, ...] = ()
    configuration: PointConfiguration | None = None
    split: bool = True

    def to_json(self) -> dict:
        if self.t == 1:
            return {"t": 1, "dim": self.dim, "p": self.p, "q": self.q}
        C = self.configuration
        F = C.field
        pts = []
        for pt, bundle in C.points:
            if pt is INF:
                enc = "inf"
            elif isinstance(pt, Poly):
                enc = {"poly": [F.to_json(c) for c in pt.coeffs]}
            else:
                enc = F.to_json(pt)
            pts.append({"point": enc, "sizes": list(bundle)})
        return {"t": 2, "dim": self.dim, "field": F.spec_json(), "minimal": list(self.minimal),
                "points": pts, "split": self.split}

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> "CanonicalLabel":
        t = int(obj["t"])
        if t == 1:
            return cls(1, int(obj["dim"]), int(obj["p"]), int(obj["q"]))
        F = field if field is not None else field_from_json(obj["field"])
        pts = []
        for d in obj.get("points", []):
            enc = d["point"]
            if enc == "inf":
                pt = INF
            elif isinstance(enc, dict):
                pt = Poly(F, [F.from_json(c) for c in enc["poly"]])
            else:
                pt = F.from_json(enc)
            pts.append((pt, tuple(d["sizes"])))
        C = PointConfiguration(F, tuple(pts))
        return cls(2, int(obj["dim"]), minimal=tuple(sorted(obj.get("minimal", []))), configuration=C,
                   split=C.is_split())


def configuration_from_invariants(inv: SkewPencilInvariants) -> PointConfiguration:
    bundles: dict = {}
    for q, m in inv.finite:
        pt = q.root() if q.degree == 1 else q
        bundles.setdefault(point_key(inv.field, pt), (pt, []))[1].append(m)
    if inv.infinite:
        bundles[point_key(inv.field, INF)] = (INF, list(inv.infinite))
    return PointConfiguration(inv.field, tuple((pt, tuple(b)) for pt, b in bundles.values()))


def invariants_from_configuration(C: PointConfiguration, minimal: Sequence[int]) -> SkewPencilInvariants:
    F = C.field
    finite, infinite = [], []
    for pt, bundle in C.points:
        if pt is INF:
            infinite.extend(bundle)
        else:
            q = pt if isinstance(pt, Poly) else Poly.linear(F, pt)
            finite.extend((q, m) for m in bundle)
    return SkewPencilInvariants(F, tuple(finite), tuple(infinite), tuple(minimal))


def _check_lie(L: StructureConstants) -> int:
    rep = check_semialgebra(L)
    if not rep.anticommutative:
        raise NotLie("multiplication is not anticommutative")
    if not rep.cube_zero:
        raise NotLie("L^3 is nonzero")
    if rep.square_dim not in (1, 2):
        raise WrongCommutatorDim(f"dim L^2 = {rep.square_dim}; only 1 and 2 are classified")
    return rep.square_dim


def lie_classify(L: StructureConstants, allow_nonsplit: bool = True) -> CanonicalLabel:
    t = _check_lie(L)
    T, _ = tuple_from_semialgebra(L)
    if t == 1:
        q = rank(T.members[0]) // 2
        return CanonicalLabel(1, L.dim, p=L.dim - 2 * q, q=q)
    inv = pencil_invariants(SkewPair.from_tuple(T))
    C = configuration_from_invariants(inv)
    if not C.is_split() and not allow_nonsplit:
        raise NonSplitting("eigenvalues of the commutator pencil do not lie in the base field")
    canon, _ = mobius_canonicalize(C)
    return CanonicalLabel(2, L.dim, minimal=inv.minimal, configuration=canon, split=canon.is_split())


def lie_isomorphic(L1: StructureConstants, L2: StructureConstants) -> bool:
    if L1.field != L2.field:
        raise SizeMismatch("algebras over different fields")
    return lie_classify(L1) == lie_classify(L2)


def _relocation_point(C: PointConfiguration):
    """Smallest rational point not in the support, or ``None`` when the line is full."""
    F = C.field
    taken = {point_key(F, pt) for pt, _ in C.points}
    if F.is_finite:
        for c in sorted(F.elements(), key=F.key):
            if point_key(F, c) not in taken:
                return c
        return None
    n = 0
    while True:
        c = F.coerce(n)
        if point_key(F, c) not in taken:
            return c
        n += 1


def emit_canonical_algebra(label: CanonicalLabel, field: Field) -> StructureConstants:
    """A Lie algebra carrying ``label``."""
    F = field
    if label.t == 1:
        p, q = label.p, label.q
        if q is None or p is None or q < 1 or p < 1 or p + 2 * q != label.dim:
            raise UnrealizableLabel(f"(p, q) = ({p}, {q}) does not describe a commutator of dimension 1")
        I = Matrix.identity(F, q)
        K = Matrix._raw(F, [[F.zero] * q + list(I.rows[i]) for i in range(q)]
                        + [[F.neg(x) for x in I.rows[i]] + [F.zero] * q for i in range(q)], 2 * q, 2 * q)
        A = block_diag(F, [Matrix.zeros(F, p - 1), K])
        return semialgebra_from_tuple(MatrixTuple((A,)))
    if label.t != 2 or label.configuration is None:
        raise UnrealizableLabel("labels need t in {1, 2}")
    C = label.configuration
    if C.field != F:
        raise SizeMismatch("label configuration lives over another field")
    if any(pt is INF for pt, _ in C.points):
        c = _relocation_point(C)
        if c is not None:
            # x -> 1/(x - c) moves infinity to 0 and c to infinity
            C = apply_mobius(C, (F.neg(c), F.one, F.one, F.zero))
    inv = invariants_from_configuration(C, label.minimal)
    P = emit_canonical_pair(inv)
    if P.n + 2 != label.dim:
        raise UnrealizableLabel(f"blocks have total size {P.n}, label dimension is {label.dim}")
    T = P.as_tuple()
    if not is_linearly_independent(T):
        raise UnrealizableLabel("the emitted pair is linearly dependent")
    return semialgebra_from_tuple(T)


# -- p-groups -----------------------------------------------------------------------------

def pgroup_presentation(T: MatrixTuple) -> str:
    """Presentation of the class-2 group of exponent ``p`` attached to a skew tuple.

    Central generators ``a1..at``, further generators ``b1..bn``; relators are
    ``a_l^p``, ``b_i^p``, ``Comm(a_l, a_r)``, ``Comm(a_l, b_i)`` and
    ``Comm(b_i, b_j) * (a1^c1 .. at^ct)^-1`` with ``c_k = A_k[i][j]``.
    """
    F = T.field
    if not isinstance(F, FiniteField) or F.k != 1:
        raise NotPrimeField("presentations need a prime field")
    if not T.is_square() or not all(A.is_skew() for A in T.members):
        raise NotSkew("members must be skew-symmetric")
    if not is_linearly_independent(T):
        raise LinearlyDependent("members are linearly dependent")
    p, t, n = F.p, T.arity, T.size
    a = [f"a{l + 1}" for l in range(t)]
    b = [f"b{i + 1}" for i in range(n)]
    rels = [f"{g}^{p}" for g in a] + [f"{g}^{p}" for g in b]
    rels += [f"Comm({a[l]},{a[r]})" for l in range(t) for r in range(l + 1, t)]
    rels += [f"Comm({a[l]},{b[i]})" for l in range(t) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            word = f"Comm({b[i]},{b[j]})"
            for k in range(t):
                c = T.members[k].rows[i][j]
                if c:
                    word += f"*{a[k]}^-{c}"
            rels.append(word)
    gens = ", ".join(f'"{g}"' for g in a + b)
    lines = [
        f"# order {p}^{t + n}: {t} central and {n} further generators, {len(rels)} relators",
        f"F := FreeGroup({gens});",
        "AssignGeneratorVariables(F);",
        "rels := [",
        ",\n".join(f"  {r}" for r in rels),
        "];",
        "G := F / rels;",
    ]
    return "\n".join(lines) + "\n"
