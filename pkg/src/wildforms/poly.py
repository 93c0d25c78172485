"""Univariate polynomials over an exact field, factorization and char polys.

Coefficients are stored low degree first and trimmed, so the zero polynomial
has an empty coefficient tuple and degree ``DEG_ZERO``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import SizeMismatch
from .fields import Field, FiniteField, Rationals
from .matrix import Matrix

DEG_ZERO = -1


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence = ()):
        cs = [field.coerce(c) for c in coeffs]
        self._init(field, cs)

    def _init(self, field, cs):
        z = field.zero
        while cs and cs[-1] == z:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field: Field, cs) -> "Poly":
        p = cls.__new__(cls)
        p._init(field, list(cs))
        return p

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls._raw(field, [field.zero, field.one])

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls._raw(field, [c])

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls._raw(field, [field.one])

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls._raw(field, [])

    @classmethod
    def linear(cls, field: Field, root) -> "Poly":
        """The monic polynomial ``x - root``."""
        return cls._raw(field, [field.neg(root), field.one])

    # -- protocol -----------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self.format()})"

    def format(self, var: str = "x") -> str:
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == F.zero:
                continue
            cs = F.format(c)
            if i == 0:
                terms.append(cs)
            else:
                mon = var if i == 1 else f"{var}^{i}"
                terms.append(mon if c == F.one else f"({cs})*{mon}")
        return " + ".join(terms)

    def key(self):
        """Deterministic order: degree, then negated coefficients low to high.

        Negation makes monic linear factors ``x - r`` sort by their root.
        """
        F = self.field
        k, neg = F.key, F.neg
        return (self.degree, tuple(k(neg(c)) for c in self.coeffs))

    def __lt__(self, other: "Poly") -> bool:
        return self.key() < other.key()

    # -- arithmetic ---------------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        add = F.add
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly._raw(F, out)

    def __neg__(self) -> "Poly":
        neg = self.field.neg
        return Poly._raw(self.field, [neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        F = self.field
        if not isinstance(other, Poly):
            mul = F.mul
            return Poly._raw(F, [mul(other, c) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(F, [])
        if isinstance(F, FiniteField) and F.k == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly._raw(F, [c % p for c in out])
        if isinstance(F, Rationals):
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            out[i + j] += x * y
            return Poly._raw(F, out)
        add, mul = F.add, F.mul
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly._raw(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Poly._raw(F, []), self
        inv = F.inv(other.lead)
        q = [F.zero] * (len(r) - db)
        b = other.coeffs
        z = F.zero
        if isinstance(F, FiniteField) and F.k == 1:
            p = F.p
            for i in range(len(r) - 1, db - 1, -1):
                c = r[i] * inv % p
                if c:
                    q[i - db] = c
                    s = i - db
                    for j, bj in enumerate(b):
                        r[s + j] = (r[s + j] - c * bj) % p
        else:
            sub, mul = F.sub, F.mul
            for i in range(len(r) - 1, db - 1, -1):
                c = mul(r[i], inv)
                if c != z:
                    q[i - db] = c
                    s = i - db
                    for j, bj in enumerate(b):
                        if bj != z:
                            r[s + j] = sub(r[s + j], mul(c, bj))
        return Poly._raw(F, q), Poly._raw(F, r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * self.field.inv(self.lead)

    def __call__(self, a):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def derivative(self) -> "Poly":
        F = self.field
        return Poly._raw(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, m: "Poly") -> "Poly":
        result = Poly.one(self.field)
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def roots(self) -> list:
        """Roots in the base field (finite fields: exhaustive; Q: via factoring)."""
        if self.degree < 1:
            return []
        return sorted({f.root() for f, _ in factor(self) if f.degree == 1}, key=self.field.key)

    def root(self):
        if self.degree != 1:
            raise ValueError("root() needs a linear polynomial")
        F = self.field
        return F.neg(F.div(self.coeffs[0], self.coeffs[1]))


def gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv(r0.lead)
    return r0 * inv, s0 * inv, t0 * inv


def product(field: Field, polys) -> Poly:
    acc = Poly.one(field)
    for p in polys:
        acc = acc * p
    return acc


# -- factorization ------------------------------------------------------------------

def _pth_root(f: Poly) -> Poly:
    F = f.field
    p = F.p
    cs = f.coeffs
    root = (lambda c: F.power(c, F.order // p)) if F.k > 1 else (lambda c: c)
    return Poly._raw(F, [root(cs[i]) for i in range(0, len(cs), p)])


def _squarefree_finite(f: Poly) -> list[tuple[Poly, int]]:
    F = f.field
    p = F.p
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, e * p) for g, e in _squarefree_finite(_pth_root(f))]
    c = gcd(f, df)
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, e * p) for g, e in _squarefree_finite(_pth_root(c.monic())))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    F = f.field
    q = F.order
    out = []
    x = Poly.x(F)
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.degree == d:
        return [f.monic()]
    F = f.field
    q = F.order
    e = (q ** d - 1) // 2
    while True:
        a = Poly._raw(F, [F.random_element(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        g = gcd(a, f)
        if 0 < g.degree < f.degree:
            break
        b = a.powmod(e, f) - Poly.one(F)
        g = gcd(b, f)
        if 0 < g.degree < f.degree:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def _factor_finite(f: Poly) -> list[tuple[Poly, int]]:
    rng = random.Random(0x5EED)
    out: dict[Poly, int] = {}
    for part, e in _squarefree_finite(f.monic()):
        for block, d in _distinct_degree(part):
            for irr in _equal_degree(block, d, rng):
                out[irr] = out.get(irr, 0) + e
    return list(out.items())


def _factor_rational(f: Poly) -> list[tuple[Poly, int]]:
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)],
                      x, domain="QQ")
    _, factors = expr.factor_list()
    out = []
    for g, e in factors:
        cs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
              for c in reversed(g.all_coeffs())]
        out.append((Poly._raw(f.field, cs).monic(), int(e)))
    return out


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, in deterministic order.

    The leading coefficient is dropped, so the product of the factors is
    ``f.monic()``.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree < 1:
        return []
    F = f.field
    if isinstance(F, FiniteField):
        items = _factor_finite(f)
    else:
        items = _factor_rational(f)
    return sorted(items, key=lambda fe: (fe[0].key(), fe[1]))


def is_irreducible(f: Poly) -> bool:
    fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1


def splits(f: Poly) -> bool:
    return all(g.degree == 1 for g, _ in factor(f))


# -- characteristic polynomial ---------------------------------------------------------

def charpoly(M: Matrix) -> Poly:
    """``det(xI - M)`` via reduction to Hessenberg form."""
    if not M.is_square():
        raise SizeMismatch("characteristic polynomial needs a square matrix")
    F = M.field
    n = M.nrows
    H = [list(r) for r in M.rows]
    z = F.zero
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1] != z), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for row in H:
                row[m], row[piv] = row[piv], row[m]
        inv = F.inv(H[m][m - 1])
        for j in range(m + 1, n):
            u = F.mul(H[j][m - 1], inv)
            if u == z:
                continue
            H[j] = [F.sub(a, F.mul(u, b)) for a, b in zip(H[j], H[m])]
            for row in H:
                row[m] = F.add(row[m], F.mul(u, row[j]))
    x = Poly.x(F)
    ps = [Poly.one(F)]
    for m in range(1, n + 1):
        pm = (x - Poly.const(F, H[m - 1][m - 1])) * ps[m - 1]
        t = F.one
        for i in range(m - 1, 0, -1):
            t = F.mul(t, H[i][i - 1])
            coeff = F.mul(H[i - 1][m - 1], t)
            if coeff != z:
                pm = pm - ps[i - 1] * coeff
        ps.append(pm)
    return ps[n]


def charpoly_factor(M: Matrix) -> list[tuple[Poly, int]]:
    """Irreducible factorization of ``det(xI - M)`` in deterministic order."""
    return factor(charpoly(M))


def companion(f: Poly) -> Matrix:
    """Companion matrix of a monic polynomial (ones on the subdiagonal)."""
    F = f.field
    f = f.monic()
    n = f.degree
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = F.one
    for i in range(n):
        rows[i][n - 1] = F.neg(f.coeffs[i])
    return Matrix._raw(F, rows, n, n)
