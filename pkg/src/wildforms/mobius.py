"""Labelled point configurations on the projective line and their normal forms.

The group ``PGL_2`` acts by ``lam -> (g + d*lam) / (a + b*lam)`` with the
element written as ``(a, b, g, d)``; the point at infinity goes to ``d / b``.
A configuration attaches a multiset of block sizes to each point.  Points
that are not rational over the base field are carried as monic irreducible
polynomials of degree at least two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DeskScaleExceeded, SingularMobius
from .fields import Field
from .poly import Poly

# Largest |PGL_2(F_q)| = q^3 - q enumerated when no rational triple exists.
PGL2_LIMIT = 10 ** 6

IDENTITY = (1, 0, 0, 1)


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def point_key(field: Field, pt) -> tuple:
    """Encoding order: field elements, then infinity, then irreducibles."""
    if pt is INF:
        return (1,)
    if isinstance(pt, Poly):
        return (2,) + pt.key()
    return (0, field.key(pt))


@dataclass(frozen=True)
class PointConfiguration:
    field: Field
    points: tuple[tuple[object, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        F = self.field
        seen = set()
        norm = []
        for pt, bundle in self.points:
            if isinstance(pt, Poly):
                pt = pt.monic()
                if pt.degree < 2:
                    raise ValueError("polynomial points must have degree >= 2; use field elements otherwise")
            elif pt is not INF:
                pt = F.coerce(pt)
            bundle = tuple(sorted((int(m) for m in bundle), reverse=True))
            if not bundle or any(m < 1 for m in bundle):
                raise ValueError("bundles must be nonempty multisets of positive sizes")
            k = point_key(F, pt)
            if k in seen:
                raise ValueError(f"point {pt!r} listed twice")
            seen.add(k)
            norm.append((pt, bundle))
        norm.sort(key=lambda e: point_key(F, e[0]))
        object.__setattr__(self, "points", tuple(norm))

    def encoding(self) -> tuple:
        F = self.field
        return tuple((point_key(F, pt), bundle) for pt, bundle in self.points)

    def __len__(self) -> int:
        return len(self.points)

    def rational_points(self) -> list:
        return [pt for pt, _ in self.points if not isinstance(pt, Poly)]

    def is_split(self) -> bool:
        return not any(isinstance(pt, Poly) for pt, _ in self.points)

    def bundle(self, pt) -> tuple[int, ...] | None:
        k = point_key(self.field, pt)
        for q, b in self.points:
            if point_key(self.field, q) == k:
                return b
        return None


def check_group_element(field: Field, w: Sequence) -> tuple:
    a, b, g, d = (field.coerce(v) for v in w)
    if field.sub(field.mul(a, d), field.mul(b, g)) == field.zero:
        raise SingularMobius("alpha*delta - beta*gamma must be nonzero")
    return a, b, g, d


def _homogeneous(F: Field, pt) -> tuple:
    return (F.one, F.zero) if pt is INF else (pt, F.one)


def apply_to_point(field: Field, w: Sequence, pt):
    """Image of a rational point or of an irreducible polynomial's root set."""
    F = field
    a, b, g, d = w
    if isinstance(pt, Poly):
        from .pencil import transform_irreducible
        return transform_irreducible(pt, (a, b, g, d))
    x, y = _homogeneous(F, pt)
    num = F.add(F.mul(d, x), F.mul(g, y))
    den = F.add(F.mul(b, x), F.mul(a, y))
    if den == F.zero:
        return INF
    return F.div(num, den)


def apply_mobius(C: PointConfiguration, w: Sequence) -> PointConfiguration:
    F = C.field
    w = check_group_element(F, w)
    return PointConfiguration(F, tuple((apply_to_point(F, w, pt), b) for pt, b in C.points))


def compose(field: Field, w2: Sequence, w1: Sequence) -> tuple:
    """Element acting as ``w1`` first and then ``w2``.

    ``(a, b, g, d)`` acts on homogeneous coordinates by ``[[d, g], [b, a]]``.
    """
    F = field
    a1, b1, g1, d1 = w1
    a2, b2, g2, d2 = w2
    m1 = ((d1, g1), (b1, a1))
    m2 = ((d2, g2), (b2, a2))
    m = [[F.add(F.mul(m2[i][0], m1[0][j]), F.mul(m2[i][1], m1[1][j])) for j in range(2)] for i in range(2)]
    return (m[1][1], m[1][0], m[0][1], m[0][0])


def triple_to_anchors(field: Field, p1, p2, p3) -> tuple:
    """Group element sending ``p1, p2, p3`` to ``0, 1, inf``."""
    F = field
    x1, y1 = _homogeneous(F, p1)
    x2, y2 = _homogeneous(F, p2)
    x3, y3 = _homogeneous(F, p3)
    c1 = F.sub(F.mul(y3, x2), F.mul(x3, y2))
    c2 = F.sub(F.mul(y1, x2), F.mul(x1, y2))
    d, g = F.mul(c1, y1), F.neg(F.mul(c1, x1))
    b, a = F.mul(c2, y3), F.neg(F.mul(c2, x3))
    return check_group_element(F, (a, b, g, d))


def _projective_line(F: Field) -> Iterable:
    """Rational points in encoding order; over Q the nonnegative integers then inf."""
    if F.is_finite:
        yield from sorted(F.elements(), key=F.key)
        yield INF
    else:
        yield INF
        n = 0
        while True:
            yield F.coerce(n)
            n += 1


def _free_points(F: Field, taken: Sequence, count: int) -> list:
    keys = {point_key(F, p) for p in taken}
    out = []
    for pt in _projective_line(F):
        if point_key(F, pt) not in keys:
            out.append(pt)
            if len(out) == count:
                break
    return out


def _pgl2(F: Field) -> Iterable[tuple]:
    """One representative per class: ``d = 1``, or ``d = 0`` and ``g = 1``."""
    one, zero = F.one, F.zero
    elems = list(F.elements())
    for g in elems:
        for b in elems:
            for a in elems:
                if a != F.mul(b, g):
                    yield (a, b, g, one)
    for b in elems:
        if b != zero:
            for a in elems:
                yield (a, b, one, zero)


def mobius_canonicalize(C: PointConfiguration) -> tuple[PointConfiguration, tuple]:
    """Orbit representative of ``C`` and a group element mapping ``C`` onto it."""
    F = C.field
    ident = tuple(F.coerce(v) for v in IDENTITY)
    if not C.points:
        return C, ident
    rational = C.rational_points()
    candidates: list[tuple] = []
    if len(rational) >= 3:
        for p1, p2, p3 in itertools.permutations(rational, 3):
            candidates.append(triple_to_anchors(F, p1, p2, p3))
    elif C.is_split():
        k = len(rational)
        pad = _free_points(F, rational, 3 - k)
        for perm in itertools.permutations(rational):
            candidates.append(triple_to_anchors(F, *(list(perm) + pad)))
    elif F.is_finite:
        q = F.order
        if q ** 3 - q > PGL2_LIMIT:
            raise DeskScaleExceeded(f"PGL_2 over a field of order {q} is too large to enumerate")
        candidates = list(_pgl2(F))
    else:
        raise DeskScaleExceeded("normal form of a non-split configuration with fewer than three "
                                "rational points needs a finite field")
    best = None
    for w in candidates:
        img = apply_mobius(C, w)
        enc = img.encoding()
        if best is None or enc < best[0]:
            best = (enc, img, w)
    if C.encoding() == best[0]:
        return C, ident
    return best[1], best[2]
