from __future__ import annotations

import itertools
import random

import pytest

from wildforms.errors import DeskScaleExceeded, SingularMobius
from wildforms.fields import FiniteField, Q
from wildforms.mobius import (
    INF, PointConfiguration, _pgl2, apply_mobius, apply_to_point, check_group_element, compose,
    mobius_canonicalize, triple_to_anchors,
)
from wildforms.poly import Poly, is_irreducible


def conf(F, *pts):
    return PointConfiguration(F, tuple(pts))


def canon(C):
    return mobius_canonicalize(C)[0]


def test_single_point(F7):
    for lam in list(F7.elements()) + [INF]:
        out, w = mobius_canonicalize(conf(F7, (lam, (1,))))
        assert out == conf(F7, (0, (1,)))
        assert apply_mobius(conf(F7, (lam, (1,))), w) == out


def test_two_points_equivalent(F7):
    a = conf(F7, (0, (1,)), (INF, (1,)))
    b = conf(F7, (3, (1,)), (6, (1,)))
    assert canon(a) == canon(b)
    b = conf(Q, (3, (1,)), (7, (1,)))
    assert canon(conf(Q, (0, (1,)), (INF, (1,)))) == canon(b)


def test_inversion_compatible(F7):
    C = conf(F7, (0, (2,)), (2, (1,)), (5, (1, 1)))
    inv = (0, 1, 1, 0)
    D = apply_mobius(C, inv)
    assert D.bundle(INF) == (2,)
    (c1, w1), (c2, w2) = mobius_canonicalize(C), mobius_canonicalize(D)
    assert c1 == c2
    # w2 after inv also carries C onto the canonical form
    assert apply_mobius(C, compose(F7, w2, inv)) == c1


def test_bundles_distinguish(F7):
    assert canon(conf(F7, (0, (2,)))) != canon(conf(F7, (0, (1,))))


def test_triple_to_anchors(F7):
    for p in itertools.permutations(list(F7.elements()) + [INF], 3):
        w = triple_to_anchors(F7, *p)
        assert [apply_to_point(F7, w, x) for x in p] == [0, 1, INF]


def test_apply_conventions(F7):
    # lam -> (g + d lam) / (a + b lam), and inf -> [d : b]
    w = check_group_element(F7, (1, 0, 1, 1))
    assert apply_to_point(F7, w, 0) == 1
    w = check_group_element(F7, (0, 1, 1, 0))
    assert apply_to_point(F7, w, INF) == 0
    assert apply_to_point(F7, w, 0) == INF
    with pytest.raises(SingularMobius):
        check_group_element(F7, (1, 2, 3, 6))


def test_pgl2_size(F3):
    assert len(set(_pgl2(F3))) == 3 ** 3 - 3


def test_idempotence_returns_identity(F7):
    C = conf(F7, (1, (1,)), (4, (2,)))
    c, _ = mobius_canonicalize(C)
    again, w = mobius_canonicalize(c)
    assert again == c and w == (1, 0, 0, 1)


def _orbit(C):
    return {apply_mobius(C, w).encoding() for w in _pgl2(C.field)}


def test_exhaustive_F3():
    """Canonical forms separate exactly the PGL2 orbits of small configurations."""
    F3 = FiniteField(3)
    line = [0, 1, 2, INF]
    quad = [Poly(F3, [1, 0, 1]), Poly(F3, [2, 1, 1]), Poly(F3, [2, 2, 1])]
    assert all(is_irreducible(q) for q in quad)
    bundles = [(1,), (2,), (1, 1)]
    confs = []
    for k in range(4):
        for pts in itertools.combinations(line + quad[:1], k):
            for bs in itertools.product(bundles, repeat=k):
                confs.append(conf(F3, *zip(pts, bs)))
    seen: dict = {}
    for C in confs:
        c, w = mobius_canonicalize(C)
        assert apply_mobius(C, w) == c
        orbit = frozenset(_orbit(C))
        assert c.encoding() in orbit
        assert seen.setdefault(orbit, c) == c
    # every orbit has exactly one canonical form and vice versa
    assert len(set(seen.values())) == len(seen)


def random_config(F, rng):
    pts = {}
    for _ in range(rng.randint(1, 5)):
        if rng.random() < 0.25:
            while True:
                q = Poly(F, [rng.randrange(7), rng.randrange(7), 1])
                if is_irreducible(q):
                    break
            pt = q
        else:
            pt = rng.choice(list(F.elements()) + [INF])
        pts[repr(pt)] = (pt, tuple(rng.choice([1, 2]) for _ in range(rng.randint(1, 2))))
    return PointConfiguration(F, tuple(pts.values()))


def test_random_F7_invariance(F7):
    rng = random.Random(11)
    group = list(_pgl2(F7))
    for _ in range(60):
        C = random_config(F7, rng)
        c, w = mobius_canonicalize(C)
        assert apply_mobius(C, w) == c
        g = rng.choice(group)
        assert canon(apply_mobius(C, g)) == c


def test_rational_nonsplit_small_raises():
    q = Poly(Q, [1, 0, 1])
    with pytest.raises(DeskScaleExceeded):
        mobius_canonicalize(conf(Q, (q, (1,))))


def test_rational_nonsplit_with_three_points():
    q = Poly(Q, [1, 0, 1])
    C = conf(Q, (q, (1,)), (0, (1,)), (1, (1,)), (5, (2,)))
    c, w = mobius_canonicalize(C)
    assert apply_mobius(C, w) == c
    assert canon(apply_mobius(C, (1, 2, 3, 1))) == c


def test_configuration_validation(F7):
    with pytest.raises(ValueError):
        conf(F7, (0, (1,)), (7, (1,)))
    with pytest.raises(ValueError):
        conf(F7, (0, ()))
