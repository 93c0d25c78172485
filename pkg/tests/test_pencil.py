from __future__ import annotations

import itertools
import random
from collections import defaultdict

import pytest
from hypothesis import given, settings, strategies as st

from wildforms.errors import NotSkew, SingularMobius
from wildforms.fields import FiniteField, Q
from wildforms.matrix import Matrix
from wildforms.oracles import brute_orbit_classes
from wildforms.pencil import (
    SkewPair, SkewPencilInvariants, build_FG, emit_canonical_pair, local_block_sizes,
    pairs_congruent, pencil_invariants, substitute_pair, substitution_action_on_invariants,
    transform_irreducible,
)
from wildforms.poly import Poly
from wildforms.sampling import random_invertible, random_skew
from wildforms.smith import invariant_factors, pencil
from wildforms.tuples import MatrixTuple, apply_congruence, direct_sum, vee_lift

K = [[0, 1], [-1, 0]]


def lin(F, lam):
    return Poly.linear(F, lam)


def congruent_pair(P, Q_):
    return SkewPair.from_tuple(apply_congruence(P.as_tuple(), Q_))


def test_build_FG(QQ):
    F1, G1 = build_FG(QQ, 1)
    assert F1.shape == G1.shape == (0, 1)
    F2, G2 = build_FG(QQ, 2)
    assert F2 == Matrix(QQ, [[1, 0]]) and G2 == Matrix(QQ, [[0, 1]])
    lifted = vee_lift(MatrixTuple((F2, G2)), -1)
    assert lifted.size == 3
    SkewPair.from_tuple(lifted)


def test_emit_examples(F7, QQ):
    P = emit_canonical_pair(SkewPencilInvariants(F7, ((lin(F7, 4), 1),)))
    assert P.A == Matrix(F7, K) and P.B == Matrix(F7, [[0, 4], [-4, 0]])
    P = emit_canonical_pair(SkewPencilInvariants(QQ, minimal=(1,)))
    assert P.A == Matrix.zeros(QQ, 1) and P.B == Matrix.zeros(QQ, 1)
    P = emit_canonical_pair(SkewPencilInvariants(QQ, infinite=(2,)))
    J = Matrix(QQ, [[0, 1], [0, 0]])
    expected = vee_lift(MatrixTuple((J, Matrix.identity(QQ, 2))), -1)
    assert P.as_tuple() == expected


def test_invariants_examples(F7, QQ):
    Z = Matrix.zeros(QQ, 1)
    assert pencil_invariants(SkewPair(Z, Z)) == SkewPencilInvariants(QQ, minimal=(1,))
    Kf = Matrix(F7, K)
    inv = pencil_invariants(SkewPair(Kf, Kf.scale(3)))
    assert inv == SkewPencilInvariants(F7, ((lin(F7, 3), 1),))


def test_randomized_canonical_recovered(F7):
    target = SkewPencilInvariants(F7, ((lin(F7, 2), 2),), minimal=(2,))
    P = emit_canonical_pair(target)
    assert P.n == 7
    rng = random.Random(7)
    for _ in range(5):
        R = random_invertible(F7, rng, 7)
        assert pencil_invariants(congruent_pair(P, R)) == target


def test_pairs_congruent_examples(QQ):
    Kq = Matrix(QQ, K)
    Z = Matrix.zeros(QQ, 2)
    assert not pairs_congruent(SkewPair(Kq, Z), SkewPair(Z, Kq))
    assert pencil_invariants(SkewPair(Kq, Z)).finite == ((lin(QQ, 0), 1),)
    assert pencil_invariants(SkewPair(Z, Kq)).infinite == (1,)
    assert pairs_congruent(SkewPair(Z, Z), SkewPair(Z, Z))
    assert pencil_invariants(SkewPair(Z, Z)).minimal == (1, 1)


def test_not_skew_rejected(QQ):
    with pytest.raises(NotSkew):
        SkewPair(Matrix.identity(QQ, 2), Matrix.zeros(QQ, 2))


def test_substitution_action_examples(F7):
    inv = SkewPencilInvariants(F7, ((lin(F7, 0), 1),), (2,), (3,))
    assert substitution_action_on_invariants(inv, (1, 0, 0, 1)) == inv
    out = substitution_action_on_invariants(SkewPencilInvariants(F7, ((lin(F7, 0), 1),)), (1, 0, 1, 1))
    assert out.finite == ((lin(F7, 1), 1),)
    out = substitution_action_on_invariants(SkewPencilInvariants(F7, infinite=(1,)), (0, 1, 1, 0))
    assert out.finite == ((lin(F7, 0), 1),) and out.infinite == ()
    with pytest.raises(SingularMobius):
        substitution_action_on_invariants(inv, (1, 1, 1, 1))


def test_transform_irreducible_roots(F9):
    # x^2 - 2 has no root in GF(3) but splits in GF(9); compare root images
    F3 = FiniteField(3)
    q = Poly(F3, [1, 0, 1])
    w = (1, 1, 2, 1)
    image = transform_irreducible(q, w)
    a, b, c, d = w
    roots = [x for x in F9.elements() if F9.add(F9.mul(x, x), F9.one) == F9.zero]
    for lam in roots:
        mu = F9.div(F9.add(F9.coerce(c), F9.mul(F9.coerce(d), lam)), F9.add(F9.coerce(a), F9.mul(F9.coerce(b), lam)))
        coeffs = [F9.coerce(int(x)) for x in image.coeffs]
        val = F9.zero
        for cf in reversed(coeffs):
            val = F9.add(F9.mul(val, mu), cf)
        assert val == F9.zero


def random_invariants(F, rng, budget):
    """Random split invariants of total size at most ``budget``."""
    finite, infinite, minimal = [], [], []
    size = 0
    elems = list(F.elements()) if F.is_finite else [F.coerce(v) for v in range(-3, 4)]
    while True:
        kind = rng.randrange(3)
        m = rng.randint(1, 2)
        cost = 2 * m if kind < 2 else 2 * m - 1
        if size + cost > budget:
            break
        size += cost
        if kind == 0:
            finite.append((lin(F, rng.choice(elems)), m))
        elif kind == 1:
            infinite.append(m)
        else:
            minimal.append(m)
        if rng.random() < 0.3:
            break
    return SkewPencilInvariants(F, tuple(finite), tuple(infinite), tuple(minimal))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([0, 5, 7]))
def test_emit_then_recover_under_congruence(seed, p):
    F = Q if p == 0 else FiniteField(p)
    rng = random.Random(seed)
    inv = random_invariants(F, rng, 9)
    P = emit_canonical_pair(inv)
    assert P.n == inv.size
    if P.n:
        P = congruent_pair(P, random_invertible(F, rng, P.n))
    assert pencil_invariants(P) == inv


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_congruence_invariance_random_pairs(seed, n):
    F = FiniteField(5)
    rng = random.Random(seed)
    P = SkewPair(random_skew(F, rng, n), random_skew(F, rng, n))
    inv = pencil_invariants(P)
    assert inv.size == n
    assert pencil_invariants(congruent_pair(P, random_invertible(F, rng, n))) == inv
    assert pencil_invariants(emit_canonical_pair(inv)) == inv


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_substitution_action_matches_recomputation(seed, n):
    F = FiniteField(7)
    rng = random.Random(seed)
    P = SkewPair(random_skew(F, rng, n), random_skew(F, rng, n))
    while True:
        w = tuple(rng.randrange(7) for _ in range(4))
        if (w[0] * w[3] - w[1] * w[2]) % 7:
            break
    assert pencil_invariants(substitute_pair(P, w)) == substitution_action_on_invariants(pencil_invariants(P), w)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 6))
def test_toeplitz_matches_smith(seed, n):
    """Local block sizes at each eigenvalue agree with the Smith-form divisors."""
    F = FiniteField(7)
    rng = random.Random(seed)
    A = random_skew(F, rng, n)
    B = random_skew(F, rng, n)
    facs = invariant_factors(pencil(A, B), F)
    r = len(facs)
    from_smith = defaultdict(list)
    for d in facs:
        for lam in F.elements():
            e = 0
            q = lin(F, lam)
            while d.degree > 0:
                quo, rem = divmod(d, q)
                if rem:
                    break
                d, e = quo, e + 1
            if e:
                from_smith[lam].append(e)
    for lam in F.elements():
        local = local_block_sizes(A.scale(lam) - B, A, r)
        assert local == sorted(from_smith.get(lam, []))


def test_exhaustive_size3_over_F3(F3):
    """Congruence classes of all 3x3 skew pairs agree with the invariant partition."""
    coords = [(0, 1), (0, 2), (1, 2)]

    def skew(vals):
        rows = [[0] * 3 for _ in range(3)]
        for (i, j), v in zip(coords, vals):
            rows[i][j], rows[j][i] = v, (-v) % 3
        return Matrix(F3, rows)

    mats = [skew(v) for v in itertools.product(range(3), repeat=3)]
    pairs = [SkewPair(A, B) for A in mats for B in mats]
    classes = brute_orbit_classes([P.as_tuple() for P in pairs], substitutions=False)
    by_inv: dict = {}
    by_class: dict = {}
    for P, c in zip(pairs, classes):
        inv = pencil_invariants(P)
        assert by_inv.setdefault(inv, c) == c
        assert by_class.setdefault(c, inv) == inv
    assert len(by_inv) == len(set(classes))
    # {2}, {1}+finite point (3 choices), {1}+infinite block, {1,1,1}
    assert len(by_inv) == 6
