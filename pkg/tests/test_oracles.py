from __future__ import annotations

import random

import numpy as np
import pytest

from wildforms.errors import DeskScaleExceeded
from wildforms.fields import FiniteField
from wildforms.gadgets import MatrixPair
from wildforms.matrix import Matrix, is_invertible, rank
from wildforms.oracles import (
    EnumerationBudget, brute_congruent, brute_orbit_classes, brute_orbit_iso, brute_similar,
    decode_skew_tuple, gl_enumerate, gl_order, rank_mod_p, skew_tuple_orbits,
)
from wildforms.pencil import SkewPair
from wildforms.algebras import lie_classify, semialgebra_from_tuple
from wildforms.sampling import random_invertible, random_matrix, random_skew
from wildforms.tuples import MatrixTuple, apply_congruence, apply_substitution


@pytest.mark.parametrize("n,p,k,count", [(1, 3, 1, 2), (2, 2, 1, 6), (2, 3, 1, 48), (3, 3, 1, 11232), (2, 3, 2, 5760)])
def test_gl_counts(n, p, k, count):
    F = FiniteField(p, k, [1, 0, 1] if k == 2 else None, allow_even=(p == 2))
    mats = list(gl_enumerate(n, F))
    assert len(mats) == count == gl_order(n, F.order)
    assert len(set(mats)) == count
    assert all(is_invertible(M) for M in mats[:200])


def test_gl_enumeration_is_deterministic(F3):
    assert list(gl_enumerate(2, F3)) == list(gl_enumerate(2, F3))


def test_budget_guard(F3):
    with pytest.raises(DeskScaleExceeded):
        list(gl_enumerate(3, F3, EnumerationBudget(max_group_order=1000)))
    with pytest.raises(ValueError):
        EnumerationBudget(max_group_order=0)


def test_brute_similar_examples(F3):
    P = MatrixPair(Matrix(F3, [[1, 2], [0, 1]]), Matrix(F3, [[0, 1], [1, 0]]))
    w = brute_similar(P, P)
    assert w.S == Matrix.identity(F3, 2)
    Z, O = Matrix(F3, [[0]]), Matrix(F3, [[1]])
    assert brute_similar(MatrixPair(Z, Z), MatrixPair(O, Z)) is None
    rng = random.Random(0)
    for _ in range(10):
        P = MatrixPair(random_matrix(F3, rng, 2), random_matrix(F3, rng, 2))
        P2 = P.conjugate(random_invertible(F3, rng, 2))
        w = brute_similar(P, P2)
        assert w is not None and w.verifies(P, P2)


def test_brute_congruent_examples(F3):
    T = MatrixTuple((Matrix(F3, [[0, 1], [2, 0]]), Matrix(F3, [[1, 0], [0, 2]])))
    assert brute_congruent(T, T).R == Matrix.identity(F3, 2)
    assert brute_congruent(MatrixTuple((Matrix(F3, [[0]]),)), MatrixTuple((Matrix(F3, [[1]]),))) is None
    rng = random.Random(1)
    Q = random_invertible(F3, rng, 2)
    w = brute_congruent(T, apply_congruence(T, Q))
    assert w is not None and w.verifies(T, apply_congruence(T, Q))


def test_brute_orbit_iso_examples(F3):
    rng = random.Random(2)
    T = MatrixTuple((random_skew(F3, rng, 3), random_skew(F3, rng, 3)))
    G = random_invertible(F3, rng, 2)
    assert brute_orbit_iso(T, apply_substitution(apply_congruence(T, random_invertible(F3, rng, 3)), G))
    # member spans of different dimension
    K1 = Matrix(F3, [[0, 1, 0], [2, 0, 0], [0, 0, 0]])
    K2 = Matrix(F3, [[0, 0, 1], [0, 0, 0], [2, 0, 0]])
    assert not brute_orbit_iso(MatrixTuple((K1, K1)), MatrixTuple((K1, K2)))


def test_brute_orbit_classes_agree_with_pairwise_iso(F3):
    rng = random.Random(5)
    base = [MatrixTuple((random_skew(F3, rng, 3), random_skew(F3, rng, 3))) for _ in range(3)]
    moved = [apply_substitution(apply_congruence(T, random_invertible(F3, rng, 3)), random_invertible(F3, rng, 2))
             for T in base]
    tuples = base + moved
    classes = brute_orbit_classes(tuples)
    for i in range(len(tuples)):
        for j in range(i + 1, len(tuples)):
            assert (classes[i] == classes[j]) == brute_orbit_iso(tuples[i], tuples[j])
    assert classes[:3] == classes[3:]


def test_rank_mod_p_matches_exact(F5):
    rng = random.Random(9)
    for _ in range(20):
        M = random_matrix(F5, rng, rng.randint(1, 6), rng.randint(1, 6))
        assert rank_mod_p(np.array(M.tolist(), dtype=np.int64), 5) == rank(M)


def test_decode_skew_tuple(F3):
    T = decode_skew_tuple(1, 3, 2, F3)
    assert T.arity == 2 and T.size == 3
    assert all(M.is_skew() for M in T.members)


def test_skew_pair_orbits_4x4_over_F3(F3):
    """Frozen orbit sizes of independent 4x4 skew pairs under congruence and substitution."""
    codes, comp = skew_tuple_orbits(4, 2, F3)
    sizes = sorted(np.bincount(np.unique(comp, return_inverse=True)[1]).tolist())
    assert sizes == [24960, 101088, 149760, 252720]
    # the classifier gives one label per orbit
    labels = {}
    for orbit in np.unique(comp):
        idx = np.flatnonzero(comp == orbit)[:3]
        found = {lie_classify(semialgebra_from_tuple(decode_skew_tuple(int(codes[i]), 4, 2, F3))) for i in idx}
        assert len(found) == 1
        labels[orbit] = found.pop()
    assert len(set(labels.values())) == 4
