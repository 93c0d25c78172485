from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from wildforms.errors import InvalidEpsilon, SizeMismatch
from wildforms.fields import FiniteField, Q
from wildforms.gadgets import (
    MatrixPair, build_D, build_G, build_J4, build_T, build_T_lemma42,
    intertwiner_similarity, witness_from_similarity,
)
from wildforms.matrix import Matrix, rank
from wildforms.tuples import EpsilonSignature, apply_congruence, check_form_types
from wildforms.sampling import random_invertible, random_matrix


def test_J4(QQ):
    J = build_J4(QQ, 1)
    assert J == Matrix(QQ, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    J2 = build_J4(QQ, 2)
    assert J2.shape == (8, 8) and rank(J2) == 6
    with pytest.raises(SizeMismatch):
        build_J4(QQ, 0)


def test_D(QQ):
    assert build_D(Matrix(QQ, [[5]]), Matrix(QQ, [[7]])) == Matrix.diag(QQ, [1, 5, 7, 0])
    I = Matrix.identity(QQ, 2)
    D = build_D(I, I)
    assert D == Matrix.diag(QQ, [1, 1, 1, 1, 1, 1, 0, 0])


def test_build_T_scalar_example(F5):
    P = MatrixPair(Matrix(F5, [[2]]), Matrix(F5, [[3]]))
    T = build_T(P, EpsilonSignature.parse(F5, [1, 1, 1]))
    assert T.size == 8 and T.arity == 3
    assert T[2].submatrix(range(4), range(4, 8)) == Matrix.diag(F5, [1, 2, 3, 0])
    assert check_form_types(T, (1, 1, 1))


@pytest.mark.parametrize("eps", [(1, 1, 1), (-1, -1, -1), (1, -1, 1), (-1, 1, -1)])
def test_build_T_form_types(F7, eps):
    rng = random.Random(sum(eps) + 10)
    P = MatrixPair(random_matrix(F7, rng, 2), random_matrix(F7, rng, 2))
    T = build_T(P, EpsilonSignature.parse(F7, eps))
    assert T.size == 16
    assert check_form_types(T, eps)


def test_build_T_rejects_zero_eps(F7):
    P = MatrixPair(Matrix(F7, [[1]]), Matrix(F7, [[1]]))
    with pytest.raises(InvalidEpsilon):
        build_T(P, EpsilonSignature.parse(F7, [0, 1, 1]))


def test_witness_examples(F5, QQ):
    assert witness_from_similarity(Matrix.identity(QQ, 2), 2).R == Matrix.identity(QQ, 16)
    assert witness_from_similarity(Matrix(F5, [[2]]), 1).R == Matrix.diag(F5, [3] * 4 + [2] * 4)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10 ** 6), st.sampled_from([(1, 1, 1), (-1, -1, -1), (1, 1, -1)]),
       st.sampled_from([0, 5, 7]))
def test_witness_carries_similarity_to_congruence(n, seed, eps, p):
    F = Q if p == 0 else FiniteField(p)
    rng = random.Random(seed)
    P = MatrixPair(random_matrix(F, rng, n), random_matrix(F, rng, n))
    S = random_invertible(F, rng, n)
    sig = EpsilonSignature.parse(F, eps)
    T1, T2 = build_T(P, sig), build_T(P.conjugate(S), sig)
    W = witness_from_similarity(S, n, sig)
    assert W.verifies(T1, T2)
    assert apply_congruence(T1, W.R) == T2


def test_intertwiner_examples(QQ):
    J = Matrix(QQ, [[0, 1], [0, 0]])
    Z = Matrix.zeros(QQ, 2)
    P = MatrixPair(J, Z)
    w = intertwiner_similarity(P, P)
    assert w is not None and w.verifies(P, P)
    P2 = MatrixPair(J.T, Z)
    w = intertwiner_similarity(P, P2)
    assert w is not None and w.verifies(P, P2)
    assert w.S == Matrix(QQ, [[0, 1], [1, 0]])
    d = Matrix.diag(QQ, [0, 1])
    assert intertwiner_similarity(MatrixPair(d, Z), MatrixPair(d, Matrix.identity(QQ, 2))) is None


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10 ** 6), st.sampled_from([0, 3, 5]))
def test_intertwiner_finds_conjugates(n, seed, p):
    F = Q if p == 0 else FiniteField(p)
    rng = random.Random(seed)
    P = MatrixPair(random_matrix(F, rng, n), random_matrix(F, rng, n))
    P2 = P.conjugate(random_invertible(F, rng, n))
    w = intertwiner_similarity(P, P2)
    assert w is not None and w.verifies(P, P2)


def test_rank_separated_triple_shape(QQ):
    P = MatrixPair(Matrix(QQ, [[2]]), Matrix(QQ, [[3]]))
    T = build_T_lemma42(P, -1)
    assert T.size == 350
    assert check_form_types(T, (-1, -1, -1))
    P2 = MatrixPair(Matrix.identity(QQ, 2), Matrix.identity(QQ, 2))
    assert build_T_lemma42(P2, 1).size == 342 + 16
    with pytest.raises(InvalidEpsilon):
        build_T_lemma42(P, 2)


@pytest.mark.parametrize("x,y", [(1, 1), (2, 3), (0, 0)])
def test_rank_separation(x, y):
    """Combinations with at least two nonzero coefficients in {-1,0,1} miss the member ranks."""
    F3 = FiniteField(3)
    for F in (Q, F3):
        P = MatrixPair(Matrix(F, [[x]]), Matrix(F, [[y]]))
        T = build_T_lemma42(P, 1)
        ranks = {rank(M) for M in T.members}
        assert len(ranks) == 3
        scaled = [{c: M.scale(F.coerce(c)) for c in (-1, 0, 1)} for M in T.members]
        for g in itertools.product((-1, 0, 1), repeat=3):
            if sum(1 for c in g if c) < 2:
                continue
            M = scaled[0][g[0]] + scaled[1][g[1]] + scaled[2][g[2]]
            assert rank(M) not in ranks, (F, g)


def test_build_G(QQ):
    P = MatrixPair(Matrix(QQ, [[1]]), Matrix(QQ, [[1]]))
    G = build_G(P)
    assert [M.shape for M in G.members] == [(4, 4)] * 3
    assert G[1] == build_J4(QQ, 1)
