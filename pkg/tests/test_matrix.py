from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wildforms.errors import Singular
from wildforms.fields import FiniteField, Q
from wildforms.gadgets import build_J4
from wildforms.matrix import (
    Matrix, block_diag, det, inverse, is_invertible, nullspace, rank, rank_rref,
)
from wildforms.sampling import random_invertible, random_matrix


def leibniz_det(F, rows):
    n = len(rows)
    total = F.zero
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = F.one
        for i in range(n):
            term = F.mul(term, rows[i][perm[i]])
        total = F.add(total, term if sign > 0 else F.neg(term))
    return total


def minor_rank(F, rows):
    """Largest k with a nonzero k x k minor."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    for k in range(min(m, n), 0, -1):
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                if leibniz_det(F, [[rows[i][j] for j in cs] for i in rs]) != F.zero:
                    return k
    return 0


def test_rank_examples(QQ):
    assert rank(Matrix.zeros(QQ, 2, 3)) == 0
    r, R, T = rank_rref(Matrix.zeros(QQ, 2, 3))
    assert r == 0 and R == Matrix.zeros(QQ, 2, 3)
    r, R, _ = rank_rref(Matrix.identity(QQ, 4))
    assert r == 4 and R == Matrix.identity(QQ, 4)
    J = Matrix(QQ, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    assert J == build_J4(QQ, 1)
    assert rank(J) == 3


def test_inverse_examples(F5, QQ):
    assert inverse(Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 3)
    assert inverse(Matrix.diag(F5, [2, 3])) == Matrix.diag(F5, [3, 2])
    with pytest.raises(Singular):
        inverse(Matrix(QQ, [[0, 1], [0, 0]]))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6), st.sampled_from([3, 5, 0]))
def test_rank_matches_minor_oracle(m, n, seed, p):
    F = Q if p == 0 else FiniteField(p)
    rng = random.Random(seed)
    M = random_matrix(F, rng, m, n, bound=2)
    assert rank(M) == minor_rank(F, M.rows)
    r, R, T = rank_rref(M)
    assert r == rank(M)
    assert T @ M == R
    assert is_invertible(T)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10 ** 6))
def test_det_matches_leibniz(n, seed):
    rng = random.Random(seed)
    for F in (Q, FiniteField(7)):
        M = random_matrix(F, rng, n, bound=4)
        assert det(M) == leibniz_det(F, M.rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10 ** 6))
def test_inverse_involution(n, seed):
    rng = random.Random(seed)
    for F in (Q, FiniteField(5), FiniteField(3, 2, [1, 0, 1])):
        M = random_invertible(F, rng, n)
        assert inverse(inverse(M)) == M
        assert M @ inverse(M) == Matrix.identity(F, n)


def test_large_prime_rank_path_agrees_with_exact(F5):
    rng = random.Random(1)
    A = random_matrix(F5, rng, 25, 10)
    M = A @ random_matrix(F5, rng, 10, 25)
    big = block_diag(F5, [M, Matrix.identity(F5, 3)])
    assert rank(big) == rank_rref(big)[0] == 13


def test_nullspace(QQ):
    M = Matrix(QQ, [[1, 2, 3], [2, 4, 6]])
    basis = nullspace(M)
    assert len(basis) == 2
    for v in basis:
        col = Matrix(QQ, [[x] for x in v])
        assert (M @ col).is_zero()


def test_zero_sized_matrices(QQ):
    E = Matrix.zeros(QQ, 0, 2)
    assert E.shape == (0, 2)
    assert (Matrix.zeros(QQ, 3, 0) @ E) == Matrix.zeros(QQ, 3, 2)
    assert block_diag(QQ, [Matrix.zeros(QQ, 1, 0), Matrix.zeros(QQ, 0, 1)]) == Matrix.zeros(QQ, 1, 1)
    assert rank(E) == 0


def test_matrix_field_entries_coerced(QQ):
    M = Matrix(QQ, [["1/2", 3]])
    assert M.rows[0][0] == Fraction(1, 2)
