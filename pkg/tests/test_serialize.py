from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from wildforms.errors import FieldError
from wildforms.fields import FiniteField, Q
from wildforms.matrix import Matrix
from wildforms.pencil import SkewPencilInvariants
from wildforms.poly import Poly
from wildforms.sampling import random_matrix
from wildforms.serialize import (
    MalformedInput, dumps, loads, matrix_from_json, matrix_to_json, tuple_from_json, tuple_to_json,
)
from wildforms.tuples import MatrixTuple


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 10 ** 6), st.sampled_from(["q", "f7", "f9"]))
def test_matrix_roundtrip(m, n, seed, which):
    F = {"q": Q, "f7": FiniteField(7), "f9": FiniteField(3, 2, [1, 0, 1])}[which]
    M = random_matrix(F, random.Random(seed), m, n)
    assert matrix_from_json(loads(dumps(matrix_to_json(M)))) == M


def test_tuple_forms(QQ):
    A, B = Matrix.identity(QQ, 2), Matrix.zeros(QQ, 2)
    T = MatrixTuple((A, B))
    assert tuple_from_json(tuple_to_json(T)) == T
    assert tuple_from_json({"A": matrix_to_json(A), "B": matrix_to_json(B)}) == T
    assert tuple_from_json(matrix_to_json(A)) == MatrixTuple((A,))


def test_malformed(QQ):
    with pytest.raises(MalformedInput):
        loads("[1,")
    with pytest.raises(MalformedInput):
        matrix_from_json({"rows": 1})
    with pytest.raises(MalformedInput):
        matrix_from_json({"entries": [[1]]})
    with pytest.raises(MalformedInput):
        tuple_from_json({"members": []})
    mixed = {"members": [matrix_to_json(Matrix.identity(QQ, 2)), matrix_to_json(Matrix.identity(QQ, 3))]}
    with pytest.raises(MalformedInput):
        tuple_from_json(mixed)
    with pytest.raises(FieldError):
        matrix_from_json(matrix_to_json(Matrix.identity(QQ, 1)), FiniteField(5))


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_invariants_json(F7):
    inv = SkewPencilInvariants(F7, ((Poly(F7, [1, 0, 1]), 2), (Poly.linear(F7, 3), 1)), (2,), (1, 3))
    assert SkewPencilInvariants.from_json(F7, loads(dumps(inv.to_json()))) == inv
