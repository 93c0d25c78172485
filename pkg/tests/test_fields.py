from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wildforms.errors import FieldError
from wildforms.fields import FiniteField, Q, field_from_json, is_irreducible_mod_p


def test_prime_field_axioms_exhaustive(F3):
    elems = list(F3.elements())
    for a, b, c in itertools.product(elems, repeat=3):
        assert F3.add(F3.add(a, b), c) == F3.add(a, F3.add(b, c))
        assert F3.mul(F3.mul(a, b), c) == F3.mul(a, F3.mul(b, c))
        assert F3.mul(a, F3.add(b, c)) == F3.add(F3.mul(a, b), F3.mul(a, c))
    for a in elems[1:]:
        assert F3.mul(a, F3.inv(a)) == F3.one


def test_extension_field_axioms_exhaustive(F9):
    elems = list(F9.elements())
    assert len(elems) == 9
    for a, b in itertools.product(elems, repeat=2):
        assert F9.add(a, b) == F9.add(b, a)
        assert F9.mul(a, b) == F9.mul(b, a)
        assert F9.sub(F9.add(a, b), b) == a
    for a in elems[1:]:
        assert F9.mul(a, F9.inv(a)) == F9.one
    # z is a square root of -1
    z = F9.coerce([0, 1])
    assert F9.mul(z, z) == F9.neg(F9.one)


def test_extension_multiplicative_group_is_cyclic(F9):
    orders = set()
    for a in list(F9.elements())[1:]:
        k = 1
        while F9.power(a, k) != F9.one:
            k += 1
        orders.add(k)
    assert 8 in orders


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_rational_axioms_sampled(a, b, c):
    assert Q.mul(a, Q.add(b, c)) == Q.add(Q.mul(a, b), Q.mul(a, c))
    assert Q.add(Q.add(a, b), c) == Q.add(a, Q.add(b, c))
    if b:
        assert Q.mul(Q.div(a, b), b) == a


def test_rationals_lowest_terms():
    x = Q.coerce("-6/4")
    assert x == Fraction(-3, 2)
    assert x.denominator == 2


@pytest.mark.parametrize("bad", [(2,), (4,), (9,), (3, 2, [1, 1, 1, 0])])
def test_field_construction_rejects(bad):
    with pytest.raises(FieldError):
        FiniteField(*bad)


def test_reducible_modulus_rejected():
    # z^2 - 1 = (z - 1)(z + 1)
    with pytest.raises(FieldError):
        FiniteField(3, 2, [2, 0, 1])
    with pytest.raises(FieldError):
        FiniteField(5, 2)


def test_even_characteristic_opt_in():
    F2 = FiniteField(2, allow_even=True)
    assert F2.add(1, 1) == 0


def test_irreducibility_by_exhaustion():
    for p in (3, 5, 7):
        for a, b in itertools.product(range(p), repeat=2):
            has_root = any((x * x + a * x + b) % p == 0 for x in range(p))
            assert is_irreducible_mod_p([b, a, 1], p) == (not has_root)


def test_json_roundtrip(F9):
    for F in (Q, F9, FiniteField(7)):
        assert field_from_json(F.spec_json()) == F
    a = F9.coerce([2, 1])
    assert F9.from_json(F9.to_json(a)) == a
    assert Q.from_json(Q.to_json(Fraction(-5, 7))) == Fraction(-5, 7)


def test_field_from_json_malformed():
    with pytest.raises(FieldError):
        field_from_json({"kind": "R"})
    with pytest.raises(FieldError):
        field_from_json([1])
