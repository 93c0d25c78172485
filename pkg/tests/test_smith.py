from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from wildforms.fields import FiniteField, Q
from wildforms.matrix import Matrix
from wildforms.poly import Poly, charpoly, companion
from wildforms.smith import invariant_factors, pencil, poly_matmul, smith_form, smith_polymatrix


def test_smith_examples(QQ):
    x = Poly.x(QQ)
    one, zero = Poly.one(QQ), Poly.zero(QQ)
    assert smith_polymatrix([[x, zero], [zero, x * x]], QQ) == [x, x * x]
    # I + x J_2(0) is unimodular
    assert smith_polymatrix([[one, x], [zero, one]], QQ) == [one, one]
    # x I_2 + J_2(0)
    assert smith_polymatrix([[x, one], [zero, x]], QQ) == [one, x * x]


def test_companion_invariant_factors(F7):
    f = Poly(F7, [1, 2, 0, 1])
    C = companion(f)
    I = Matrix.identity(F7, 3)
    assert invariant_factors(pencil(I, C), F7) == [Poly.one(F7), Poly.one(F7), f]


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10 ** 6), st.sampled_from([0, 5]))
def test_smith_transforms_and_divisibility(n, seed, p):
    F = Q if p == 0 else FiniteField(p)
    rng = random.Random(seed)
    m = rng.randint(1, 6)
    P = [[Poly(F, [F.random_element(rng, 2) for _ in range(rng.randint(0, 2))]) for _ in range(m)]
         for _ in range(n)]
    D, U, V = smith_form(P, F, transforms=True)
    assert poly_matmul(poly_matmul(U, P, F), V, F) == D
    diag = [D[i][i] for i in range(min(n, m))]
    for i in range(n):
        for j in range(m):
            if i != j:
                assert D[i][j].is_zero()
    nz = [d for d in diag if d]
    assert all(d.lead == F.one for d in nz)
    assert all(a.divides(b) for a, b in zip(nz, nz[1:]))
    # zero diagonal entries come last
    assert all(d for d in diag[:len(nz)])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10 ** 6))
def test_invariant_factors_product_is_charpoly(n, seed):
    F = FiniteField(5)
    rng = random.Random(seed)
    M = Matrix._raw(F, [[rng.randrange(5) for _ in range(n)] for _ in range(n)], n, n)
    facs = invariant_factors(pencil(Matrix.identity(F, n), M), F)
    prod = Poly.one(F)
    for d in facs:
        prod = prod * d
    assert prod == charpoly(M)
