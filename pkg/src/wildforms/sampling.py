"""Seeded random objects for experiments and tests."""

from __future__ import annotations

import random

from .fields import Field
from .matrix import Matrix, is_invertible
from .tuples import MatrixTuple, is_linearly_independent


def random_matrix(F: Field, rng: random.Random, nrows: int, ncols: int | None = None, bound: int = 3) -> Matrix:
    ncols = nrows if ncols is None else ncols
    return Matrix._raw(F, [[F.random_element(rng, bound) for _ in range(ncols)] for _ in range(nrows)],
                       nrows, ncols)


def random_invertible(F: Field, rng: random.Random, n: int, bound: int = 3) -> Matrix:
    while True:
        M = random_matrix(F, rng, n, n, bound)
        if is_invertible(M):
            return M


def random_skew(F: Field, rng: random.Random, n: int, bound: int = 3) -> Matrix:
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = F.random_element(rng, bound)
            rows[i][j], rows[j][i] = x, F.neg(x)
    return Matrix._raw(F, rows, n, n)


def random_symmetric(F: Field, rng: random.Random, n: int, bound: int = 3) -> Matrix:
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = F.random_element(rng, bound)
            rows[i][j] = rows[j][i] = x
    return Matrix._raw(F, rows, n, n)


def random_independent_tuple(F: Field, rng: random.Random, t: int, n: int, skew: bool,
                             bound: int = 3, tries: int = 1000) -> MatrixTuple:
    make = random_skew if skew else random_symmetric
    for _ in range(tries):
        T = MatrixTuple(tuple(make(F, rng, n, bound) for _ in range(t)))
        if is_linearly_independent(T):
            return T
    raise ValueError(f"no independent {t}-tuple of {'skew' if skew else 'symmetric'} {n}x{n} matrices found")
