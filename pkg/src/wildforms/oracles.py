"""Exhaustive deciders over tiny finite fields.

Everything here enumerates a whole matrix group and is meant as ground truth
for the structural algorithms.  Prime fields use vectorized numpy arithmetic
modulo ``p``; extension fields fall back to exact ``Matrix`` arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ArityMismatch, DeskScaleExceeded, SizeMismatch
from .fields import Field, FiniteField
from .gadgets import CongruenceWitness, MatrixPair, SimilarityWitness
from .matrix import Matrix
from .tuples import MatrixTuple


@dataclass(frozen=True)
class EnumerationBudget:
    max_group_order: int = 10 ** 7
    seed: int = 0

    def __post_init__(self):
        if self.max_group_order <= 0:
            raise ValueError("budget must be positive")


DEFAULT_BUDGET = EnumerationBudget()


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def _require_finite(F: Field) -> FiniteField:
    if not F.is_finite:
        raise DeskScaleExceeded("brute force needs a finite field")
    return F


def _check_budget(n: int, F: FiniteField, budget: EnumerationBudget, factor: int = 1) -> int:
    size = gl_order(n, F.order) * factor
    if size > budget.max_group_order:
        raise DeskScaleExceeded(f"enumeration of {size} group elements exceeds the budget {budget.max_group_order}")
    return size


def _gl_rows(n: int, F: FiniteField) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Invertible matrices as row tuples, rows in lexicographic code order.

    A row is admissible when it avoids the span of the rows already chosen;
    spans are kept as explicit vector sets.
    """
    vectors = list(itertools.product(range(F.order), repeat=n))
    zero = (0,) * n

    def extend(span, v):
        out = set()
        for s in span:
            for c in range(1, F.order):
                out.add(tuple(F.add(a, F.mul(c, b)) for a, b in zip(s, v)))
        return span | out

    def rec(chosen, span):
        if len(chosen) == n:
            yield tuple(chosen)
            return
        for v in vectors:
            if v not in span:
                yield from rec(chosen + [v], extend(span, v))

    yield from rec([], {zero})


def gl_enumerate(n: int, field: Field, budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Matrix]:
    """Every invertible ``n x n`` matrix exactly once, in a fixed order."""
    F = _require_finite(field)
    _check_budget(n, F, budget)
    for rows in _gl_rows(n, F):
        yield Matrix._raw(F, [list(r) for r in rows], n, n)


def _gl_array(n: int, F: FiniteField, budget: EnumerationBudget) -> np.ndarray:
    _check_budget(n, F, budget)
    return np.array(list(_gl_rows(n, F)), dtype=np.int64).reshape(-1, n, n)


def _np(M: Matrix) -> np.ndarray:
    return np.array(M.rows, dtype=np.int64).reshape(M.shape)


def _is_prime_field(F: Field) -> bool:
    return isinstance(F, FiniteField) and F.k == 1


def brute_similar(P1: MatrixPair, P2: MatrixPair,
                  budget: EnumerationBudget = DEFAULT_BUDGET) -> SimilarityWitness | None:
    """First ``S`` in enumeration order with ``S^-1 (A, B) S = (C, D)``."""
    if P1.n != P2.n or P1.field != P2.field:
        raise SizeMismatch("pairs must share size and field")
    F = _require_finite(P1.field)
    n = P1.n
    if _is_prime_field(F):
        p = F.p
        S = _gl_array(n, F, budget)
        ok = np.ones(len(S), dtype=bool)
        for X, Y in ((P1.A, P2.A), (P1.B, P2.B)):
            lhs = np.matmul(_np(X), S) % p
            rhs = np.matmul(S, _np(Y)) % p
            ok &= (lhs == rhs).all(axis=(1, 2))
        hits = np.flatnonzero(ok)
        if not len(hits):
            return None
        w = SimilarityWitness(Matrix._raw(F, S[hits[0]].tolist(), n, n))
    else:
        w = None
        for S in gl_enumerate(n, F, budget):
            cand = SimilarityWitness(S)
            if P1.A @ S == S @ P2.A and P1.B @ S == S @ P2.B:
                w = cand
                break
        if w is None:
            return None
    assert w.verifies(P1, P2)
    return w


def _congruence_images(T: MatrixTuple, Qs: np.ndarray, p: int) -> np.ndarray:
    """``Q^T A_k Q`` for every ``Q`` and member, shape ``(N, t, n, n)``."""
    A = np.stack([_np(M) for M in T.members])
    Qt = np.transpose(Qs, (0, 2, 1))
    left = np.einsum("nij,kjl->nkil", Qt, A) % p
    return np.einsum("nkil,nlj->nkij", left, Qs) % p


def brute_congruent(T1: MatrixTuple, T2: MatrixTuple,
                    budget: EnumerationBudget = DEFAULT_BUDGET) -> CongruenceWitness | None:
    """First ``Q`` in enumeration order with ``Q^T T1 Q = T2``."""
    if T1.arity != T2.arity:
        raise ArityMismatch("tuples of different arity")
    if T1.shape != T2.shape or not T1.is_square() or T1.field != T2.field:
        raise SizeMismatch("tuples must be square of one size over one field")
    F = _require_finite(T1.field)
    n = T1.size
    if _is_prime_field(F):
        Qs = _gl_array(n, F, budget)
        imgs = _congruence_images(T1, Qs, F.p)
        target = np.stack([_np(M) for M in T2.members])
        hits = np.flatnonzero((imgs == target).all(axis=(1, 2, 3)))
        if not len(hits):
            return None
        w = CongruenceWitness(Matrix._raw(F, Qs[hits[0]].tolist(), n, n))
    else:
        w = None
        for Q in gl_enumerate(n, F, budget):
            Qt = Q.T
            if all(Qt @ A @ Q == B for A, B in zip(T1.members, T2.members)):
                w = CongruenceWitness(Q)
                break
        if w is None:
            return None
    assert w.verifies(T1, T2)
    return w


def _substitutions(t: int, F: FiniteField, budget: EnumerationBudget) -> np.ndarray:
    return _gl_array(t, F, budget)


def brute_orbit_iso(T1: MatrixTuple, T2: MatrixTuple, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """Whether some congruence followed by some substitution carries ``T1`` to ``T2``."""
    if T1.arity != T2.arity:
        raise ArityMismatch("tuples of different arity")
    if T1.shape != T2.shape or not T1.is_square() or T1.field != T2.field:
        raise SizeMismatch("tuples must be square of one size over one field")
    F = _require_finite(T1.field)
    if not _is_prime_field(F):
        raise DeskScaleExceeded("orbit enumeration is implemented over prime fields")
    p, n, t = F.p, T1.size, T1.arity
    _check_budget(n, F, budget, gl_order(t, F.order))
    Qs = _gl_array(n, F, budget)
    orbit = {img.tobytes() for img in _congruence_images(T1, Qs, p)}
    B = np.stack([_np(M) for M in T2.members])
    for G in _substitutions(t, F, budget):
        # T2 = G . X  <=>  X = G^-1 . T2; G ranges over the whole group anyway
        X = np.einsum("kl,lij->kij", G, B) % p
        if X.tobytes() in orbit:
            return True
    return False


# -- orbit partitions by generator search ---------------------------------------------------

def _skew_coords(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _gl_generators(n: int, p: int) -> list[np.ndarray]:
    """Elementary transvections and ``diag(g, 1, .., 1)``; together they generate ``GL_n(F_p)``."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                E = np.eye(n, dtype=np.int64)
                E[i, j] = 1
                gens.append(E)
    g = next(c for c in range(2, p) if all(pow(c, (p - 1) // r, p) != 1 for r in _primes(p - 1))) if p > 2 else 1
    D = np.eye(n, dtype=np.int64)
    D[0, 0] = g
    gens.append(D)
    return gens


def _primes(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def skew_tuple_orbits(n: int, t: int, field: Field, budget: EnumerationBudget = DEFAULT_BUDGET):
    """Orbits of linearly independent ``t``-tuples of skew ``n x n`` matrices.

    The group is congruence times substitution.  Tuples are encoded as
    integers in base ``p`` over their strictly upper coordinates; returns
    ``(codes, component)`` for the independent tuples.
    """
    F = _require_finite(field)
    if not _is_prime_field(F):
        raise DeskScaleExceeded("orbit partitions are implemented over prime fields")
    p = F.p
    coords = _skew_coords(n)
    s = len(coords)
    total = p ** (s * t)
    if total > budget.max_group_order:
        raise DeskScaleExceeded(f"{total} tuples exceed the budget")
    codes = np.arange(total, dtype=np.int64)
    digits = (codes[:, None] // p ** np.arange(s * t, dtype=np.int64)) % p   # (N, s*t)
    vecs = digits.reshape(total, t, s)
    weights = p ** np.arange(s * t, dtype=np.int64)

    def encode(v):
        return (v.reshape(len(v), s * t) * weights).sum(axis=1)

    # linear maps on skew coordinates induced by A -> Q^T A Q
    def skew_action(Q):
        M = np.zeros((s, s), dtype=np.int64)
        for c, (i, j) in enumerate(coords):
            A = np.zeros((n, n), dtype=np.int64)
            A[i, j], A[j, i] = 1, p - 1
            img = (Q.T @ A @ Q) % p
            for r, (a, b) in enumerate(coords):
                M[r, c] = img[a, b]
        return M

    edges_from, edges_to = [], []
    for Q in _gl_generators(n, p):
        M = skew_action(Q)
        img = np.einsum("rc,ntc->ntr", M, vecs) % p
        edges_from.append(codes)
        edges_to.append(encode(img))
    for G in _gl_generators(t, p):
        img = np.einsum("kl,nls->nks", G, vecs) % p
        edges_from.append(codes)
        edges_to.append(encode(img))
    rows = np.concatenate(edges_from)
    cols = np.concatenate(edges_to)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(total, total))
    _, comp = connected_components(graph, directed=True, connection="weak")

    # keep independent tuples: rank of the t x s coordinate matrix equals t
    indep = _independent_mask(vecs, p)
    return codes[indep], comp[indep]


def _independent_mask(vecs: np.ndarray, p: int) -> np.ndarray:
    """Rows ``(t, s)`` of full rank ``t``; vectorized for ``t <= 2``."""
    t = vecs.shape[1]
    if t == 1:
        return vecs[:, 0].any(axis=1)
    if t == 2:
        u, v = vecs[:, 0], vecs[:, 1]
        minors = (u[:, :, None] * v[:, None, :] - u[:, None, :] * v[:, :, None]) % p
        return minors.reshape(len(vecs), -1).any(axis=1)
    return np.array([rank_mod_p(v, p) == t for v in vecs], dtype=bool)


def rank_mod_p(M: np.ndarray, p: int) -> int:
    """Rank of an integer array modulo ``p`` by Gauss-Jordan elimination."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        nz = np.flatnonzero(A[r:, c])
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        r += 1
        if r == rows:
            break
    return r


def decode_skew_tuple(code: int, n: int, t: int, field: FiniteField) -> MatrixTuple:
    p = field.p
    coords = _skew_coords(n)
    s = len(coords)
    members = []
    for k in range(t):
        rows = [[0] * n for _ in range(n)]
        for c, (i, j) in enumerate(coords):
            v = (code // p ** (k * s + c)) % p
            rows[i][j] = v
            rows[j][i] = (-v) % p
        members.append(Matrix._raw(field, rows, n, n))
    return MatrixTuple(tuple(members))


def brute_orbit_classes(tuples: list[MatrixTuple], budget: EnumerationBudget = DEFAULT_BUDGET,
                        substitutions: bool = True) -> list[int]:
    """Class index of every tuple under congruence times substitution.

    The full orbit of each new representative is enumerated, so two tuples
    share a class exactly when :func:`brute_orbit_iso` holds for them (or
    :func:`brute_congruent`, with ``substitutions=False``).
    """
    if not tuples:
        return []
    F = _require_finite(tuples[0].field)
    if not _is_prime_field(F):
        raise DeskScaleExceeded("orbit enumeration is implemented over prime fields")
    p, n, t = F.p, tuples[0].size, tuples[0].arity
    _check_budget(n, F, budget, gl_order(t, F.order) if substitutions else 1)
    Qs = _gl_array(n, F, budget)
    Gs = _substitutions(t, F, budget) if substitutions else np.eye(t, dtype=np.int64)[None]
    keys = [np.stack([_np(M) for M in T.members]).tobytes() for T in tuples]
    classes = [-1] * len(tuples)
    count = 0
    for idx, T in enumerate(tuples):
        if classes[idx] >= 0:
            continue
        imgs = _congruence_images(T, Qs, p)
        orbit = set()
        for G in Gs:
            orbit.update(x.tobytes() for x in np.einsum("kl,nlij->nkij", G, imgs) % p)
        for j in range(idx, len(tuples)):
            if classes[j] < 0 and keys[j] in orbit:
                classes[j] = count
        count += 1
    return classes
