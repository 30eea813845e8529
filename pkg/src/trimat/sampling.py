"""Random small algebras, bimodules, modules and triples for property tests."""
from __future__ import annotations

import random as _random

from . import linalg as la
from .algebra import (
    Algebra,
    Bimodule,
    ProjectiveModule,
    RightModule,
    bimodule_from_enveloping,
    direct_sum,
    field_algebra,
    opposite,
    path_algebra,
    product_algebra,
    quotient_module,
    radical_submodule,
    tensor_algebra,
    truncated_polynomial,
    zero_bimodule,
)
from .linalg import QQ
from .triangular import TriangularAlgebra, TriangularData, TripleModule, build_triangular, lambda_to_triple


def algebra_pool(F=QQ, max_dim: int = 3) -> list[Algebra]:
    """Basic algebras of dimension <= max_dim (<= 4 supported)."""
    k = field_algebra(F)
    pool = [
        k,
        product_algebra(k, k),
        truncated_polynomial(F, 2),
        truncated_polynomial(F, 3),
        path_algebra(F, [1, 2], [("a", 1, 2)]),
        product_algebra(product_algebra(k, k), k),
        product_algebra(truncated_polynomial(F, 2), k),
        path_algebra(F, [1, 2], [("a", 1, 2), ("b", 1, 2)]),
        path_algebra(F, [1, 2, 3], [("a", 1, 2)]),
        truncated_polynomial(F, 4),
    ]
    return [A for A in pool if A.dim <= max_dim]


# algebras of finite global dimension (every module has a finite resolution)
def finite_gldim_pool(F=QQ) -> list[Algebra]:
    k = field_algebra(F)
    return [
        product_algebra(k, k),
        path_algebra(F, [1, 2], [("a", 1, 2)]),
        path_algebra(F, [1, 2, 3], [("a", 1, 2), ("b", 2, 3)]),
        path_algebra(F, [1, 2, 3], [("a", 1, 2), ("b", 2, 3)], [{"a*b": 1}]),
        path_algebra(F, [1, 2], [("a", 1, 2), ("b", 1, 2)]),
        path_algebra(F, [1, 2, 3], [("a", 1, 2), ("b", 1, 3)]),
    ]


def random_vector(rng, n, lo=-2, hi=2):
    return [rng.randint(lo, hi) for _ in range(n)]


def random_quotient(rng: _random.Random, A: Algebra, max_dim: int, tags=None) -> RightModule:
    """A random quotient of a projective module, cut down to dimension <= max_dim."""
    n = len(A.idempotents)
    if tags is None:
        tags = [rng.randrange(n) for _ in range(rng.choice([1, 1, 2]))]
    P = ProjectiveModule(A, tags)
    X: RightModule = P
    for _ in range(12):
        if X.dim <= max_dim and rng.random() < 0.5:
            break
        if X.dim == 0:
            break
        rad = radical_submodule(X)
        if rad.dim and rng.random() < 0.7:
            v = la.mat_vec(rad.basis_matrix(), random_vector(rng, rad.dim))
        else:
            e = A.idempotents[rng.randrange(n)]
            piece = X.piece(e)
            if not piece.dim:
                continue
            v = la.mat_vec(piece.basis_matrix(), random_vector(rng, piece.dim))
        if not any(v):
            continue
        X, _, _ = quotient_module(X, [v])
    while X.dim > max_dim:
        X, _, _ = quotient_module(X, [la.column(la.identity(X.dim), X.dim - 1)])
    return X


def random_bimodule(rng: _random.Random, R: Algebra, S: Algebra, max_dim: int = 3) -> Bimodule:
    """Quotient of a cyclic projective R^op (x) S module, or a sum of two, or zero."""
    if rng.random() < 0.1:
        return zero_bimodule(R, S)
    env = tensor_algebra(opposite(R), S)
    parts = []
    budget = max_dim
    for _ in range(rng.choice([1, 1, 2])):
        if budget <= 0:
            break
        X = random_quotient(rng, env, budget, tags=[rng.randrange(len(env.idempotents))])
        if X.dim:
            parts.append(X)
            budget -= X.dim
    if not parts:
        return zero_bimodule(R, S)
    X = direct_sum(parts, env) if len(parts) > 1 else parts[0]
    B = bimodule_from_enveloping(R, S, X)
    return Bimodule(R, S, B.left_action, B.right_action, B.dim, check=True)


def random_triangular(rng: _random.Random, max_dim: int = 3, F=QQ) -> TriangularData:
    pool = algebra_pool(F, max_dim)
    R = rng.choice(pool)
    S = rng.choice(pool)
    M = random_bimodule(rng, R, S, max_dim)
    return TriangularData(R, S, M, name="random")


def random_triple(rng: _random.Random, d: TriangularData, T: TriangularAlgebra | None = None, max_dim: int = 6) -> TripleModule:
    """A random triple obtained from a random quotient of a projective Λ-module."""
    T = T or build_triangular(d)
    Z = random_quotient(rng, T.algebra, max_dim)
    return lambda_to_triple(Z, T).triple


def random_module(rng: _random.Random, A: Algebra, max_dim: int = 4) -> RightModule:
    return random_quotient(rng, A, max_dim)


def random_unimodular(rng: _random.Random, n: int, steps: int = 8, lo: int = -2, hi: int = 2) -> list[list[int]]:
    """Product of random elementary integer matrices (det = +-1)."""
    P = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 0:
        return P
    for _ in range(steps):
        if n > 1:
            i, j = rng.sample(range(n), 2)
            c = rng.randint(lo, hi)
            for r in range(n):
                P[r][j] += c * P[r][i]
        if rng.random() < 0.3:
            i = rng.randrange(n)
            for r in range(n):
                P[r][i] = -P[r][i]
    return P


def random_int_matrix(rng: _random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def random_unimodular_bounded(rng: _random.Random, n: int, lo: int = -3, hi: int = 3, tries: int = 2000) -> list[list[int]]:
    """Unimodular matrix with entries in [lo, hi]: rejection first, elementary products as fallback."""
    for _ in range(tries):
        P = random_int_matrix(rng, n, n, lo, hi)
        if abs(la.det_int(P)) == 1:
            return P
    for _ in range(tries):
        P = random_unimodular(rng, n, steps=rng.randint(1, 2 * n), lo=-1, hi=1)
        if all(lo <= x <= hi for r in P for x in r):
            return P
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
