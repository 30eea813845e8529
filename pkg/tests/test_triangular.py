import random

import pytest
from hypothesis import given, settings, strategies as st

from trimat import algebra as al
from trimat import linalg as la
from trimat import sampling as sp
from trimat import triangular as tr
from trimat.errors import AlgebraMismatch, CategoryMismatch, ModuleViolation
from trimat.linalg import QQ


@pytest.fixture(scope="module")
def d123(F1, F2, F3):
    return tr.TriangularData(F1, F2, F3)


@pytest.fixture(scope="module")
def L123(d123):
    return tr.build_triangular(d123)


def flat_iso(T, a, b):
    A = a if isinstance(a, al.RightModule) else tr.triple_to_lambda(a, T)
    B = b if isinstance(b, al.RightModule) else tr.triple_to_lambda(b, T)
    return al.find_isomorphism(A, B) is not None


def test_build_example(L123):
    assert L123.dim == 6
    assert len(L123.algebra.idempotents) == 2
    A = L123.algebra
    assert [a + b for a, b in zip(L123.e_R, L123.e_S)] == A.unit
    assert A.multiply(L123.e_R, L123.e_S) == A.zero_vector()


def test_mismatched_bimodule_rejected(F1, F2, F3):
    with pytest.raises(AlgebraMismatch):
        tr.TriangularData(F2, F1, F3)


def test_block_multiplication(d123, L123):
    """(r, m, s)(r', m', s') = (rr', rm' + ms', ss')."""
    rng = random.Random(3)
    R, S, M = d123.R, d123.S, d123.M
    A = L123.algebra
    for _ in range(20):
        r, r2 = sp.random_vector(rng, R.dim), sp.random_vector(rng, R.dim)
        m, m2 = sp.random_vector(rng, M.dim), sp.random_vector(rng, M.dim)
        s, s2 = sp.random_vector(rng, S.dim), sp.random_vector(rng, S.dim)
        prod = A.multiply(r + m + s, r2 + m2 + s2)
        mm = [a + b for a, b in zip(la.mat_vec(M.left(r), m2), la.mat_vec(M.right(s2), m))]
        assert L123.split(prod) == (R.multiply(r, r2), mm, S.multiply(s, s2))


def test_QQQ_is_upper_triangular(F4):
    k = al.field_algebra(QQ)
    L = tr.build_triangular(tr.TriangularData(k, k, al.regular_bimodule(k)))
    assert L.dim == 3
    # r -> e_1, m -> a, s -> e_2
    phi = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert al.is_algebra_isomorphism(L.algebra, F4, phi)


def test_zero_bimodule_gives_product(F1, F4):
    L = tr.build_triangular(tr.TriangularData(F1, F4, al.zero_bimodule(F1, F4)))
    P = al.product_algebra(F1, F4)
    assert al.is_algebra_isomorphism(L.algebra, P, la.identity(P.dim))


def test_eS_Lambda_eR_vanishes(L123):
    A = L123.algebra
    for i in range(A.dim):
        x = A.multiply(A.multiply(L123.e_S, A.basis_vector(i)), L123.e_R)
        assert x == A.zero_vector()


def test_regular_module_triple(d123, L123, F1, F2):
    Z = al.regular_module(L123.algebra)
    view = tr.lambda_to_triple(Z, L123)
    assert view.triple.dims == (F1.dim, d123.M.dim + F2.dim)
    RM = tr.i_shriek(d123, al.regular_module(F1))
    S0 = tr.j_shriek(d123, al.regular_module(F2))
    both = al.direct_sum([tr.triple_to_lambda(RM, L123), tr.triple_to_lambda(S0, L123)])
    assert flat_iso(L123, Z, both)


def test_zero_and_simple_triples(d123, L123, F1):
    z = tr.lambda_to_triple(al.zero_module(L123.algebra), L123).triple
    assert z.dims == (0, 0)
    simp = tr.lambda_to_triple(al.simple_module(L123.algebra, 0), L123).triple
    assert simp.dims == (1, 0)
    assert simp.X.same_as(al.simple_module(F1, 0))
    back = tr.triple_to_lambda(simp, L123)
    assert back.same_as(al.simple_module(L123.algebra, 0))


def test_triple_balance_enforced(d123, F1, F2):
    X, Y = al.regular_module(F1), al.simple_module(F2, 0)
    tr.TripleModule(d123, X, Y, [[1, 0]])
    with pytest.raises(ModuleViolation):
        tr.TripleModule(d123, X, Y, [[1, 1]])
    with pytest.raises(CategoryMismatch):
        tr.TripleModule(d123, Y, X, [[1, 0]])


def test_triple_action_formula(d123, L123, F1, F2):
    """(x, y)(r, m, s) = (x r, f(x (x) m) + y s)."""
    t = tr.TripleModule(d123, al.regular_module(F1), al.regular_module(F2), [[0, 0], [0, 0], [1, 0]])
    Z = tr.triple_to_lambda(t, L123)
    rng = random.Random(5)
    for _ in range(10):
        x, y = sp.random_vector(rng, 2), sp.random_vector(rng, 3)
        r, m, s = sp.random_vector(rng, 2), sp.random_vector(rng, 1), sp.random_vector(rng, 3)
        out = Z.act_vector(x + y, r + m + s)
        fx = la.mat_vec(la.lin_comb(m, t.F, 3, 2), x)
        ys = t.Y.act_vector(y, s)
        assert out == t.X.act_vector(x, r) + [a + b for a, b in zip(fx, ys)]


def test_functor_examples(d123, F1, F2, F5):
    R = al.regular_module(F1)
    iR = tr.i_shriek(d123, R)
    assert tr.j_natural(iR).dim == 0
    assert al.find_isomorphism(tr.j_inv(iR), d123.M_S) is not None
    assert tr.i_inv(tr.i_star(d123, R)) is R
    # M is killed by x, so f# : R -> Hom_S(M, M) has kernel (x)
    assert tr.i_upper_shriek(iR).dim == 1
    assert tr.j_star(d123, al.regular_module(F2)).X.dim == al.hom_dim(F5, al.regular_module(F2))
    assert tr.j_natural(tr.j_shriek(d123, F5)).same_as(F5)


def test_functor_apply_dispatch(d123, F1):
    R = al.regular_module(F1)
    t = tr.functor_apply("i_star", d123, R)
    assert tr.functor_apply("i_inv", d123, t) is R
    with pytest.raises(CategoryMismatch):
        tr.functor_apply("i_inv", d123, R)
    with pytest.raises(CategoryMismatch):
        tr.functor_apply("i_star", d123, t)
    with pytest.raises(CategoryMismatch):
        tr.functor_apply("j_shriek", d123, R)
    with pytest.raises(ValueError):
        tr.functor_apply("nope", d123, R)


def test_i_shriek_functorial(d123, F1):
    R = al.regular_module(F1)
    ends = al.hom_basis(R, R)
    iR = tr.i_shriek(d123, R)
    for a in ends:
        for b in ends:
            a1, Fa = tr.i_shriek_map(d123, R, R, a)
            assert tr.TripleHom(iR, iR, a1, Fa).commutes()
            _, Fb = tr.i_shriek_map(d123, R, R, b)
            _, Fab = tr.i_shriek_map(d123, R, R, la.mat_mul(b, a))
            assert la.mat_equal(Fab, la.mat_mul(Fb, Fa))


def test_adjunction_triangles(d123, L123):
    """Unit C -> i_* i^-1 C and counit j_! j^-1 C -> C are comma morphisms and Λ-maps."""
    rng = random.Random(11)
    for _ in range(5):
        C = sp.random_triple(rng, d123, L123)
        dX, dY = C.dims
        Z = tr.triple_to_lambda(C, L123)
        ii = tr.i_star(d123, C.X)
        eta = tr.TripleHom(C, ii, la.identity(dX), [])
        assert eta.commutes()
        # i^-1 of the unit is the identity, and the counit i^-1 i_* A -> A is the identity
        assert tr.i_inv(ii) is C.X
        jj = tr.j_shriek(d123, C.Y)
        eps = tr.TripleHom(jj, C, [[] for _ in range(dX)], la.identity(dY))
        assert eps.commutes()
        assert tr.j_inv(jj) is C.Y
        if dX and dY:
            assert al.is_homomorphism(Z, tr.triple_to_lambda(ii, L123), eta.matrix())
            assert al.is_homomorphism(tr.triple_to_lambda(jj, L123), Z, eps.matrix())


def test_comma_hom_matches_flat_hom(d123, L123):
    rng = random.Random(2)
    for _ in range(8):
        s = sp.random_triple(rng, d123, L123)
        t = sp.random_triple(rng, d123, L123)
        homs = tr.triple_hom_basis(s, t)
        assert len(homs) == tr.lambda_hom_dim(s, t, L123)
        assert all(h.commutes() for h in homs)


def test_gluing_on_projectives(d123, L123):
    samples = [tr.lambda_to_triple(al.projective_module(L123.algebra, i), L123).triple for i in range(2)]
    rep = tr.verify_gluing(d123, samples, T=L123)
    assert rep.ok, rep.failures()
    rep = tr.verify_gluing(d123, [tr.lambda_to_triple(al.regular_module(L123.algebra), L123).triple], T=L123)
    assert rep.ok


def test_zero_bimodule_sequence_splits(F1, F4):
    d = tr.TriangularData(F1, F4, al.zero_bimodule(F1, F4))
    T = tr.build_triangular(d)
    rng = random.Random(4)
    for _ in range(5):
        C = sp.random_triple(rng, d, T)
        split = al.direct_sum([tr.triple_to_lambda(tr.j_shriek(d, C.Y), T), tr.triple_to_lambda(tr.i_star(d, C.X), T)], T.algebra)
        assert flat_iso(T, C, split)


def test_i_shriek_preserves_projectives(d123, L123, F1):
    Z = tr.triple_to_lambda(tr.i_shriek(d123, al.regular_module(F1)), L123)
    assert al.is_projective_module(Z)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_round_trip(seed):
    rng = random.Random(seed)
    d = sp.random_triangular(rng)
    T = tr.build_triangular(d)
    Z = sp.random_module(rng, T.algebra, 6)
    view = tr.lambda_to_triple(Z, T)
    view.triple.validate()
    W = tr.triple_to_lambda(view.triple, T)
    n = Z.dim
    for g in range(T.dim):
        conj = la.mat_mul(la.mat_mul(view.to_triple, Z.action[g], cols=n), view.from_triple, cols=n) if n else []
        assert la.mat_equal(W.action[g], conj)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_random_gluing(seed):
    rng = random.Random(seed)
    d = sp.random_triangular(rng)
    T = tr.build_triangular(d)
    A = sp.random_module(rng, d.R, 3)
    B = sp.random_module(rng, d.S, 3)
    samples = [sp.random_triple(rng, d, T) for _ in range(2)]
    rep = tr.verify_gluing(d, samples, [A], [B], T=T)
    assert rep.ok, rep.failures()
    A_ = T.algebra
    for i in range(A_.dim):
        assert A_.multiply(A_.multiply(T.e_S, A_.basis_vector(i)), T.e_R) == A_.zero_vector()
