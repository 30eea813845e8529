import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from trimat import algebra as al
from trimat import homological as hm
from trimat import invariants as iv
from trimat import linalg as la
from trimat import sampling as sp
from trimat import triangular as tr
from trimat.errors import NeitherBlockInvertible, SingularCartan
from trimat.linalg import QQ

EX_L = [[2, 0], [1, 3]]
EX_MATE = [[3, 0], [1, 2]]


@pytest.fixture(scope="module")
def d123(F1, F2, F3):
    return tr.TriangularData(F1, F2, F3)


def corner_dim(A, e, f):
    vecs = [A.multiply(A.multiply(e, A.basis_vector(b)), f) for b in range(A.dim)]
    return la.rank(la.from_columns(vecs, A.dim), len(vecs))


def transform(P, C):
    n = len(C)
    return la.mat_mul(la.mat_mul(la.transpose(P, n), C, cols=n), P, cols=n)


def test_cartan_examples(F1, F2, F4, d123):
    assert iv.cartan_matrix(F1) == [[2]]
    assert iv.cartan_matrix(F2) == [[3]]
    assert iv.cartan_matrix(tr.build_triangular(d123).algebra, cross_check=True) == EX_L
    C = iv.cartan_matrix(F4, cross_check=True)
    assert C[0][0] == C[1][1] == 1
    assert sorted([C[0][1], C[1][0]]) == [0, 1]


def test_cartan_block_examples(d123, F1, F4):
    rep = iv.cartan_block_check(d123)
    assert rep.passed and rep.C_M == [[1]] and rep.as_dict()["C_Lambda"] == EX_L
    z = iv.cartan_block_check(tr.TriangularData(F1, F4, al.zero_bimodule(F1, F4)))
    assert z.passed and z.C_M == [[0], [0]]
    reg = iv.cartan_block_check(tr.TriangularData(F4, F4, al.regular_bimodule(F4)))
    E = F4.idempotents
    assert reg.passed
    assert reg.C_M == [[corner_dim(F4, E[i], E[j]) for i in range(2)] for j in range(2)]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_cartan_block_random(seed):
    d = sp.random_triangular(random.Random(seed), 4)
    assert iv.cartan_block_check(d).passed


def test_euler_pairing_basic(F4):
    C = iv.cartan_matrix(F4)
    for i, j in itertools.product(range(2), repeat=2):
        v = [int(k == i) for k in range(2)]
        w = [int(k == j) for k in range(2)]
        assert iv.euler_pairing(C, v, w) == C[i][j]
    assert iv.euler_pairing(C, [1, 1], [1, 1]) == sum(map(sum, C))


def _class(P):
    n = len(P.algebra.idempotents)
    v = [0] * n
    for deg in P.degrees:
        for t in P.term(deg).tags:
            v[t] += (-1) ** (deg % 2)
    return v


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_euler_pairing_alternating_sum(seed):
    """<[P], [Q]> = sum_n (-1)^n dim Hom_K(P, Q[n]) for complexes of projectives."""
    rng = random.Random(seed)
    A = rng.choice(sp.finite_gldim_pool())
    P = hm.projective_resolution(sp.random_module(rng, A, 4)).complex()
    Q = hm.projective_resolution(sp.random_module(rng, A, 4)).complex().shift(rng.randint(-1, 1))
    dims = hm.hom_complex_cohomology(P, Q, -8, 8)
    alt = sum((-1) ** (n % 2) * v for n, v in dims.items())
    assert alt == iv.euler_pairing(iv.cartan_matrix(A), _class(P), _class(Q))


def test_blockswap_example():
    P = iv.congruence_witness_blockswap([[2]], [[1]], [[1]])
    assert transform(P, [[2, 0], [1, 1]]) == [[1, 0], [1, 2]]
    assert abs(la.det_int(P)) == 1


def test_blockswap_alternate_and_failure():
    P = iv.congruence_witness_blockswap([[1]], [[2]], [[3]])
    assert transform(P, [[1, 0], [3, 2]]) == [[2, 0], [3, 1]]
    with pytest.raises(NeitherBlockInvertible):
        iv.congruence_witness_blockswap([[2]], [[2]], [[1]])


def test_blockswap_desk_instance(F1, F4):
    CR, CS = iv.cartan_matrix(F1), iv.cartan_matrix(F4)
    C_M = [[0], [1]]
    P = iv.congruence_witness_blockswap(CR, CS, C_M)
    assert transform(P, iv.lower_block(CR, CS, C_M)) == iv.lower_block(CS, CR, la.transpose(C_M, 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_blockswap_random(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    A = sp.random_int_matrix(rng, m, m)
    B = sp.random_unimodular_bounded(rng, n)
    C = sp.random_int_matrix(rng, n, m)
    P = iv.congruence_witness_blockswap(A, B, C)
    assert abs(la.det_int(P)) == 1
    assert transform(P, iv.lower_block(A, B, C)) == iv.lower_block(B, A, la.transpose(C, n))


def test_congruence_identity():
    r = iv.congruent_over_Z(EX_L, EX_L)
    assert r.verdict == "Congruent" and r.P == la.identity(2)


def test_congruence_example_refuted():
    r = iv.congruent_over_Z(EX_L, EX_MATE)
    assert r.verdict == "NotCongruent"
    c = r.certificate
    assert c["method"] == "complete-enumeration" and c["definite"] == "positive"
    assert c["symmetric_part"] == [[4, 1], [1, 6]]
    assert c["screens"]["det"] and c["screens"]["snf"]
    assert iv.coxeter_polynomial(EX_L) == iv.coxeter_polynomial(EX_MATE)


def test_congruence_negative_definite():
    neg = lambda C: [[-x for x in r] for r in C]
    r = iv.congruent_over_Z(neg(EX_L), neg(EX_MATE))
    assert r.verdict == "NotCongruent" and r.certificate["definite"] == "negative"


def test_congruence_indefinite():
    r = iv.congruent_over_Z([[1, 2], [0, 1]], [[1, 0], [2, 1]])
    assert r.verdict == "Congruent"
    assert transform(r.P, [[1, 2], [0, 1]]) == [[1, 0], [2, 1]]
    r = iv.congruent_over_Z([[1, 0], [0, -1]], [[1, 0], [0, -2]])
    assert r.verdict == "NotCongruent" and r.certificate["method"] == "invariant-screen"
    # P = [[2, 1], [1, 1]] needs an entry outside the box of radius 1
    C2 = transform([[2, 1], [1, 1]], [[1, 0], [0, -1]])
    assert iv.congruent_over_Z([[1, 0], [0, -1]], C2, search_bound=1).verdict == "Unknown"
    assert iv.congruent_over_Z([[1, 0], [0, -1]], C2, search_bound=2).verdict == "Congruent"


def _brute(C1, C2, b):
    for e in itertools.product(range(-b, b + 1), repeat=4):
        P = [[e[0], e[1]], [e[2], e[3]]]
        if abs(e[0] * e[3] - e[1] * e[2]) == 1 and transform(P, C1) == C2:
            return P
    return None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_congruence_against_brute_force(seed):
    rng = random.Random(seed)
    while True:
        C1 = sp.random_int_matrix(rng, 2, 2, -2, 3)
        if iv.is_positive_definite(iv._sym(C1)):
            break
    if rng.random() < 0.5:
        C2 = transform(sp.random_unimodular_bounded(rng, 2, -2, 2), C1)
    else:
        C2 = sp.random_int_matrix(rng, 2, 2, -2, 3)
    r = iv.congruent_over_Z(C1, C2)
    found = _brute(C1, C2, 3)
    if r.verdict == "Congruent":
        assert transform(r.P, C1) == C2 and abs(la.det_int(r.P)) == 1
    else:
        assert r.verdict == "NotCongruent" and found is None


def test_coxeter_examples():
    assert iv.coxeter_polynomial(la.identity(1)) == [1, 1]
    assert iv.coxeter_polynomial(la.identity(3)) == [1, 3, 3, 1]
    assert iv.coxeter_polynomial(EX_L) == [6, 11, 6]
    with pytest.raises(SingularCartan):
        iv.coxeter_polynomial([[1, 1], [1, 1]])


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_coxeter_congruence_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    C = sp.random_int_matrix(rng, n, n)
    if la.det_int(C) == 0:
        C = [[C[i][j] + (7 if i == j else 0) for j in range(n)] for i in range(n)]
    if la.det_int(C) == 0:
        return
    P = sp.random_unimodular(rng, n)
    assert iv.coxeter_polynomial(C) == iv.coxeter_polynomial(transform(P, C))


def _kron_data(F4):
    M = al.Bimodule(F4, F4, [[[1]], [[0]], [[0]]], [[[0]], [[1]], [[0]]], name="M")
    return M, al.dual_bimodule(M)


def test_trivial_extensions(F4):
    M, DM = _kron_data(F4)
    AM = iv.trivial_extension(F4, M)
    ADM = iv.trivial_extension(F4, DM)
    K = al.path_algebra(QQ, [1, 2], [("a", 1, 2), ("b", 1, 2)])
    Z = al.path_algebra(QQ, [1, 2], [("a", 1, 2), ("b", 2, 1)], [{"a*b": 1}, {"b*a": 1}], bound=3)
    assert AM.dim == ADM.dim == 4
    assert al.is_algebra_isomorphism(AM, K, la.identity(4))
    assert al.is_algebra_isomorphism(ADM, Z, la.identity(4))
    assert hm.global_dimension(AM).value == hm.Finite(1)
    assert hm.global_dimension(ADM, 12).value == hm.AtLeast(12)
    A0 = iv.trivial_extension(F4, al.zero_bimodule(F4, F4))
    assert al.is_algebra_isomorphism(A0, F4, la.identity(3))


def test_semisimple_gldim():
    k = al.field_algebra(QQ)
    assert iv.global_dimension(al.product_algebra(k, k)).value == hm.Finite(0)


def test_repetitive_one_period(d123, F4):
    for A in (tr.build_triangular(d123).algebra, F4):
        R1 = iv.repetitive_truncation(A, 1)
        TE = iv.trivial_extension(A, al.dual_bimodule(al.regular_bimodule(A)))
        assert R1.mult == TE.mult and R1.unit == TE.unit


def test_repetitive_shift(d123):
    rep = iv.repetitive_shift_isomorphism(d123, 3)
    assert rep.passed and rep.dim == 36
    # the Cartan matrices of the two sides are still not congruent
    assert iv.congruent_over_Z(EX_L, EX_MATE).verdict == "NotCongruent"


def test_repetitive_shift_other_periods(d123, F1, F4):
    assert iv.repetitive_shift_isomorphism(d123, 1).passed
    assert iv.repetitive_shift_isomorphism(d123, 2).passed
    desk = tr.TriangularData(F1, F4, al.Bimodule(F1, F4, [[[1]], [[0]]], al.simple_module(F4, 1).action))
    assert iv.repetitive_shift_isomorphism(desk, 3).passed


def test_repetitive_zero_bimodule(F1, F4):
    d = tr.TriangularData(F1, F4, al.zero_bimodule(F1, F4))
    A = iv.repetitive_truncation(d, 2)
    assert A.dim == 2 * 2 * 5
    assert iv.repetitive_shift_isomorphism(d, 2).passed


def test_shift_map_negative_control(d123):
    A = iv.repetitive_truncation(d123, 3)
    mate = tr.TriangularData(d123.S, d123.R, al.dual_bimodule(d123.M))
    B = iv.repetitive_truncation(mate, 3)
    P = iv.shift_map(d123, 3)
    bad = P[1:] + P[:1]
    assert not al.is_algebra_isomorphism(B, A, bad)
