from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from trimat import linalg as la
from trimat.errors import UnsupportedField, ValidationError
from trimat.linalg import GF, QQ, ModP

small = st.integers(-5, 5)


def int_matrix(rows, cols, lo=-5, hi=5):
    return st.lists(st.lists(st.integers(lo, hi), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_rationals_lowest_terms():
    assert QQ("6/4") == Fraction(3, 2)
    assert QQ(Fraction(6, -4)).denominator > 0


def test_prime_field_residues():
    F = GF(7)
    x = F(10)
    assert x.v == 3
    assert (x * F(5)).v == 1
    assert (F(1) / F(3)) * F(3) == F(1)
    assert F("1/2") * 2 == F(1)
    with pytest.raises(ValidationError):
        GF(8)


def test_field_spec():
    assert la.field_from_spec("rational") is QQ
    assert la.field_from_spec("fp:5").characteristic == 5
    with pytest.raises(ValidationError):
        la.field_from_spec("reals")


def test_solve_identity():
    s = la.solve_linear(la.identity(2), [[3], [4]])
    assert s.feasible
    assert la.mat_mul(la.identity(2), s.particular) == [[3], [4]]


def test_solve_zero_system():
    s = la.solve_linear(la.zeros(2, 2), la.zeros(2, 1))
    assert s.feasible and len(s.kernel) == 2


def test_solve_hand_example():
    A = [[1, 1], [0, 0]]
    x = la.solve_vector(A, [1, 0])
    assert x == [1, 0]
    assert len(la.kernel(A)) == 1


def test_solve_infeasible():
    assert la.solve_vector([[1, 1], [1, 1]], [1, 2]) is None
    assert not la.solve_linear([[1, 1], [1, 1]], [[1], [2]]).feasible


def test_kernel_examples():
    assert la.kernel(la.identity(3)) == []
    assert len(la.kernel(la.zeros(2, 3), 3)) == 3
    (v,) = la.kernel([[1, 2], [2, 4]])
    assert v[0] == -2 * v[1]


def test_snf_examples():
    for C, diag in (([[2, 0], [1, 3]], [1, 6]), ([[3, 0], [1, 2]], [1, 6]), (la.identity(3), [1, 1, 1])):
        U, D, V = la.smith_normal_form(C)
        assert la.mat_mul(la.mat_mul(U, C), V) == D
        assert [D[i][i] for i in range(len(D))] == diag


def test_unimodular():
    assert la.is_unimodular(la.identity(3))
    assert not la.is_unimodular([[2, 0], [0, 1]])
    assert la.is_unimodular([[0, 1], [-1, -1]])


def test_charpoly_and_roots():
    assert la.charpoly([[2, 0], [1, 3]]) == [6, -5, 1]
    assert la.rational_roots([6, -5, 1]) == [2, 3]
    assert la.eigenvalues([[2, 0], [1, 3]], QQ) == [2, 3]
    F = GF(5)
    A = [[F(2), F(0)], [F(1), F(3)]]
    assert sorted(x.v for x in la.eigenvalues(A, F)) == [2, 3]
    with pytest.raises(UnsupportedField):
        la.eigenvalues([[GF(7919)(1)]], GF(7919))


def test_subspace_quotient():
    W = la.Subspace([[1, 0, 0], [0, 1, 1]], 3)
    assert W.dim == 2 and W.codim == 1
    assert W.contains([2, 3, 3]) and not W.contains([0, 0, 1])
    Q = W.quotient_matrix()
    S = W.section_matrix()
    assert la.mat_mul(Q, S) == la.identity(1)
    for b in W.basis:
        assert not any(la.mat_vec(Q, b))


@settings(max_examples=60, deadline=None)
@given(int_matrix(3, 4), int_matrix(3, 2))
def test_solutions_reproduce_rhs(A, B):
    s = la.solve_linear(A, B, 4)
    if s.feasible:
        assert la.mat_mul(A, s.particular) == [[Fraction(x) for x in r] for r in B]
        for v in s.kernel:
            assert not any(la.mat_vec(A, v))
    assert len(la.kernel(A, 4)) == 4 - la.rank(A, 4)


@settings(max_examples=60, deadline=None)
@given(int_matrix(4, 4), int_matrix(4, 4))
def test_det_multiplicative(A, B):
    assert la.det_int(la.mat_mul(A, B)) == la.det_int(A) * la.det_int(B)
    assert la.det(A) == la.det_int(A)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, 4))).flatmap(
    lambda rc: int_matrix(rc[0], rc[1], -9, 9)))
def test_snf_properties(C):
    U, D, V = la.smith_normal_form(C)
    assert la.is_unimodular(U) and la.is_unimodular(V)
    assert la.mat_mul(la.mat_mul(U, C), V) == D
    r, c = len(C), len(C[0])
    diag = [D[i][i] for i in range(min(r, c))]
    for i in range(r):
        for j in range(c):
            if i != j:
                assert D[i][j] == 0
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[: len(nz)] == nz
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 3))
def test_inverse_roundtrip(A):
    if la.det_int(A) == 0:
        return
    assert la.mat_mul(A, la.inverse(A)) == la.identity(3)


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 3, -3, 3))
def test_charpoly_cayley_hamilton(A):
    c = la.charpoly(A)
    acc = la.zeros(3, 3)
    for k, ck in enumerate(c):
        acc = la.mat_add(acc, la.mat_scale(ck, la.mat_pow(A, k)))
    assert la.is_zero_matrix(acc)


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 3, 0, 6))
def test_prime_field_rank_consistent(A):
    F = GF(7)
    Ap = [[F(x) for x in r] for r in A]
    K = la.kernel(Ap, 3, F.one)
    for v in K:
        assert all(x == 0 for x in la.mat_vec(Ap, v))
    assert len(K) + la.rank(Ap, 3) == 3
    assert isinstance(la.det(Ap), ModP)
