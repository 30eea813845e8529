"""Cartan matrices, Euler form, integral congruence and repetitive truncations."""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg as la
from .algebra import (
    Algebra,
    Bimodule,
    dual_bimodule,
    hom_dim,
    is_algebra_isomorphism,
    projective_module,
    regular_bimodule,
)
from .errors import AlgebraMismatch, DimensionMismatch, NeitherBlockInvertible, SingularCartan
from .homological import GldimProbe, global_dimension  # noqa: F401  (re-exported)
from .triangular import TriangularData, build_triangular

__all__ = [
    "cartan_matrix",
    "cartan_block_check",
    "euler_pairing",
    "congruence_witness_blockswap",
    "Congruent",
    "NotCongruent",
    "CongruenceUnknown",
    "congruent_over_Z",
    "coxeter_polynomial",
    "trivial_extension",
    "repetitive_truncation",
    "repetitive_shift_isomorphism",
    "global_dimension",
    "GldimProbe",
]


# ---------------------------------------------------------------------------
# Cartan matrices


def cartan_matrix(A: Algebra, cross_check: bool = False) -> list[list[int]]:
    """C_ij = dim e_j A e_i over the algebra's idempotent list."""
    E = A.idempotents
    n = len(E)
    C = [[A.corner(E[j], E[i]).dim for j in range(n)] for i in range(n)]
    if cross_check:
        for i in range(n):
            for j in range(n):
                h = hom_dim(projective_module(A, i), projective_module(A, j))
                if h != C[i][j]:
                    raise AssertionError(f"Cartan entry ({i},{j}): corner {C[i][j]} vs Hom {h}")
    return C


@dataclass
class CartanBlockReport:
    passed: bool
    C_R: list
    C_S: list
    C_M: list
    C_total: list
    nonbasic: bool = False

    def as_dict(self):
        return {
            "passed": self.passed,
            "C_R": self.C_R,
            "C_S": self.C_S,
            "C_M": self.C_M,
            "C_Lambda": self.C_total,
            "nonbasic": self.nonbasic,
        }


def bimodule_cartan(M: Bimodule) -> list[list[int]]:
    """(C_M)_ji = dim e_i M f_j (rows indexed by S-idempotents)."""
    R, S = M.left_algebra, M.right_algebra
    out = []
    for f in S.idempotents:
        row = []
        for e in R.idempotents:
            P = la.mat_mul(M.left(e), M.right(f), cols=M.dim) if M.dim else []
            row.append(la.rank(P, M.dim) if M.dim else 0)
        out.append(row)
    return out


def cartan_block_check(d: TriangularData) -> CartanBlockReport:
    CR = cartan_matrix(d.R)
    CS = cartan_matrix(d.S)
    CM = bimodule_cartan(d.M)
    m, n = len(CR), len(CS)
    expected = [CR[i] + [0] * n for i in range(m)] + [CM[j] + CS[j] for j in range(n)]
    C = cartan_matrix(build_triangular(d).algebra)
    nonbasic = not (getattr(d.R, "basic", True) and getattr(d.S, "basic", True))
    return CartanBlockReport(C == expected, CR, CS, CM, C, nonbasic)


def euler_pairing(C, v, w) -> int:
    if len(v) != len(C) or len(w) != len(C):
        raise DimensionMismatch("vector length does not match the Cartan matrix")
    return sum(v[i] * C[i][j] * w[j] for i in range(len(C)) for j in range(len(C)))


# ---------------------------------------------------------------------------
# block swap witness


def _blocks_ok(A, B, C):
    m, n = len(A), len(B)
    if any(len(r) != m for r in A) or any(len(r) != n for r in B):
        raise DimensionMismatch("diagonal blocks must be square")
    if len(C) != n or any(len(r) != m for r in C):
        raise DimensionMismatch("off-diagonal block must be dim B x dim A")
    return m, n


def lower_block(A, B, C):
    """[[A, 0], [C, B]]."""
    m, n = len(A), len(B)
    return [list(A[i]) + [0] * n for i in range(m)] + [list(C[j]) + list(B[j]) for j in range(n)]


def congruence_witness_blockswap(A, B, C) -> list[list[int]]:
    """Integral P with P^t [[A,0],[C,B]] P = [[B,0],[C^t,A]].

    Uses B^{-1} when B is unimodular, otherwise A^{-1} when A is.
    """
    m, n = _blocks_ok(A, B, C)
    if n == 0 or la.is_unimodular(B):
        Bi = la.int_inverse(B) if n else []
        X = [[-x for x in row] for row in la.mat_mul(Bi, la.transpose(B, n), cols=n)] if n else []
        Y = [[-x for x in row] for row in la.mat_mul(Bi, C, cols=m)] if n else []
        top = [[0] * n + [1 if i == j else 0 for j in range(m)] for i in range(m)]
        bottom = [list(X[j]) + list(Y[j]) for j in range(n)]
        P = top + bottom
    elif la.is_unimodular(A):
        Ai = la.int_inverse(A)
        Ait = la.transpose(Ai, m)
        U = [[-x for x in row] for row in la.mat_mul(Ait, la.transpose(C, n), cols=n)]
        V = [[-x for x in row] for row in la.mat_mul(Ait, A, cols=m)]
        top = [list(U[i]) + list(V[i]) for i in range(m)]
        bottom = [[1 if i == j else 0 for j in range(n)] + [0] * m for i in range(n)]
        P = top + bottom
    else:
        raise NeitherBlockInvertible("neither diagonal block is invertible over Z")
    P = [[int(x) for x in row] for row in P]
    src = lower_block(A, B, C)
    dst = lower_block(B, A, la.transpose(C, n) if C else [[0] * n for _ in range(m)])
    if _congruence(P, src) != dst:
        raise AssertionError("block swap witness failed to verify")
    return P


def _congruence(P, C):
    n = len(C)
    if n == 0:
        return []
    return la.mat_mul(la.mat_mul(la.transpose(P, n), C, cols=n), P, cols=n)


# ---------------------------------------------------------------------------
# congruence over Z


@dataclass
class Congruent:
    P: list

    verdict = "Congruent"

    def as_dict(self):
        return {"verdict": self.verdict, "P": self.P}


@dataclass
class NotCongruent:
    certificate: dict

    verdict = "NotCongruent"

    def as_dict(self):
        return {"verdict": self.verdict, "certificate": self.certificate}


@dataclass
class CongruenceUnknown:
    search_bound: int
    screens: dict = dc_field(default_factory=dict)

    verdict = "Unknown"

    def as_dict(self):
        return {"verdict": self.verdict, "search_bound": self.search_bound, "screens": self.screens}


def _sym(C):
    n = len(C)
    return [[C[i][j] + C[j][i] for j in range(n)] for i in range(n)]


def _skew(C):
    n = len(C)
    return [[C[i][j] - C[j][i] for j in range(n)] for i in range(n)]


def is_positive_definite(S) -> bool:
    """Leading principal minors, exactly."""
    n = len(S)
    return all(la.det([row[:k] for row in S[:k]]) > 0 for k in range(1, n + 1))


def screens(C1, C2) -> dict:
    out = {
        "det": la.det_int(C1) == la.det_int(C2) if C1 else True,
        "snf": la.smith_diagonal(C1) == la.smith_diagonal(C2) if C1 else True,
        "snf_sym": la.smith_diagonal(_sym(C1)) == la.smith_diagonal(_sym(C2)) if C1 else True,
        "snf_skew": la.smith_diagonal(_skew(C1)) == la.smith_diagonal(_skew(C2)) if C1 else True,
    }
    return out


def _ldl(S):
    """Exact Cholesky-type data q with Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(S)
    q = [[Fraction(S[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(S, target) -> list[list[int]]:
    """All integer x with x^t S x == target, for S positive definite (Fincke-Pohst)."""
    n = len(S)
    if target < 0:
        return []
    q = _ldl(S)
    T = Fraction(target)
    out = []
    x = [0] * n

    def rec(i, remaining):
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r = math.sqrt(float(remaining / q[i][i])) if remaining > 0 else 0.0
        lo = math.floor(-c - r) - 1
        hi = math.ceil(-c + r) + 1
        for v in range(lo, hi + 1):
            t = q[i][i] * (v + c) ** 2
            if t > remaining:
                continue
            x[i] = v
            if i == 0:
                if remaining - t == 0:
                    out.append(list(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    if n:
        rec(n - 1, T)
    out.sort()
    return out


def _quad(C, u, v):
    n = len(C)
    return sum(u[i] * C[i][j] * v[j] for i in range(n) for j in range(n))


def _assemble(C1, C2, candidates, stats):
    """Backtracking over columns with all pairwise constraints; yields P or None."""
    n = len(C1)
    chosen = []

    def rec(j):
        if j == n:
            P = la.from_columns(chosen, n)
            if abs(la.det_int(P)) == 1 and _congruence(P, C1) == C2:
                return P
            return None
        for p in candidates[j]:
            stats["nodes"] += 1
            if _quad(C1, p, p) != C2[j][j]:
                continue
            ok = True
            for i, q in enumerate(chosen):
                if _quad(C1, q, p) != C2[i][j] or _quad(C1, p, q) != C2[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(p)
            res = rec(j + 1)
            if res is not None:
                return res
            chosen.pop()
        return None

    return rec(0)


def congruent_over_Z(C1, C2, search_bound: int = 3):
    """Decide whether P^t C1 P = C2 for some P in GL_n(Z).

    Positive (or negative) definite symmetric part: complete enumeration of
    the finitely many admissible columns.  Otherwise a bounded search whose
    failure is reported as Unknown.
    """
    n = len(C1)
    if len(C2) != n or any(len(r) != n for r in C1) or any(len(r) != n for r in C2):
        raise DimensionMismatch("congruence needs square matrices of equal size")
    C1 = [[int(x) for x in r] for r in C1]
    C2 = [[int(x) for x in r] for r in C2]
    if C1 == C2:
        return Congruent(la.identity(n))
    scr = screens(C1, C2)
    S1, S2 = _sym(C1), _sym(C2)
    sign = 0
    if n and is_positive_definite(S1):
        sign = 1
    elif n and is_positive_definite([[-x for x in r] for r in S1]):
        sign = -1
    if sign:
        Sd = [[sign * x for x in r] for r in S1]
        candidates = [short_vectors(Sd, sign * S2[j][j]) for j in range(n)]
        stats = {"nodes": 0}
        P = _assemble(C1, C2, candidates, stats)
        if P is not None:
            return Congruent([[int(x) for x in r] for r in P])
        return NotCongruent(
            {
                "method": "complete-enumeration",
                "symmetric_part": S1,
                "definite": "positive" if sign > 0 else "negative",
                "column_norms": [S2[j][j] for j in range(n)],
                "candidate_counts": [len(c) for c in candidates],
                "nodes": stats["nodes"],
                "screens": scr,
            }
        )
    if not all(scr.values()):
        return NotCongruent({"method": "invariant-screen", "screens": scr})
    box = [v for v in _box(n, search_bound)]
    candidates = [[p for p in box if _quad(C1, p, p) == C2[j][j]] for j in range(n)]
    stats = {"nodes": 0}
    P = _assemble(C1, C2, candidates, stats)
    if P is not None:
        return Congruent([[int(x) for x in r] for r in P])
    return CongruenceUnknown(search_bound, scr)


def _box(n, b):
    if n == 0:
        yield []
        return
    for rest in _box(n - 1, b):
        for v in range(-b, b + 1):
            yield rest + [v]


def coxeter_polynomial(C) -> list[int]:
    """Integer coefficients [c_0, ..., c_n] of the characteristic polynomial of -C^{-t} C."""
    n = len(C)
    Cq = [[Fraction(x) for x in r] for r in C]
    if n and la.det(Cq) == 0:
        raise SingularCartan("Cartan matrix is singular over Q")
    if n == 0:
        return [1]
    Cit = la.transpose(la.inverse(Cq), n)
    Phi = [[-x for x in r] for r in la.mat_mul(Cit, Cq, cols=n)]
    coeffs = [Fraction(c) for c in la.charpoly(Phi)]
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


# ---------------------------------------------------------------------------
# trivial extensions and repetitive truncations


def trivial_extension(A: Algebra, M: Bimodule, name: str = "") -> Algebra:
    """A ⋉ M: basis [A | M], (a, m)(a', m') = (aa', am' + ma')."""
    if M.left_algebra is not A or M.right_algebra is not A:
        raise AlgebraMismatch("trivial extension needs an (A, A)-bimodule")
    dA, dM = A.dim, M.dim
    d = dA + dM
    mult = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(dA):
        for j in range(dA):
            mult[i][j] = dict(A.mult[i][j])
    for k in range(dA):
        L, R = M.left_action[k], M.right_action[k]
        for j in range(dM):
            mult[k][dA + j] = {dA + i: L[i][j] for i in range(dM) if L[i][j]}
            mult[dA + j][k] = {dA + i: R[i][j] for i in range(dM) if R[i][j]}
    unit = list(A.unit) + [0] * dM
    idem = [list(e) + [0] * dM for e in A.idempotents]
    labels = [f"a:{x}" for x in A.labels] + [f"m:{j}" for j in range(dM)]
    return Algebra(A.field, labels, mult, unit, idem, name=name or f"{A.name} ⋉ {M.name}")


def repetitive_truncation(A: Algebra | TriangularData, periods: int) -> Algebra:
    """Cyclic truncation of the repetitive algebra with ``periods`` copies.

    Basis: for each i, A_i then DA_i.  DA_i sits between A_i and A_{i+1}
    (indices mod ``periods``): a_i φ_i and φ_i a_{i+1} use the dual bimodule
    actions, DA·DA = 0.  One period gives A ⋉ DA.
    """
    if isinstance(A, TriangularData):
        A = build_triangular(A).algebra
    if periods < 1:
        raise ValueError("need at least one period")
    p, n = periods, A.dim
    DA = dual_bimodule(regular_bimodule(A))
    d = 2 * n * p
    mult = [[{} for _ in range(d)] for _ in range(d)]

    def a_idx(i, j):
        return (i % p) * 2 * n + j

    def m_idx(i, j):
        return (i % p) * 2 * n + n + j

    for i in range(p):
        for x in range(n):
            for y in range(n):
                if A.mult[x][y]:
                    mult[a_idx(i, x)][a_idx(i, y)] = {a_idx(i, k): c for k, c in A.mult[x][y].items()}
        for k in range(n):
            L = DA.left_action[k]
            Rt = DA.right_action[k]
            for j in range(n):
                # a_k (in A_i) times φ_j (in DA_i)
                left = {m_idx(i, r): L[r][j] for r in range(n) if L[r][j]}
                if left:
                    mult[a_idx(i, k)][m_idx(i, j)] = left
                # φ_j (in DA_i) times a_k (in A_{i+1})
                right = {m_idx(i, r): Rt[r][j] for r in range(n) if Rt[r][j]}
                if right:
                    mult[m_idx(i, j)][a_idx(i + 1, k)] = right
    unit = []
    for i in range(p):
        unit += list(A.unit) + [0] * n
    idem = []
    for i in range(p):
        for e in A.idempotents:
            v = [0] * d
            for j, c in enumerate(e):
                v[a_idx(i, j)] = c
            idem.append(v)
    labels = []
    for i in range(p):
        labels += [f"{i}:{x}" for x in A.labels] + [f"{i}:D({x})" for x in A.labels]
    return Algebra(A.field, labels, mult, unit, idem, name=f"rep_{p}({A.name})")


@dataclass
class ShiftReport:
    passed: bool
    periods: int
    dim: int
    bijective: bool
    multiplicative: bool

    def as_dict(self):
        return {
            "passed": self.passed,
            "periods": self.periods,
            "dim": self.dim,
            "bijective": self.bijective,
            "multiplicative": self.multiplicative,
        }


def shift_map(d: TriangularData, periods: int) -> list[list[int]]:
    """Basis map from the truncation of (S, R, DM) to the truncation of (R, S, M).

    Λ' = (S DM; 0 R) in period i is matched with (S_i, DM_i, R_{i+1}) and
    DΛ' with (DS_i, M_{i+1}, DR_{i+1}).
    """
    p = periods
    dR, dM, dS = d.R.dim, d.M.dim, d.S.dim
    n = dR + dM + dS
    # positions inside Λ = [R | M | S] and Λ' = [S | DM | R]
    R0, M0, S0 = 0, dR, dR + dM
    S0p, M0p, R0p = 0, dS, dS + dM

    def a(i, j):
        return (i % p) * 2 * n + j

    def m(i, j):
        return (i % p) * 2 * n + n + j

    perm = {}
    for i in range(p):
        for j in range(dS):
            perm[a(i, S0p + j)] = a(i, S0 + j)
            perm[m(i, S0p + j)] = m(i, S0 + j)
        for j in range(dM):
            perm[a(i, M0p + j)] = m(i, M0 + j)
            perm[m(i, M0p + j)] = a(i + 1, M0 + j)
        for j in range(dR):
            perm[a(i, R0p + j)] = a(i + 1, R0 + j)
            perm[m(i, R0p + j)] = m(i + 1, R0 + j)
    N = 2 * n * p
    P = la.zeros(N, N)
    for src, dst in perm.items():
        P[dst][src] = 1
    return P


def repetitive_shift_isomorphism(d: TriangularData, periods: int = 3) -> ShiftReport:
    """Check that the index shift identifies the truncations of Λ and of its mate (S, R, DM)."""
    mate = TriangularData(d.S, d.R, dual_bimodule(d.M), name="mate")
    A = repetitive_truncation(d, periods)
    B = repetitive_truncation(mate, periods)
    P = shift_map(d, periods)
    bij = la.rank(P, B.dim) == A.dim == B.dim
    mult = is_algebra_isomorphism(B, A, P) if bij else False
    return ShiftReport(bij and mult, periods, A.dim, bij, mult)
