"""Triangular matrix algebras, comma-category triples and the gluing functors.

A Λ-module is stored as a triple (X, Y, f) with X a right R-module, Y a
right S-module and f : X (x)_k M -> Y given on the basis x_i (x) m_j
(column ``i * dim M + j``).  It is convenient to slice f into the
matrices ``F_j = f(- (x) m_j) : X -> Y``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .algebra import (
    Algebra,
    Bimodule,
    RightModule,
    Subspace,
    cokernel_module,
    hom_basis,
    submodule,
    tensor_over,
    zero_module,
)
from .errors import AlgebraMismatch, CategoryMismatch, DimensionMismatch, ModuleViolation


@dataclass
class TriangularData:
    R: Algebra
    S: Algebra
    M: Bimodule
    name: str = ""

    def __post_init__(self):
        if self.M.left_algebra is not self.R or self.M.right_algebra is not self.S:
            raise AlgebraMismatch("bimodule algebras do not match (R, S)")
        if self.R.field != self.S.field:
            raise AlgebraMismatch("R and S live over different fields")

    @property
    def field(self):
        return self.R.field

    @property
    def M_S(self) -> RightModule:
        return self.M.right_module()


class TriangularAlgebra:
    """Λ = (R M; 0 S) with basis ordered as [R | M | S]."""

    def __init__(self, data: TriangularData, check: bool = True):
        self.data = data
        R, S, M = data.R, data.S, data.M
        dR, dM, dS = R.dim, M.dim, S.dim
        self.r_range = range(0, dR)
        self.m_range = range(dR, dR + dM)
        self.s_range = range(dR + dM, dR + dM + dS)
        d = dR + dM + dS
        mult = [[{} for _ in range(d)] for _ in range(d)]
        for i in range(dR):
            for j in range(dR):
                mult[i][j] = dict(R.mult[i][j])
            for j in range(dM):
                col = la.column(M.left_action[i], j)
                mult[i][dR + j] = {dR + k: c for k, c in enumerate(col) if c}
        for i in range(dM):
            for j in range(dS):
                col = la.column(M.right_action[j], i)
                mult[dR + i][dR + dM + j] = {dR + k: c for k, c in enumerate(col) if c}
        for i in range(dS):
            for j in range(dS):
                mult[dR + dM + i][dR + dM + j] = {dR + dM + k: c for k, c in S.mult[i][j].items()}
        unit = list(R.unit) + [0] * dM + list(S.unit)
        idem = [self.embed_R(e) for e in R.idempotents] + [self.embed_S(f) for f in S.idempotents]
        labels = [f"r:{x}" for x in R.labels] + [f"m:{j}" for j in range(dM)] + [f"s:{x}" for x in S.labels]
        self.algebra = Algebra(R.field, labels, mult, unit, idem, name=data.name or f"Lambda({R.name},{S.name})", check=check, check_primitive=False)
        self.e_R = self.embed_R(R.unit)
        self.e_S = self.embed_S(S.unit)
        rad = [self.embed_R(v) for v in R.radical().basis]
        rad += [self.embed_M(la.column(la.identity(dM), j)) for j in range(dM)]
        rad += [self.embed_S(v) for v in S.radical().basis]
        J = Subspace(rad, d)
        if check:
            A = self.algebra
            if J.codim != len(idem) or not A.is_two_sided_ideal(J) or not A.is_nilpotent_space(J):
                raise ModuleViolation("block radical of the triangular algebra is not a nilpotent ideal")
        self.algebra.radical_hint = J

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def embed_R(self, r) -> list:
        return list(r) + [0] * (len(self.m_range) + len(self.s_range))

    def embed_M(self, m) -> list:
        return [0] * len(self.r_range) + list(m) + [0] * len(self.s_range)

    def embed_S(self, s) -> list:
        return [0] * (len(self.r_range) + len(self.m_range)) + list(s)

    def split(self, v):
        """(r, m, s) components of a Λ-element."""
        return ([v[i] for i in self.r_range], [v[i] for i in self.m_range], [v[i] for i in self.s_range])


def build_triangular(d: TriangularData, check: bool = True) -> TriangularAlgebra:
    return TriangularAlgebra(d, check=check)


# ---------------------------------------------------------------------------
# triples


def _slices(f, dX: int, dM: int) -> list:
    """F_j = f(- (x) m_j) as dY x dX matrices."""
    return [[[row[i * dM + j] for i in range(dX)] for row in f] for j in range(dM)]


def _unslice(Fs, dX: int, dM: int, dY: int) -> la.Matrix:
    f = [[0] * (dX * dM) for _ in range(dY)]
    for j, Fj in enumerate(Fs):
        for a in range(dY):
            for i in range(dX):
                f[a][i * dM + j] = Fj[a][i]
    return f


class TripleModule:
    def __init__(self, data: TriangularData, X: RightModule, Y: RightModule, f, check: bool = True):
        if X.algebra is not data.R or Y.algebra is not data.S:
            raise CategoryMismatch("triple components live over the wrong algebras")
        self.data = data
        self.X = X
        self.Y = Y
        dM = data.M.dim
        if len(f) != Y.dim or any(len(row) != X.dim * dM for row in f):
            if not (Y.dim == 0 or X.dim * dM == 0):
                raise DimensionMismatch("f must be dim Y x (dim X * dim M)")
            f = [[0] * (X.dim * dM) for _ in range(Y.dim)]
        self.f = f
        self.F = _slices(f, X.dim, dM)
        if check:
            self.validate()

    def validate(self):
        d = self.data
        dX, dY, dM = self.X.dim, self.Y.dim, d.M.dim
        for g in range(d.R.dim):
            P = self.X.action[g]
            L = d.M.left_action[g]
            for j in range(dM):
                lhs = la.mat_mul(self.F[j], P, cols=dX)
                rhs = la.lin_comb([L[b][j] for b in range(dM)], self.F, dY, dX)
                if not la.mat_equal(lhs, rhs):
                    raise ModuleViolation(f"f is not balanced at R-basis {d.R.labels[g]}, m_{j}")
        for g in range(d.S.dim):
            Q = self.Y.action[g]
            Rs = d.M.right_action[g]
            for j in range(dM):
                lhs = la.mat_mul(Q, self.F[j], cols=dX)
                rhs = la.lin_comb([Rs[b][j] for b in range(dM)], self.F, dY, dX)
                if not la.mat_equal(lhs, rhs):
                    raise ModuleViolation(f"f is not S-linear at S-basis {d.S.labels[g]}, m_{j}")

    @property
    def dims(self) -> tuple[int, int]:
        return self.X.dim, self.Y.dim

    def __repr__(self):
        return f"Triple(dim X={self.X.dim}, dim Y={self.Y.dim})"


@dataclass
class TripleHom:
    source: TripleModule
    target: TripleModule
    alpha: la.Matrix
    beta: la.Matrix

    def commutes(self) -> bool:
        s, t = self.source, self.target
        dX = s.X.dim
        if dX == 0 or s.Y.dim + t.Y.dim == 0:
            return True
        for Fj, Gj in zip(s.F, t.F):
            if not la.mat_equal(la.mat_mul(self.beta, Fj, cols=dX), la.mat_mul(Gj, self.alpha, cols=dX)):
                return False
        return True

    def matrix(self) -> la.Matrix:
        """The Λ-module map alpha (+) beta."""
        s, t = self.source, self.target
        return la.block_diag([self.alpha, self.beta], [(t.X.dim, s.X.dim), (t.Y.dim, s.Y.dim)])


def triple_to_lambda(t: TripleModule, T: TriangularAlgebra) -> RightModule:
    """The Λ-module X (+) Y: (x, y)(r, m, s) = (x r, f(x (x) m) + y s)."""
    d = t.data
    dX, dY = t.X.dim, t.Y.dim
    n = dX + dY
    action = []
    for g in range(d.R.dim):
        action.append(la.block_diag([t.X.action[g], la.zeros(dY, dY)], [(dX, dX), (dY, dY)]))
    for j in range(d.M.dim):
        m = la.zeros(n, n)
        for a in range(dY):
            for i in range(dX):
                m[dX + a][i] = t.F[j][a][i]
        action.append(m)
    for g in range(d.S.dim):
        action.append(la.block_diag([la.zeros(dX, dX), t.Y.action[g]], [(dX, dX), (dY, dY)]))
    return RightModule(T.algebra, action, n, check=False)


@dataclass
class TripleView:
    triple: TripleModule
    to_triple: la.Matrix  # Z -> X (+) Y
    from_triple: la.Matrix  # X (+) Y -> Z


def lambda_to_triple(Z: RightModule, T: TriangularAlgebra) -> TripleView:
    """(Z e_R, Z e_S, f) with bases the RREF bases of the two pieces."""
    d = T.data
    if Z.algebra is not T.algebra:
        raise AlgebraMismatch("module is not over this triangular algebra")
    dZ = Z.dim
    Xs = Z.piece(T.e_R)
    Ys = Z.piece(T.e_S)
    BX, BY = Xs.basis_matrix(), Ys.basis_matrix()

    def restrict(space, B, v):
        if space.dim == 0:
            return []
        return space.coordinate_matrix(la.mat_mul(Z.act(v), B, cols=space.dim))

    X = RightModule(d.R, [restrict(Xs, BX, T.embed_R(d.R.basis_vector(g))) for g in range(d.R.dim)], Xs.dim, check=False)
    Y = RightModule(d.S, [restrict(Ys, BY, T.embed_S(d.S.basis_vector(g))) for g in range(d.S.dim)], Ys.dim, check=False)
    Fs = []
    for j in range(d.M.dim):
        img = la.mat_mul(Z.act(T.embed_M(la.column(la.identity(d.M.dim), j))), BX, cols=Xs.dim)
        Fs.append(Ys.coordinate_matrix(img) if Ys.dim else [])
    f = _unslice(Fs, Xs.dim, d.M.dim, Ys.dim)
    back = la.hstack([BX, BY], dZ) if dZ else []
    to = []
    if dZ:
        PX = la.mat_mul(_coordinate_projector(Xs, dZ), Z.act(T.e_R), cols=dZ) if Xs.dim else []
        PY = la.mat_mul(_coordinate_projector(Ys, dZ), Z.act(T.e_S), cols=dZ) if Ys.dim else []
        to = la.vstack([PX, PY])
    return TripleView(TripleModule(d, X, Y, f, check=False), to, back)


def _coordinate_projector(space: Subspace, n: int) -> la.Matrix:
    """dim x n matrix reading pivot entries (valid on vectors inside ``space``)."""
    out = []
    for p in space.pivots:
        out.append([1 if j == p else 0 for j in range(n)])
    return out


# ---------------------------------------------------------------------------
# functors


def zero_triple(d: TriangularData) -> TripleModule:
    return TripleModule(d, zero_module(d.R), zero_module(d.S), [], check=False)


def i_inv(t: TripleModule) -> RightModule:
    return t.X


def j_inv(t: TripleModule) -> RightModule:
    return t.Y


def i_star(d: TriangularData, A: RightModule) -> TripleModule:
    _check_over(A, d.R)
    return TripleModule(d, A, zero_module(d.S), [], check=False)


def j_shriek(d: TriangularData, B: RightModule) -> TripleModule:
    _check_over(B, d.S)
    return TripleModule(d, zero_module(d.R), B, [[] for _ in range(B.dim)], check=False)


def i_shriek(d: TriangularData, A: RightModule) -> TripleModule:
    """(A, A (x)_R M, canonical map)."""
    _check_over(A, d.R)
    tp = tensor_over(A, d.M)
    f = tp.projection if tp.module.dim else []
    return TripleModule(d, A, tp.module, f, check=False)


def j_natural(t: TripleModule) -> RightModule:
    """coker f as a right S-module."""
    dX, dM = t.X.dim, t.data.M.dim
    Q, _, _ = cokernel_module(t.f, t.Y, dX * dM)
    return Q


def i_upper_shriek(t: TripleModule) -> RightModule:
    """ker(f# : X -> Hom_S(M, Y)) = {x : f(x (x) m) = 0 for all m}."""
    dX = t.X.dim
    stacked = la.vstack(t.F) if t.F and t.Y.dim else []
    vecs = la.kernel(stacked, dX, t.X.algebra.field.one) if stacked else [la.column(la.identity(dX), j) for j in range(dX)]
    K, _ = submodule(t.X, vecs, closed=True)
    return K


@dataclass
class HomIntoModule:
    """Hom_S(M, B) as a right R-module, with the flattened basis maps."""

    module: RightModule
    maps: list  # dim B x dim M matrices


def hom_from_bimodule(d: TriangularData, B: RightModule) -> HomIntoModule:
    """Hom_S(M, B) with R acting by (h r)(m) = h(r m)."""
    _check_over(B, d.S)
    MS = d.M.right_module()
    maps = hom_basis(MS, B)
    dM, dB = d.M.dim, B.dim
    flat = [[x for row in h for x in row] for h in maps]
    space = Subspace(flat, dB * dM)
    basis = [[v[a * dM:(a + 1) * dM] for a in range(dB)] for v in space.basis]
    action = []
    for g in range(d.R.dim):
        L = d.M.left_action[g]
        cols = []
        for h in basis:
            hr = la.mat_mul(h, L, cols=dM)
            cols.append(space.coordinates([x for row in hr for x in row]))
        action.append(la.from_columns(cols, len(basis)))
    return HomIntoModule(RightModule(d.R, action, len(basis), check=False), basis)


def j_star(d: TriangularData, B: RightModule) -> TripleModule:
    """(Hom_S(M, B), B, evaluation)."""
    H = hom_from_bimodule(d, B)
    dM = d.M.dim
    Fs = [[[h[a][j] for h in H.maps] for a in range(B.dim)] for j in range(dM)]
    f = _unslice(Fs, H.module.dim, dM, B.dim)
    return TripleModule(d, H.module, B, f, check=False)


def _check_over(X: RightModule, A: Algebra):
    if X.algebra is not A:
        raise CategoryMismatch("module is over the wrong algebra for this functor")


FUNCTORS = ("i_inv", "i_star", "j_inv", "j_shriek", "i_shriek", "j_natural", "i_upper_shriek", "j_star")


def functor_apply(name: str, d: TriangularData, arg):
    if name not in FUNCTORS:
        raise ValueError(f"unknown functor {name!r}")
    if name in ("i_inv", "j_inv", "j_natural", "i_upper_shriek"):
        if not isinstance(arg, TripleModule):
            raise CategoryMismatch(f"{name} expects a triple")
        return {"i_inv": i_inv, "j_inv": j_inv, "j_natural": j_natural, "i_upper_shriek": i_upper_shriek}[name](arg)
    if isinstance(arg, TripleModule):
        raise CategoryMismatch(f"{name} expects a module")
    return {"i_star": i_star, "j_shriek": j_shriek, "i_shriek": i_shriek, "j_star": j_star}[name](d, arg)


# functoriality on morphisms


def i_star_map(alpha) -> tuple:
    return alpha, []


def j_shriek_map(beta) -> tuple:
    return [], beta


def i_shriek_map(d: TriangularData, A: RightModule, A2: RightModule, alpha) -> tuple:
    """(alpha, F alpha) between i_! A and i_! A2."""
    from .algebra import tensor_map

    t1, t2 = tensor_over(A, d.M), tensor_over(A2, d.M)
    return alpha, tensor_map(alpha, t1, t2, d.M.dim, A.dim)


def j_natural_map(s: TripleModule, t: TripleModule, beta) -> la.Matrix:
    """The map coker f -> coker f' induced by beta."""
    dM = s.data.M.dim
    _, Qs, Ss = cokernel_module(s.f, s.Y, s.X.dim * dM)
    _, Qt, _ = cokernel_module(t.f, t.Y, t.X.dim * dM)
    return la.mat_mul(la.mat_mul(Qt, beta, cols=s.Y.dim), Ss, cols=len(Qs))


# ---------------------------------------------------------------------------
# Hom between triples


def triple_hom_basis(s: TripleModule, t: TripleModule) -> list[TripleHom]:
    """Pairs (alpha, beta) of module maps making the comma square commute."""
    A = hom_basis(s.X, t.X)
    B = hom_basis(s.Y, t.Y)
    dX, dY2 = s.X.dim, t.Y.dim
    n = len(A) + len(B)
    if n == 0:
        return []
    rows = []
    # F'_j alpha - beta F_j = 0, entrywise
    contribs = []
    for a in A:
        contribs.append([la.mat_mul(Gj, a, cols=dX) for Gj in t.F])
    for b in B:
        contribs.append([la.mat_neg(la.mat_mul(b, Fj, cols=dX)) for Fj in s.F])
    for j in range(s.data.M.dim):
        for p in range(dY2):
            for q in range(dX):
                row = [c[j][p][q] for c in contribs]
                if any(row):
                    rows.append(row)
    F = s.data.field
    sol = la.kernel(rows, n, F.one) if rows else [la.column(la.identity(n, F), k) for k in range(n)]
    out = []
    for v in sol:
        alpha = la.lin_comb(v[:len(A)], A, t.X.dim, s.X.dim)
        beta = la.lin_comb(v[len(A):], B, t.Y.dim, s.Y.dim)
        out.append(TripleHom(s, t, alpha, beta))
    return out


def lambda_hom_dim(s: TripleModule, t: TripleModule, T: TriangularAlgebra) -> int:
    """dim Hom_Λ computed on the flat Λ-modules (independent of the triple route)."""
    return len(hom_basis(triple_to_lambda(s, T), triple_to_lambda(t, T)))


# ---------------------------------------------------------------------------
# gluing verification


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class GluingReport:
    checks: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))


def _is_hom(X: RightModule, Y: RightModule, phi) -> bool:
    from .algebra import is_homomorphism

    if X.dim == 0 or Y.dim == 0:
        return True
    return is_homomorphism(X, Y, phi)


def verify_gluing(d: TriangularData, samples, A_samples=None, B_samples=None, T: TriangularAlgebra | None = None) -> GluingReport:
    """Check the gluing axioms and the l_! / j-natural relations on samples.

    Hom spaces between triples are computed as Hom over Λ of the flat
    modules, so the comma-category description is tested, not assumed.
    """
    from .algebra import regular_module

    T = T or build_triangular(d)
    A_samples = A_samples if A_samples is not None else [regular_module(d.R)]
    B_samples = B_samples if B_samples is not None else [regular_module(d.S)]
    rep = GluingReport()
    F = d.field

    def hd(s, t):
        return lambda_hom_dim(s, t, T)

    for n, C in enumerate(samples):
        tag = f"sample {n}"
        Z = triple_to_lambda(C, T)
        dX, dY = C.X.dim, C.Y.dim
        # 0 -> j! j^-1 C -> C -> i* i^-1 C -> 0
        jj = triple_to_lambda(j_shriek(d, C.Y), T)
        ii = triple_to_lambda(i_star(d, C.X), T)
        inc = la.vstack([la.zeros(dX, dY, F), la.identity(dY, F)]) if dX + dY else []
        proj = la.hstack([la.identity(dX, F), la.zeros(dX, dY, F)], dX) if dX else []
        homs = _is_hom(jj, Z, inc) and _is_hom(Z, ii, proj)
        comp_zero = la.is_zero_matrix(la.mat_mul(proj, inc, cols=dY)) if dX and dY else True
        r_inc = la.rank(inc, dY) if dX + dY else 0
        r_proj = la.rank(proj, dX + dY) if dX else 0
        ker_proj = dX + dY - r_proj
        exact = homs and comp_zero and r_inc == dY and r_proj == dX and ker_proj == r_inc
        rep.add(f"{tag}: jiSES exact", exact, f"rank inc={r_inc}, rank proj={r_proj}")
        for a, A in enumerate(A_samples):
            iA = i_star(d, A)
            rep.add(f"{tag}: Hom(i^-1 C, A{a}) = Hom(C, i_* A{a})", hom_dim_mod(C.X, A) == hd(C, iA))
            rep.add(f"{tag}: Hom(i_! A{a}, C) = Hom(A{a}, i^-1 C)", hd(i_shriek(d, A), C) == hom_dim_mod(A, C.X))
            rep.add(f"{tag}: Hom(i_* A{a}, C) = Hom(A{a}, i^! C)", hd(iA, C) == hom_dim_mod(A, i_upper_shriek(C)))
        for b, B in enumerate(B_samples):
            jB = j_shriek(d, B)
            rep.add(f"{tag}: Hom(B{b}, j^-1 C) = Hom(j_! B{b}, C)", hom_dim_mod(B, C.Y) == hd(jB, C))
            rep.add(f"{tag}: Hom(j^nat C, B{b}) = Hom(C, j_! B{b})", hom_dim_mod(j_natural(C), B) == hd(C, jB))
            rep.add(f"{tag}: Hom(j^-1 C, B{b}) = Hom(C, j_* B{b})", hom_dim_mod(C.Y, B) == hd(C, j_star(d, B)))
    for a, A in enumerate(A_samples):
        for b, B in enumerate(B_samples):
            iA, jB = i_star(d, A), j_shriek(d, B)
            rep.add(f"Hom(i_* A{a}, j_! B{b}) = 0", hd(iA, jB) == 0)
            rep.add(f"Hom(j_! B{b}, i_* A{a}) = 0", hd(jB, iA) == 0)
    for a, A in enumerate(A_samples):
        iA = i_shriek(d, A)
        rep.add(f"i^-1 i_! A{a} = A{a}", iA.X.same_as(A))
        FA = tensor_over(A, d.M).module
        rep.add(f"j^-1 i_! A{a} = A{a} (x) M", iA.Y.same_as(FA))
        rep.add(f"j^nat i_! A{a} = 0", j_natural(iA).dim == 0)
        rep.add(f"j^nat i_* A{a} = 0", j_natural(i_star(d, A)).dim == 0)
        rep.add(f"i^-1 i_* A{a} = A{a}", i_inv(i_star(d, A)).same_as(A))
    for b, B in enumerate(B_samples):
        jB = j_shriek(d, B)
        rep.add(f"j^nat j_! B{b} = B{b}", j_natural(jB).same_as(B))
        rep.add(f"j^-1 j_! B{b} = B{b}", j_inv(jB).same_as(B))
    return rep


def hom_dim_mod(X: RightModule, Y: RightModule) -> int:
    return len(hom_basis(X, Y))
