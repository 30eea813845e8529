"""Projective covers, resolutions, Ext, complexes of projectives and tilting checks."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .algebra import (
    Algebra,
    ProjectiveModule,
    RightModule,
    direct_sum,
    find_isomorphism,
    hom_basis,
    kernel_module,
    quotient_module,
    radical_submodule,
)
from .errors import AlgebraMismatch, ApproximationNotInjective, ModuleViolation

DEFAULT_BOUND = 12


# ---------------------------------------------------------------------------
# three-valued statuses


@dataclass(frozen=True)
class Finite:
    value: int

    def as_dict(self):
        return {"status": "Finite", "value": self.value}

    def __str__(self):
        return f"Finite({self.value})"


@dataclass(frozen=True)
class Truncated:
    bound: int

    def as_dict(self):
        return {"status": "Truncated", "bound": self.bound}

    def __str__(self):
        return f"Truncated({self.bound})"


@dataclass(frozen=True)
class Unknown:
    bound: int

    def as_dict(self):
        return {"status": "Unknown", "bound": self.bound}

    def __str__(self):
        return f"Unknown({self.bound})"


@dataclass(frozen=True)
class AtLeast:
    bound: int

    def as_dict(self):
        return {"status": "AtLeast", "bound": self.bound}

    def __str__(self):
        return f"AtLeast({self.bound})"


# ---------------------------------------------------------------------------
# projective covers


def projective_cover(X: RightModule):
    """(P, epi) with P a direct sum of e_i A and epi : P -> X a projective cover.

    Generators are chosen in X e_i, independently modulo X rad A, so the
    multiplicity of e_i A equals the multiplicity of the simple S_i in the top.
    """
    A = X.algebra
    rad = radical_submodule(X)
    E = la.Echelon.from_vectors(rad.basis, X.dim)
    tags, images = [], []
    for i, e in enumerate(A.idempotents):
        for v in X.piece(e).basis:
            if E.add(v):
                tags.append(i)
                images.append(v)
    P = ProjectiveModule(A, tags)
    epi = P.map_to(X, images)
    return P, epi


def top_multiplicities(X: RightModule) -> list[int]:
    P, _ = projective_cover(X)
    counts = [0] * len(X.algebra.idempotents)
    for t in P.tags:
        counts[t] += 1
    return counts


def kernel_is_superfluous(P: ProjectiveModule, epi) -> bool:
    """ker(epi) is contained in P rad A."""
    radP = radical_submodule(P)
    return all(radP.contains(v) for v in la.kernel(epi, P.dim, P.algebra.field.one))


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class Resolution:
    module: RightModule
    terms: list  # P_0, P_1, ... (ProjectiveModule)
    differentials: list  # d_k : P_k -> P_{k-1} for k >= 1 (index k-1)
    augmentation: la.Matrix  # P_0 -> X
    status: object  # Finite(n) | Truncated(N)
    syzygy_dims: list = dc_field(default_factory=list)  # dim of Omega^k, k = 0, 1, ...
    syzygies: list = dc_field(default_factory=list, repr=False)
    period: tuple | None = None  # (j, k): Omega^k isomorphic to Omega^j, both nonzero

    @property
    def finite(self) -> bool:
        return isinstance(self.status, Finite)

    def term(self, k: int) -> ProjectiveModule:
        if 0 <= k < len(self.terms):
            return self.terms[k]
        return ProjectiveModule(self.module.algebra, [])

    def differential(self, k: int) -> la.Matrix:
        """d_k : P_k -> P_{k-1} (zero matrix outside the computed range)."""
        if 1 <= k <= len(self.differentials):
            return self.differentials[k - 1]
        return la.zeros(self.term(k - 1).dim, self.term(k).dim)

    def complex(self) -> "ProjComplex":
        """The deleted resolution as a complex in degrees <= 0."""
        terms = {-k: P for k, P in enumerate(self.terms) if P.dim}
        diffs = {-k: self.differential(k) for k in range(1, len(self.terms)) if self.terms[k].dim}
        return ProjComplex(self.module.algebra, terms, diffs)

    def is_exact(self) -> bool:
        """Rank conditions at every computed degree."""
        aug = self.augmentation
        X = self.module
        if X.dim and la.rank(aug, self.term(0).dim) != X.dim:
            return False
        prev_kernel = self.term(0).dim - (la.rank(aug, self.term(0).dim) if X.dim else 0)
        for k in range(1, len(self.terms)):
            d = self.differential(k)
            r = la.rank(d, self.term(k).dim) if self.term(k - 1).dim else 0
            if r != prev_kernel:
                return False
            prev = self.differential(k - 1) if k > 1 else aug
            if k > 1 or X.dim:
                if not la.is_zero_matrix(la.mat_mul(prev, d, cols=self.term(k).dim)):
                    return False
            prev_kernel = self.term(k).dim - r
        return True


def projective_resolution(X: RightModule, bound: int = DEFAULT_BOUND, detect_period: bool = False) -> Resolution:
    """Iterated projective covers P_0, ..., P_bound.

    Status is Finite(n) when Omega^{n+1} = 0 with n <= bound, else
    Truncated(bound). With ``detect_period`` an isomorphism between two
    nonzero syzygies is searched for; a hit proves infinite projective
    dimension.
    """
    A = X.algebra
    terms, diffs = [], []
    syz = [X]
    dims = [X.dim]
    K, incl = X, None
    aug = []
    period = None
    status = None
    for k in range(bound + 1):
        P, eps = projective_cover(K)
        terms.append(P)
        if k == 0:
            aug = eps
        else:
            diffs.append(la.mat_mul(incl, eps, cols=P.dim))
        Knext, incl = kernel_module(eps, P)
        syz.append(Knext)
        dims.append(Knext.dim)
        if Knext.dim == 0:
            status = Finite(k)
            break
        if detect_period and period is None:
            for j in range(1, k + 1):
                if syz[j].dim == Knext.dim and syz[j].dimension_vector() == Knext.dimension_vector():
                    if find_isomorphism(syz[j], Knext) is not None:
                        period = (j, k + 1)
                        break
        K = Knext
    if status is None:
        status = Truncated(bound)
    if X.dim == 0:
        status = Finite(0)
    return Resolution(X, terms, diffs, aug, status, dims, syz, period)


def per_membership(X: RightModule, bound: int = DEFAULT_BOUND):
    """Finite(pd X) if the resolution stops within the bound, else Unknown(bound)."""
    res = projective_resolution(X, bound)
    if res.finite:
        return res.status
    return Unknown(bound)


def projective_dimension(X: RightModule, bound: int = DEFAULT_BOUND):
    return per_membership(X, bound)


# ---------------------------------------------------------------------------
# Hom out of projectives


def _hom_from_projective_basis(P: ProjectiveModule, Y: RightModule) -> list:
    """Basis of Hom(P, Y) as lists of generator images."""
    out = []
    for a, t in enumerate(P.tags):
        for y in Y.piece(P.algebra.idempotents[t]).basis:
            images = [None] * len(P.tags)
            images[a] = y
            out.append(images)
    return out


def _apply_from_images(P: ProjectiveModule, Y: RightModule, images, x) -> list:
    """phi(x) where phi sends generator a to images[a] (None meaning 0)."""
    out = [0] * Y.dim
    for a, c in enumerate(P.components(x)):
        if images[a] is None or not any(c):
            continue
        out = la.vec_add(out, Y.act_vector(images[a], c))
    return out


@dataclass
class ExtTable:
    dims: list
    exact_beyond: bool

    def vanishes_positive(self) -> bool:
        return all(d == 0 for d in self.dims[1:])

    def first_nonzero_positive(self):
        for n, d in enumerate(self.dims):
            if n > 0 and d:
                return n
        return None

    def as_dict(self):
        return {"dims": list(self.dims), "exact_beyond": self.exact_beyond}


def ext_groups(X: RightModule, Y: RightModule, bound: int = DEFAULT_BOUND, resolution: Resolution | None = None) -> ExtTable:
    """dim Ext^n(X, Y) for n = 0..bound via Hom(P_., Y)."""
    if X.algebra is not Y.algebra:
        raise AlgebraMismatch("Ext between modules over different algebras")
    res = resolution
    if res is None or (not res.finite and len(res.terms) < bound + 2):
        res = projective_resolution(X, bound + 1)
    n_terms = bound + 2
    cdims, ranks = [], []
    for n in range(n_terms):
        P = res.term(n)
        cdims.append(sum(Y.piece(P.algebra.idempotents[t]).dim for t in P.tags))
    # delta^n : Hom(P_n, Y) -> Hom(P_{n+1}, Y), phi -> phi o d_{n+1}
    for n in range(n_terms - 1):
        P, Pn = res.term(n), res.term(n + 1)
        if not P.dim or not Pn.dim or not Y.dim:
            ranks.append(0)
            continue
        d = res.differential(n + 1)
        dg = [la.mat_vec(d, g) for g in Pn.generators]
        E = la.Echelon(len(Pn.generators) * Y.dim)
        for images in _hom_from_projective_basis(P, Y):
            vec = []
            for x in dg:
                vec.extend(_apply_from_images(P, Y, images, x))
            E.add(vec)
        ranks.append(E.rank)
    dims = []
    for n in range(bound + 1):
        prev = ranks[n - 1] if n > 0 else 0
        dims.append(cdims[n] - ranks[n] - prev)
    return ExtTable(dims, res.finite)


# ---------------------------------------------------------------------------
# complexes of projectives


class ProjComplex:
    """Bounded complex of projectives; ``diffs[n]`` is d^n : C^n -> C^{n+1}."""

    def __init__(self, algebra: Algebra, terms: dict, diffs: dict | None = None, check: bool = False):
        self.algebra = algebra
        self.terms = {n: P for n, P in terms.items() if P.dim}
        self.diffs = {}
        for n, d in (diffs or {}).items():
            if n in self.terms and n + 1 in self.terms:
                self.diffs[n] = d
        if check:
            self.validate()

    @classmethod
    def stalk(cls, P: ProjectiveModule, degree: int = 0) -> "ProjComplex":
        return cls(P.algebra, {degree: P}, {})

    def term(self, n: int) -> ProjectiveModule:
        return self.terms.get(n) or ProjectiveModule(self.algebra, [])

    def diff(self, n: int) -> la.Matrix:
        if n in self.diffs:
            return self.diffs[n]
        return la.zeros(self.term(n + 1).dim, self.term(n).dim)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def validate(self):
        for n in self.degrees:
            d0 = self.diff(n)
            d1 = self.diff(n + 1)
            if self.term(n + 2).dim and self.term(n).dim:
                if not la.is_zero_matrix(la.mat_mul(d1, d0, cols=self.term(n).dim)):
                    raise ModuleViolation(f"d o d != 0 at degree {n}")
            if self.term(n + 1).dim:
                from .algebra import is_homomorphism

                if not is_homomorphism(self.term(n), self.term(n + 1), d0):
                    raise ModuleViolation(f"differential at degree {n} is not a module map")

    def shift(self, k: int) -> "ProjComplex":
        """C[k]: (C[k])^n = C^{n+k}, d = (-1)^k d."""
        sign = -1 if k % 2 else 1
        terms = {n - k: P for n, P in self.terms.items()}
        diffs = {n - k: (la.mat_neg(d) if sign < 0 else d) for n, d in self.diffs.items()}
        return ProjComplex(self.algebra, terms, diffs)

    def homology_dims(self) -> dict:
        out = {}
        for n in self.degrees:
            dimC = self.term(n).dim
            r_out = la.rank(self.diff(n), dimC) if self.term(n + 1).dim else 0
            r_in = la.rank(self.diff(n - 1), self.term(n - 1).dim) if self.term(n - 1).dim else 0
            h = dimC - r_out - r_in
            if h:
                out[n] = h
        return out


def direct_sum_complex(C: ProjComplex, D: ProjComplex) -> tuple:
    """C (+) D with summand bookkeeping: returns (complex, {deg: (offset_C_gens, offset_D_gens)})."""
    A = C.algebra
    terms, diffs, marks = {}, {}, {}
    for n in sorted(set(C.terms) | set(D.terms)):
        P, Q = C.term(n), D.term(n)
        terms[n] = ProjectiveModule(A, P.tags + Q.tags)
        marks[n] = (len(P.tags), len(Q.tags))
    for n in terms:
        if n + 1 in terms:
            a, b = C.term(n), D.term(n)
            a1, b1 = C.term(n + 1), D.term(n + 1)
            diffs[n] = la.block_diag([C.diff(n), D.diff(n)], [(a1.dim, a.dim), (b1.dim, b.dim)])
    return ProjComplex(A, terms, diffs), marks


class HomComplex:
    """Total Hom complex Hom^n(P, Q) = prod_p Hom(P^p, Q^{p+n}).

    An element of degree n is stored by the images of the generators of
    every P^p (concatenated, in ambient coordinates of Q^{p+n}).  The
    differential is (delta phi)^p = d_Q phi^p - (-1)^n phi^{p+1} d_P.
    """

    def __init__(self, P: ProjComplex, Q: ProjComplex):
        if P.algebra is not Q.algebra:
            raise AlgebraMismatch("Hom complex between complexes over different algebras")
        self.P, self.Q = P, Q
        self._layout = {}
        self._dcomps = {}
        for p in P.degrees:
            X = P.term(p)
            if P.term(p + 1).dim:
                d = P.diff(p)
                self._dcomps[p] = [P.term(p + 1).components(la.mat_vec(d, g)) for g in X.generators]

    def layout(self, n: int):
        """List of (p, offset) blocks and total ambient length for degree n."""
        if n not in self._layout:
            blocks, off = [], 0
            for p in self.P.degrees:
                Y = self.Q.term(p + n)
                if Y.dim:
                    blocks.append((p, off))
                    off += len(self.P.term(p).generators) * Y.dim
            self._layout[n] = (blocks, off)
        return self._layout[n]

    def ambient_dim(self, n: int) -> int:
        return self.layout(n)[1]

    def basis(self, n: int) -> list:
        """Standard basis: one generator mapped into a basis vector of Q^{p+n} e_t."""
        blocks, total = self.layout(n)
        out = []
        for p, off in blocks:
            X, Y = self.P.term(p), self.Q.term(p + n)
            for a, t in enumerate(X.tags):
                for y in Y.piece(X.algebra.idempotents[t]).basis:
                    v = [0] * total
                    base = off + a * Y.dim
                    for i, c in enumerate(y):
                        v[base + i] = c
                    out.append(v)
        return out

    def dim(self, n: int) -> int:
        blocks, _ = self.layout(n)
        s = 0
        for p, _ in blocks:
            X, Y = self.P.term(p), self.Q.term(p + n)
            s += sum(Y.piece(X.algebra.idempotents[t]).dim for t in X.tags)
        return s

    def images(self, n: int, vec) -> dict:
        """{p: [image of generator a]} for an element of degree n."""
        blocks, _ = self.layout(n)
        out = {}
        for p, off in blocks:
            X, Y = self.P.term(p), self.Q.term(p + n)
            out[p] = [vec[off + a * Y.dim: off + (a + 1) * Y.dim] for a in range(len(X.tags))]
        return out

    def to_maps(self, n: int, vec) -> dict:
        """{p: matrix of phi^p : P^p -> Q^{p+n}}."""
        return {p: self.P.term(p).map_to(self.Q.term(p + n), imgs) for p, imgs in self.images(n, vec).items()}

    def from_maps(self, n: int, maps: dict) -> list:
        blocks, total = self.layout(n)
        v = [0] * total
        for p, off in blocks:
            if p not in maps:
                continue
            X = self.P.term(p)
            ev = X.evaluate(maps[p])
            for i, c in enumerate(ev):
                v[off + i] = c
        return v

    def delta(self, n: int, vec) -> list:
        blocks, total = self.layout(n + 1)
        imgs = self.images(n, vec)
        sign = -1 if n % 2 else 1
        out = [0] * total
        for p, off in blocks:
            X = self.P.term(p)
            Y1 = self.Q.term(p + n + 1)
            parts = []
            # d_Q o phi^p
            if p in imgs:
                dQ = self.Q.diff(p + n)
                parts.append([la.mat_vec(dQ, y) for y in imgs[p]])
            # -(-1)^n phi^{p+1} o d_P
            if p + 1 in imgs and p in self._dcomps:
                Xn, Yn = self.P.term(p + 1), self.Q.term(p + 1 + n)
                col = []
                for comps in self._dcomps[p]:
                    acc = [0] * Yn.dim
                    for a, c in enumerate(comps):
                        if any(c) and any(imgs[p + 1][a]):
                            acc = la.vec_add(acc, Yn.act_vector(imgs[p + 1][a], c))
                    col.append([-sign * x for x in acc])
                parts.append(col)
            for part in parts:
                for a, y in enumerate(part):
                    base = off + a * Y1.dim
                    for i, c in enumerate(y):
                        if c:
                            out[base + i] += c
        return out

    def cycles(self, n: int) -> la.Subspace:
        B = self.basis(n)
        total = self.ambient_dim(n)
        if not B:
            return la.Subspace([], total)
        cols = [self.delta(n, b) for b in B]
        m = self.ambient_dim(n + 1)
        if m == 0:
            return la.Subspace(B, total)
        coeffs = la.kernel(la.from_columns(cols, m), len(B), self.P.algebra.field.one)
        return la.Subspace([la.lin_comb(c, [[b] for b in B], 1, total)[0] for c in coeffs], total)

    def boundaries(self, n: int) -> la.Subspace:
        total = self.ambient_dim(n)
        return la.Subspace([self.delta(n - 1, b) for b in self.basis(n - 1)], total)

    def rank_delta(self, n: int) -> int:
        if self.ambient_dim(n + 1) == 0:
            return 0
        return la.Echelon.from_vectors([self.delta(n, b) for b in self.basis(n)], self.ambient_dim(n + 1)).rank

    def cohomology_dim(self, n: int) -> int:
        return self.dim(n) - self.rank_delta(n) - self.rank_delta(n - 1)

    def compose(self, other: "HomComplex", n: int, vec_self, m: int, vec_other) -> dict:
        """(self element of degree n) o (other element of degree m) as maps."""
        a = self.to_maps(n, vec_self)
        b = other.to_maps(m, vec_other)
        out = {}
        for p, bm in b.items():
            if p + m in a:
                out[p] = la.mat_mul(a[p + m], bm, cols=other.P.term(p).dim)
        return out


def hom_complex_cohomology(P: ProjComplex, Q: ProjComplex, lo: int, hi: int) -> dict:
    """{n: dim Hom_K(P, Q[n])} for lo <= n <= hi."""
    H = HomComplex(P, Q)
    return {n: H.cohomology_dim(n) for n in range(lo, hi + 1)}


# ---------------------------------------------------------------------------
# tilting modules


def is_split_mono_into_sum(C: RightModule, T: RightModule, maps) -> bool:
    """Whether the evaluation C -> T^h given by ``maps`` splits (so C lies in add T)."""
    if C.dim == 0:
        return True
    back = hom_basis(T, C)
    cols = []
    for phi in maps:
        for psi in back:
            prod = la.mat_mul(psi, phi, cols=C.dim)
            cols.append([x for row in prod for x in row])
    if not cols:
        return False
    target = [x for row in la.identity(C.dim, C.algebra.field) for x in row]
    return la.solve_vector(la.from_columns(cols, C.dim * C.dim), target, len(cols)) is not None


def in_add(C: RightModule, T: RightModule) -> bool:
    return is_split_mono_into_sum(C, T, hom_basis(C, T))


@dataclass
class TiltingCertificate:
    pd: object
    rigid: bool | None
    ext: ExtTable | None
    coresolution: list  # one entry per term: T^h, and finally a summand of T^h
    passed: bool
    reason: str = ""

    @property
    def length(self) -> int:
        return max(len(self.coresolution) - 1, 0)

    def as_dict(self):
        return {
            "pd": self.pd.as_dict() if hasattr(self.pd, "as_dict") else self.pd,
            "rigid": self.rigid,
            "ext": self.ext.as_dict() if self.ext else None,
            "coresolution": [dict(t) for t in self.coresolution],
            "passed": self.passed,
            "reason": self.reason,
        }


def is_tilting_module(T: RightModule, bound: int = DEFAULT_BOUND, raise_on_noninjective: bool = True) -> TiltingCertificate:
    """Finite pd, rigidity and an add-T coresolution of the regular module.

    The coresolution uses the full evaluation map C -> T^{dim Hom(C, T)} at
    every stage and stops once the current cokernel already lies in add T.
    """
    from .algebra import regular_module

    res = projective_resolution(T, bound)
    pd = res.status if res.finite else Unknown(bound)
    ext = ext_groups(T, T, bound)
    rigid = ext.vanishes_positive() if ext.exact_beyond else (False if not ext.vanishes_positive() else None)
    if not res.finite:
        return TiltingCertificate(pd, rigid, ext, [], False, "projective dimension not finite within bound")
    if not rigid:
        n = ext.first_nonzero_positive()
        return TiltingCertificate(pd, rigid, ext, [], False, f"Ext^{n}(T, T) != 0")
    C = regular_module(T.algebra)
    terms = []
    limit = pd.value + 1
    for stage in range(limit + 1):
        maps = hom_basis(C, T)
        if is_split_mono_into_sum(C, T, maps):
            terms.append({"stage": stage, "kind": "summand of T^h", "dim": C.dim, "h": len(maps)})
            return TiltingCertificate(pd, True, ext, terms, True, "")
        if stage == limit:
            break
        ev = la.vstack(maps) if maps else []
        if not maps or la.rank(ev, C.dim) != C.dim:
            if raise_on_noninjective:
                raise ApproximationNotInjective(stage)
            return TiltingCertificate(pd, True, ext, terms, False, f"approximation not injective at stage {stage}")
        terms.append({"stage": stage, "kind": "T^h", "dim": T.dim * len(maps), "h": len(maps)})
        big = direct_sum([T] * len(maps))
        C, _, _ = quotient_module(big, [la.column(ev, j) for j in range(C.dim)], closed=True)
    return TiltingCertificate(pd, True, ext, terms, False, f"coresolution did not close within {limit} steps")


# ---------------------------------------------------------------------------
# global dimension


@dataclass
class GldimProbe:
    value: object  # Finite | AtLeast
    per_simple: list

    def as_dict(self):
        return {"value": self.value.as_dict(), "per_simple": [s.as_dict() for s in self.per_simple]}


def global_dimension(A: Algebra, bound: int = DEFAULT_BOUND) -> GldimProbe:
    from .algebra import simple_module

    per = []
    for i in range(len(A.idempotents)):
        res = projective_resolution(simple_module(A, i), bound)
        per.append(res.status)
    if all(isinstance(s, Finite) for s in per):
        return GldimProbe(Finite(max(s.value for s in per)), per)
    return GldimProbe(AtLeast(bound), per)


# ---------------------------------------------------------------------------
# comparison maps


def _solve_in_piece(D, P: ProjectiveModule, t: int, v, cols: int):
    """y in P e_t with D y = v, or None."""
    piece = P.piece(P.algebra.idempotents[t])
    if piece.dim == 0:
        return [0] * P.dim if not any(v) else None
    B = piece.basis_matrix()
    DB = la.mat_mul(D, B, cols=piece.dim)
    c = la.solve_vector(DB, v, piece.dim)
    if c is None:
        return None
    return la.mat_vec(B, c)


def lift_chain_map(f: la.Matrix, res_X: Resolution, res_Y: Resolution, length: int | None = None) -> list:
    """Comparison maps L_k : P_k(X) -> P_k(Y) over f : X -> Y.

    eps_Y L_0 = f eps_X and d_k^Y L_k = L_{k-1} d_k^X.
    """
    if length is None:
        length = len(res_X.terms)
    maps = []
    for k in range(length):
        PX, PY = res_X.term(k), res_Y.term(k)
        if PX.dim == 0:
            maps.append(la.zeros(PY.dim, 0))
            continue
        images = []
        for a, g in enumerate(PX.generators):
            if k == 0:
                v = la.mat_vec(f, la.mat_vec(res_X.augmentation, g))
                D = res_Y.augmentation
            else:
                v = la.mat_vec(maps[k - 1], la.mat_vec(res_X.differential(k), g))
                D = res_Y.differential(k)
            if PY.dim == 0:
                if any(v):
                    raise ModuleViolation(f"cannot lift at degree {k}: target resolution ended")
                images.append([])
                continue
            y = _solve_in_piece(D, PY, PX.tags[a], v, PY.dim)
            if y is None:
                raise ModuleViolation(f"cannot lift at degree {k}, generator {a}")
            images.append(y)
        maps.append(PX.map_to(PY, images) if PY.dim else la.zeros(0, PX.dim))
    return maps
