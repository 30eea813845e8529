"""Finite-dimensional algebras, right modules and bimodules over an exact field.

Conventions used throughout the package:

* An algebra element is a coordinate vector in the algebra's basis.
* Modules are right modules. The action of an element ``a`` on a module
  ``X`` is a matrix ``act(a)`` acting on column vectors, so that
  ``x . a = act(a) @ x`` and therefore ``act(a b) = act(b) @ act(a)``.
* Left actions (of bimodules) compose the other way round:
  ``left(r r') = left(r) @ left(r')``.
* A module homomorphism ``X -> Y`` is a ``dim Y x dim X`` matrix.
"""
from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

from . import linalg as la
from .errors import (
    AlgebraMismatch,
    AssociativityViolation,
    DimensionMismatch,
    IdempotentViolation,
    InvalidRelation,
    ModuleViolation,
    RadicalUnavailable,
    UnitViolation,
    UnsupportedField,
    ValidationError,
)
from .linalg import Field, Subspace


def _add_into(acc: dict, c, vec: dict):
    for k, x in vec.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


class Algebra:
    """Associative unital algebra given by structure constants.

    ``mult[i][j]`` is a sparse dict ``{k: c}`` with ``b_i b_j = sum c b_k``.
    ``idempotents`` is the distinguished complete list of primitive
    orthogonal idempotents (coordinate vectors).
    """

    def __init__(
        self,
        field: Field,
        labels: Sequence[str],
        mult,
        unit,
        idempotents,
        quiver: "QuiverPresentation | None" = None,
        name: str = "",
        check: bool = True,
        check_primitive: bool = True,
    ):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.name = name
        self.quiver = quiver
        self.basic = True
        self.mult = [[{k: field(c) for k, c in mult[i][j].items() if c} for j in range(self.dim)] for i in range(self.dim)]
        self.unit = [field(x) for x in unit]
        self.idempotents = [[field(x) for x in e] for e in idempotents]
        if check:
            self._validate(check_primitive)

    # -- structure -----------------------------------------------------------

    def _validate(self, check_primitive: bool):
        d = self.dim
        if len(self.mult) != d or any(len(row) != d for row in self.mult):
            raise DimensionMismatch("multiplication table is not dim x dim")
        for row in self.mult:
            for entry in row:
                if any(not (0 <= k < d) for k in entry):
                    raise DimensionMismatch("structure constant index out of range")
        if len(self.unit) != d or any(len(e) != d for e in self.idempotents):
            raise DimensionMismatch("unit / idempotent vectors have the wrong length")
        m = self.mult
        for i in range(d):
            for j in range(d):
                for l in range(d):
                    left: dict = {}
                    for k, c in m[i][j].items():
                        _add_into(left, c, m[k][l])
                    right: dict = {}
                    for k, c in m[j][l].items():
                        _add_into(right, c, m[i][k])
                    if left != right:
                        raise AssociativityViolation((self.labels[i], self.labels[j], self.labels[l]))
        for i in range(d):
            b = self.basis_vector(i)
            if self.multiply(self.unit, b) != b or self.multiply(b, self.unit) != b:
                raise UnitViolation(self.labels[i])
        if not self.idempotents:
            raise IdempotentViolation("list", "idempotent list is empty")
        total = [0] * d
        for a, e in enumerate(self.idempotents):
            total = la.vec_add(total, e)
            for b, f in enumerate(self.idempotents):
                prod = self.multiply(e, f)
                want = e if a == b else [0] * d
                if prod != want:
                    raise IdempotentViolation((a, b), f"e{a} e{b} should be {'e' + str(a) if a == b else '0'}")
        if total != self.unit:
            raise IdempotentViolation("sum", "idempotents do not sum to the unit")
        if check_primitive:
            self._idempotent_radical()

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def zero_vector(self) -> list:
        return [self.field.zero] * self.dim

    def multiply(self, u, v) -> list:
        acc: dict = {}
        nu = [(i, a) for i, a in enumerate(u) if a]
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nu:
            row = self.mult[i]
            for j, b in nv:
                _add_into(acc, a * b, row[j])
        out = [self.field.zero] * self.dim
        for k, x in acc.items():
            out[k] = x
        return out

    def left_mult_matrix(self, u) -> la.Matrix:
        """Matrix of x -> u x."""
        cols = [self.multiply(u, self.basis_vector(j)) for j in range(self.dim)]
        return la.from_columns(cols, self.dim)

    def right_mult_matrix(self, u) -> la.Matrix:
        """Matrix of x -> x u."""
        cols = [self.multiply(self.basis_vector(i), u) for i in range(self.dim)]
        return la.from_columns(cols, self.dim)

    @cached_property
    def right_basis_matrices(self) -> list:
        return [self.right_mult_matrix(self.basis_vector(j)) for j in range(self.dim)]

    @cached_property
    def left_basis_matrices(self) -> list:
        return [self.left_mult_matrix(self.basis_vector(j)) for j in range(self.dim)]

    def subalgebra_closure(self, gens) -> Subspace:
        E = la.Echelon.from_vectors([self.unit] + list(gens), self.dim)
        while True:
            grew = False
            for v in E.basis():
                for g in gens:
                    if E.add(self.multiply(v, g)):
                        grew = True
            if not grew:
                return Subspace(E, self.dim)

    @cached_property
    def generators(self) -> list:
        """A generating set of the algebra: idempotents, then basis elements as needed."""
        if self.quiver is not None:
            gens = [self.basis_vector(i) for i in range(self.dim) if self._path_length(i) <= 1]
            if self.subalgebra_closure(gens).dim == self.dim:
                return gens
        gens = [list(e) for e in self.idempotents]
        span = self.subalgebra_closure(gens)
        for i in range(self.dim):
            if span.dim == self.dim:
                break
            b = self.basis_vector(i)
            if not span.contains(b):
                gens.append(b)
                span = self.subalgebra_closure(gens)
        return gens

    def _path_length(self, i: int) -> int:
        return len(self.quiver.basis_paths[i]) if self.quiver is not None else 0

    def span_of(self, vectors) -> Subspace:
        return Subspace(vectors, self.dim)

    def corner(self, e, f) -> Subspace:
        """The subspace e A f."""
        return Subspace([self.multiply(self.multiply(e, self.basis_vector(k)), f) for k in range(self.dim)], self.dim)

    def product_space(self, U: Subspace, V: Subspace) -> Subspace:
        return Subspace([self.multiply(u, v) for u in U.basis for v in V.basis], self.dim)

    def is_two_sided_ideal(self, J: Subspace) -> bool:
        for v in J.basis:
            for k in range(self.dim):
                b = self.basis_vector(k)
                if not J.contains(self.multiply(b, v)) or not J.contains(self.multiply(v, b)):
                    return False
        return True

    def is_nilpotent_space(self, J: Subspace) -> bool:
        power = J
        for _ in range(self.dim + 1):
            if power.dim == 0:
                return True
            nxt = self.product_space(power, J)
            if nxt.dim == power.dim:
                return False
            power = nxt
        return power.dim == 0

    # -- radical -------------------------------------------------------------

    def radical(self, method: str = "auto") -> Subspace:
        """Jacobson radical.

        ``quiver`` uses the arrow ideal, ``trace`` the radical of the trace
        form (characteristic zero only), ``idempotent`` splits along the
        distinguished idempotents (any characteristic, basic split algebras).
        """
        if method == "auto":
            hint = getattr(self, "radical_hint", None)
            if hint is not None:
                return hint
            if self.quiver is not None:
                method = "quiver"
            elif self.field.characteristic == 0:
                method = "trace"
            else:
                method = "idempotent"
        cache = self.__dict__.setdefault("_radical_cache", {})
        if method in cache:
            return cache[method]
        if method == "quiver":
            if self.quiver is None:
                raise RadicalUnavailable("algebra has no quiver presentation")
            J = Subspace([self.basis_vector(i) for i in range(self.dim) if self._path_length(i) >= 1], self.dim)
        elif method == "trace":
            if self.field.characteristic != 0:
                raise UnsupportedField("trace-form radical needs characteristic zero")
            J = self._trace_radical()
        elif method == "idempotent":
            J = self._idempotent_radical()
        else:
            raise ValueError(f"unknown radical method {method!r}")
        cache[method] = J
        return J

    def _trace_radical(self) -> Subspace:
        d = self.dim
        traces = [sum((self.mult[k][i].get(i, 0) for i in range(d)), 0) for k in range(d)]
        gram = []
        for i in range(d):
            row = []
            for j in range(d):
                row.append(sum((c * traces[k] for k, c in self.mult[i][j].items()), 0))
            gram.append(row)
        J = Subspace(la.kernel(gram, d, self.field.one), d)
        if not self.is_two_sided_ideal(J) or not self.is_nilpotent_space(J):
            raise RadicalUnavailable("trace-form radical is not a nilpotent ideal")
        return J

    def _idempotent_radical(self) -> Subspace:
        d = self.dim
        F = self.field
        vecs = []
        n = len(self.idempotents)
        for a in range(n):
            for b in range(n):
                if a != b:
                    vecs.extend(self.corner(self.idempotents[a], self.idempotents[b]).basis)
        for a, e in enumerate(self.idempotents):
            local = self.corner(e, e)
            if local.dim == 0:
                raise IdempotentViolation(a, f"idempotent {a} is zero")
            B = local.basis_matrix()
            for x in local.basis:
                Lx = local.coordinate_matrix(la.mat_mul(self.left_mult_matrix(x), B, cols=local.dim))
                lam = _single_eigenvalue(Lx, F)
                if lam is None:
                    raise IdempotentViolation(a, f"e{a} A e{a} is not a split local algebra; idempotent {a} is not primitive")
                vecs.append(la.vec_sub(x, la.vec_scale(lam, e)))
        J = Subspace(vecs, d)
        if J.dim != d - n:
            raise IdempotentViolation("radical", "corner algebras are not local (idempotents not primitive)")
        if not self.is_two_sided_ideal(J) or not self.is_nilpotent_space(J):
            raise IdempotentViolation("radical", "idempotents are not primitive or the algebra is not basic")
        return J

    # -- convenience -----------------------------------------------------------

    def element(self, coeffs: dict) -> list:
        v = self.zero_vector()
        for label, c in coeffs.items():
            v[self.labels.index(label)] = self.field(c)
        return v

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"unknown basis label {label!r} in algebra {self.name or '?'}") from None

    def structure_equal(self, other: "Algebra") -> bool:
        return (
            self.dim == other.dim
            and self.mult == other.mult
            and self.unit == other.unit
            and self.idempotents == other.idempotents
        )

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, idempotents={len(self.idempotents)})"


def _single_eigenvalue(L: la.Matrix, F: Field):
    """The unique eigenvalue of ``L`` if ``L - lam I`` is nilpotent, else None."""
    n = len(L)
    if n == 0:
        return None
    p = F.characteristic
    candidates = []
    tr = sum((L[i][i] for i in range(n)), 0)
    if p == 0 or n % p != 0:
        candidates.append(tr / F(n))
    elif p <= 2000:
        candidates.extend(F(c) for c in range(p))
    for lam in candidates:
        N = [[L[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        P = N
        for _ in range(n):
            P = la.mat_mul(P, N)
        if la.is_zero_matrix(P) or n == 1 and not N[0][0]:
            return lam
    return None


def is_algebra_morphism(A: Algebra, B: Algebra, phi: la.Matrix) -> bool:
    """Whether the linear map (dim B x dim A matrix) is a unital algebra homomorphism."""
    if la.mat_vec(phi, A.unit) != B.unit:
        return False
    images = [la.column(phi, i) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = la.mat_vec(phi, A.multiply(A.basis_vector(i), A.basis_vector(j)))
            if lhs != B.multiply(images[i], images[j]):
                return False
    return True


def is_algebra_isomorphism(A: Algebra, B: Algebra, phi: la.Matrix) -> bool:
    return A.dim == B.dim and la.rank(phi, A.dim) == A.dim and is_algebra_morphism(A, B, phi)


# ---------------------------------------------------------------------------
# constructors


def algebra_from_structure_constants(
    field: Field,
    labels: Sequence[str],
    table,
    unit,
    idempotents,
    name: str = "",
    check_primitive: bool = True,
) -> Algebra:
    """Build and validate an algebra from a dense table or sparse products.

    ``table`` is either a dense ``dim x dim`` list of coordinate vectors or
    a dict ``{(i, j): {k: c}}`` listing the nonzero products.
    """
    d = len(labels)
    if isinstance(table, dict):
        mult = [[{} for _ in range(d)] for _ in range(d)]
        for (i, j), vec in table.items():
            mult[i][j] = dict(vec)
    else:
        if len(table) != d or any(len(row) != d for row in table):
            raise DimensionMismatch("structure-constant table is not dim x dim")
        mult = []
        for row in table:
            mrow = []
            for vec in row:
                if len(vec) != d:
                    raise DimensionMismatch("structure-constant vector has the wrong length")
                mrow.append({k: c for k, c in enumerate(vec) if c})
            mult.append(mrow)
    return Algebra(field, labels, mult, unit, idempotents, name=name, check_primitive=check_primitive)


def field_algebra(F: Field, name: str = "k") -> Algebra:
    return Algebra(F, ["1"], [[{0: 1}]], [1], [[1]], name=name)


def truncated_polynomial(F: Field, n: int, var: str = "x", name: str = "") -> Algebra:
    """k[x]/(x^n)."""
    labels = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, n)]
    mult = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    unit = [1] + [0] * (n - 1)
    return Algebra(F, labels, mult, unit, [unit], name=name or f"k[{var}]/({var}^{n})")


def opposite(A: Algebra) -> Algebra:
    mult = [[dict(A.mult[j][i]) for j in range(A.dim)] for i in range(A.dim)]
    return Algebra(A.field, A.labels, mult, A.unit, A.idempotents, name=f"{A.name}^op", check=False)


def tensor_algebra(A: Algebra, B: Algebra) -> Algebra:
    """A (x)_k B with basis a_i (x) b_j at index i * dim B + j."""
    if A.field != B.field:
        raise AlgebraMismatch("tensor product over different fields")
    dA, dB = A.dim, B.dim
    mult = [[{} for _ in range(dA * dB)] for _ in range(dA * dB)]
    for i1, j1, i2, j2 in itertools.product(range(dA), range(dB), range(dA), range(dB)):
        out: dict = {}
        for k, c in A.mult[i1][i2].items():
            for l, e in B.mult[j1][j2].items():
                out[k * dB + l] = out.get(k * dB + l, 0) + c * e
        mult[i1 * dB + j1][i2 * dB + j2] = out
    unit = [a * b for a in A.unit for b in B.unit]
    idem = [[a * b for a in e for b in f] for e in A.idempotents for f in B.idempotents]
    labels = [f"{a}*{b}" for a in A.labels for b in B.labels]
    return Algebra(A.field, labels, mult, unit, idem, name=f"({A.name})x({B.name})", check=False)


def product_algebra(A: Algebra, B: Algebra) -> Algebra:
    """Direct product A x B with basis (A basis, B basis)."""
    dA, dB = A.dim, B.dim
    d = dA + dB
    mult = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(dA):
        for j in range(dA):
            mult[i][j] = dict(A.mult[i][j])
    for i in range(dB):
        for j in range(dB):
            mult[dA + i][dA + j] = {dA + k: c for k, c in B.mult[i][j].items()}
    unit = list(A.unit) + list(B.unit)
    idem = [list(e) + [0] * dB for e in A.idempotents] + [[0] * dA + list(f) for f in B.idempotents]
    labels = [f"A:{x}" for x in A.labels] + [f"B:{x}" for x in B.labels]
    return Algebra(A.field, labels, mult, unit, idem, name=f"{A.name} x {B.name}")


# ---------------------------------------------------------------------------
# quivers


@dataclass
class QuiverPresentation:
    """Quiver with relations. Paths compose left to right: ``a*b`` is a then b."""

    vertices: list
    arrows: list  # (name, source, target)
    relations: list = dc_field(default_factory=list)  # each {path-tuple: coeff}
    nilpotency_bound: int = 2
    basis_paths: list = dc_field(default_factory=list, repr=False)

    def arrow_index(self, name):
        for i, a in enumerate(self.arrows):
            if a[0] == name:
                return i
        raise InvalidRelation(f"unknown arrow {name!r}")

    def endpoints(self, path: tuple):
        """(source, target) vertex of a path; vertex paths are ('@v',)."""
        if len(path) == 1 and isinstance(path[0], str) and path[0].startswith("@"):
            v = path[0][1:]
            return v, v
        src = self.arrows[self.arrow_index(path[0])][1]
        cur = src
        for name in path:
            a = self.arrows[self.arrow_index(name)]
            if a[1] != cur:
                raise InvalidRelation(f"path {'*'.join(path)} is not composable")
            cur = a[2]
        return src, cur


def parse_path(q: QuiverPresentation, text: str) -> tuple:
    text = text.strip()
    if text.startswith("e_") and text[2:] in [str(v) for v in q.vertices]:
        return ("@" + text[2:],)
    names = tuple(t.strip() for t in text.split("*") if t.strip())
    if not names:
        raise InvalidRelation("empty path")
    for n in names:
        q.arrow_index(n)
    return names


def algebra_from_quiver(q: QuiverPresentation, field: Field, name: str = "") -> Algebra:
    """Path algebra kQ / (relations + paths of length >= L)."""
    L = q.nilpotency_bound
    if L < 1:
        raise InvalidRelation("nilpotency bound must be >= 1")
    verts = [str(v) for v in q.vertices]
    if len(set(verts)) != len(verts):
        raise InvalidRelation("duplicate vertex names")
    for a in q.arrows:
        if str(a[1]) not in verts or str(a[2]) not in verts:
            raise InvalidRelation(f"arrow {a[0]} has an unknown endpoint")
    arrows = [(a[0], str(a[1]), str(a[2])) for a in q.arrows]
    q.arrows = arrows
    q.vertices = verts
    # all paths of length < L
    paths: list[tuple] = [("@" + v,) for v in verts]
    layer = [((a[0],), a[2]) for a in arrows]
    length = 1
    while layer and length < L:
        layer.sort(key=lambda pt: pt[0])
        paths.extend(p for p, _ in layer)
        nxt = []
        for p, t in layer:
            for a in arrows:
                if a[1] == t:
                    nxt.append((p + (a[0],), a[2]))
        layer = nxt
        length += 1
    index = {p: i for i, p in enumerate(paths)}
    n = len(paths)

    def concat(p, r):
        sp, tp = q.endpoints(p)
        sr, tr = q.endpoints(r)
        if tp != sr:
            return None
        if p[0].startswith("@"):
            return r
        if r[0].startswith("@"):
            return p
        return p + r

    rels = []
    for rel in q.relations:
        vec = {}
        for path, c in rel.items():
            q.endpoints(path)
            if path in index:
                vec[index[path]] = vec.get(index[path], 0) + field(c)
            elif len(path) < L and not path[0].startswith("@"):
                raise InvalidRelation(f"path {path} unexpectedly missing")
        rels.append(vec)
    ideal = la.Echelon(n)
    # columns reversed so that pivots land on the longest / last paths
    rev = lambda j: n - 1 - j  # noqa: E731
    for rel in rels:
        for p in paths:
            for r in paths:
                out = {}
                for j, c in rel.items():
                    w = concat(p, paths[j])
                    if w is None:
                        continue
                    w = concat(w, r)
                    if w is None or w not in index:
                        continue
                    out[rev(index[w])] = out.get(rev(index[w]), 0) + c
                if any(out.values()):
                    ideal.add(out)
    keep = [j for j in range(n) if rev(j) not in ideal.rows]
    for v in verts:
        if index[("@" + v,)] not in keep:
            raise InvalidRelation(f"relations kill the vertex idempotent of {v}; ideal is not admissible")
    pos = {j: a for a, j in enumerate(keep)}
    d = len(keep)

    def normal_form(j):
        r = ideal.reduce({rev(j): field.one})
        out = {}
        for c, x in r.items():
            out[pos[rev(c)]] = x
        return out

    mult = [[{} for _ in range(d)] for _ in range(d)]
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            w = concat(paths[i], paths[j])
            if w is None or w not in index:
                continue
            mult[a][b] = normal_form(index[w])
    basis_paths = [paths[j] if not paths[j][0].startswith("@") else () for j in keep]
    labels = ["e_" + paths[j][0][1:] if paths[j][0].startswith("@") else "*".join(paths[j]) for j in keep]
    unit = [0] * d
    idem = []
    for v in verts:
        e = [0] * d
        e[pos[index[("@" + v,)]]] = 1
        unit[pos[index[("@" + v,)]]] = 1
        idem.append(e)
    q.basis_paths = basis_paths
    return Algebra(field, labels, mult, unit, idem, quiver=q, name=name)


def path_algebra(field: Field, vertices, arrows, relations=(), bound: int | None = None, name: str = "") -> Algebra:
    """Convenience wrapper: relations are dicts ``{"a*b": coeff}``."""
    q = QuiverPresentation(list(vertices), [tuple(a) for a in arrows], [], bound or 2)
    q.vertices = [str(v) for v in q.vertices]
    parsed = []
    for rel in relations:
        parsed.append({parse_path(q, p): c for p, c in rel.items()})
    q.relations = parsed
    if bound is None:
        q.nilpotency_bound = _acyclic_bound(q)
    return algebra_from_quiver(q, field, name)


def _acyclic_bound(q: QuiverPresentation) -> int:
    """1 + length of the longest path; raises if the quiver has oriented cycles."""
    verts = [str(v) for v in q.vertices]
    longest = {v: 0 for v in verts}
    for _ in range(len(verts) + 1):
        changed = False
        for name, s, t in q.arrows:
            if longest[str(s)] + 1 > longest[str(t)]:
                longest[str(t)] = longest[str(s)] + 1
                changed = True
        if not changed:
            return max(longest.values(), default=0) + 1
    raise InvalidRelation("quiver has oriented cycles; give a nilpotency bound")


# ---------------------------------------------------------------------------
# modules


class RightModule:
    def __init__(self, algebra: Algebra, action: Sequence[la.Matrix], dim: int | None = None, name: str = "", check: bool = True):
        self.algebra = algebra
        if dim is None:
            dim = len(action[0]) if action else 0
        self.dim = dim
        self.action = [list(map(list, m)) for m in action] if check else list(action)
        self.name = name
        if check:
            self._validate()

    def _validate(self):
        A = self.algebra
        F = A.field
        d = self.dim
        if len(self.action) != A.dim:
            raise DimensionMismatch("need one action matrix per algebra basis element")
        for m in self.action:
            if len(m) != d or any(len(r) != d for r in m):
                raise DimensionMismatch("action matrix has the wrong size")
        self.action = [la.coerce_matrix(m, F) for m in self.action]
        if not la.mat_equal(self.act(A.unit), la.identity(d, F)):
            raise ModuleViolation("the unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.act(A.multiply(A.basis_vector(i), A.basis_vector(j)))
                rhs = la.mat_mul(self.action[j], self.action[i], cols=d)
                if not la.mat_equal(lhs, rhs):
                    raise ModuleViolation(f"action is not compatible with the product {A.labels[i]}*{A.labels[j]}")

    def act(self, v) -> la.Matrix:
        return la.lin_comb(v, self.action, self.dim, self.dim)

    def act_vector(self, x, v) -> list:
        """x . v for module vector x and algebra element v."""
        out = [0] * self.dim
        for k, c in enumerate(v):
            if c:
                y = la.mat_vec(self.action[k], x)
                out = [a + c * b for a, b in zip(out, y)]
        return out

    def zero_vector(self) -> list:
        return [self.algebra.field.zero] * self.dim

    def identity_matrix(self) -> la.Matrix:
        return la.identity(self.dim, self.algebra.field)

    def piece(self, e) -> Subspace:
        """The subspace X e."""
        return la.column_space(self.act(e), self.dim)

    def dimension_vector(self) -> list[int]:
        return [self.piece(e).dim for e in self.algebra.idempotents]

    def same_as(self, other: "RightModule") -> bool:
        return (
            self.algebra is other.algebra
            and self.dim == other.dim
            and all(la.mat_equal(a, b) for a, b in zip(self.action, other.action))
        )

    def __repr__(self):
        return f"RightModule({self.name or '?'}, dim={self.dim}, over {self.algebra.name or '?'})"


def regular_module(A: Algebra) -> RightModule:
    return RightModule(A, A.right_basis_matrices, A.dim, name=f"{A.name}_reg", check=False)


def zero_module(A: Algebra) -> RightModule:
    return RightModule(A, [[] for _ in range(A.dim)], 0, name="0", check=False)


def _projective_summand(A: Algebra, i: int):
    cache = A.__dict__.setdefault("_proj_cache", {})
    if i not in cache:
        e = A.idempotents[i]
        space = Subspace([A.multiply(e, A.basis_vector(k)) for k in range(A.dim)], A.dim)
        B = space.basis_matrix()
        action = [space.coordinate_matrix(la.mat_mul(R, B, cols=space.dim)) for R in A.right_basis_matrices]
        gen = space.coordinates(e)
        cache[i] = (space, action, gen)
    return cache[i]


class ProjectiveModule(RightModule):
    """A finite direct sum of indecomposable projectives e_i A.

    ``tags[a]`` is the idempotent index of summand ``a``; the generator of
    summand ``a`` is the image of e_{tags[a]}.
    """

    def __init__(self, algebra: Algebra, tags: Sequence[int]):
        self.tags = list(tags)
        parts = [_projective_summand(algebra, t) for t in self.tags]
        dims = [p[0].dim for p in parts]
        self.offsets = list(itertools.accumulate([0] + dims))
        dim = self.offsets[-1]
        if parts:
            action = [la.block_diag([p[1][k] for p in parts], [(d, d) for d in dims]) for k in range(algebra.dim)]
        else:
            action = [[] for _ in range(algebra.dim)]
        super().__init__(algebra, action, dim, name="P" + str(self.tags), check=False)
        self._parts = parts
        self.generators = []
        for a, p in enumerate(parts):
            g = [algebra.field.zero] * dim
            for c, x in enumerate(p[2]):
                g[self.offsets[a] + c] = x
            self.generators.append(g)

    def summand_range(self, a: int) -> range:
        return range(self.offsets[a], self.offsets[a + 1])

    def components(self, x) -> list:
        """Algebra elements (one per summand) represented by the module vector ``x``."""
        out = []
        for a, p in enumerate(self._parts):
            coords = x[self.offsets[a]:self.offsets[a + 1]]
            elem = [0] * self.algebra.dim
            for c, b in zip(coords, p[0].basis):
                if c:
                    elem = [u + c * v for u, v in zip(elem, b)]
            out.append(elem)
        return out

    def from_components(self, elems) -> list:
        x = []
        for a, p in enumerate(self._parts):
            x.extend(p[0].coordinates(elems[a]))
        return x

    def map_to(self, N: RightModule, images) -> la.Matrix:
        """The homomorphism sending generator a to ``images[a]`` (which must lie in N e_{tag})."""
        cols = []
        for a, p in enumerate(self._parts):
            y = images[a]
            for b in p[0].basis:
                cols.append(N.act_vector(y, b))
        return la.from_columns(cols, N.dim) if cols else [[] for _ in range(N.dim)]

    def evaluate(self, phi: la.Matrix) -> list:
        """Concatenated images of the generators under ``phi``."""
        out = []
        for g in self.generators:
            out.extend(la.mat_vec(phi, g))
        return out


def projective_module(A: Algebra, i: int) -> ProjectiveModule:
    return ProjectiveModule(A, [i])


def direct_sum(modules: Sequence[RightModule], A: Algebra | None = None) -> RightModule:
    if not modules:
        return zero_module(A)
    A = modules[0].algebra
    for M in modules:
        if M.algebra is not A:
            raise AlgebraMismatch("direct sum of modules over different algebras")
    dims = [(M.dim, M.dim) for M in modules]
    action = [la.block_diag([M.action[k] for M in modules], dims) for k in range(A.dim)]
    return RightModule(A, action, sum(M.dim for M in modules), check=False)


def submodule_closure(X: RightModule, vectors) -> Subspace:
    E = la.Echelon.from_vectors(vectors, X.dim)
    gens = X.algebra.generators
    mats = [X.act(g) for g in gens]
    frontier = E.basis()
    while frontier:
        new = []
        for v in frontier:
            for m in mats:
                w = la.mat_vec(m, v)
                if E.add(w):
                    new.append(w)
        frontier = new
    return Subspace(E, X.dim)


def submodule(X: RightModule, vectors, closed: bool = False):
    """The submodule generated by ``vectors``: returns (module, inclusion matrix)."""
    W = Subspace(vectors, X.dim) if closed else submodule_closure(X, vectors)
    B = W.basis_matrix()
    action = [W.coordinate_matrix(la.mat_mul(m, B, cols=W.dim)) if W.dim else [] for m in X.action]
    return RightModule(X.algebra, action, W.dim, check=False), B


def quotient_module(X: RightModule, vectors, closed: bool = False):
    """X / <vectors>: returns (module, projection matrix, section matrix)."""
    W = Subspace(vectors, X.dim) if closed else submodule_closure(X, vectors)
    Q = W.quotient_matrix(X.algebra.field.one)
    S = W.section_matrix(X.algebra.field.one)
    c = W.codim
    action = [la.mat_mul(la.mat_mul(Q, m, cols=X.dim), S, cols=c) if c else [] for m in X.action]
    return RightModule(X.algebra, action, c, check=False), Q, S


def kernel_module(f: la.Matrix, X: RightModule):
    """Kernel of a homomorphism out of X: (module, inclusion)."""
    return submodule(X, la.kernel(f, X.dim, X.algebra.field.one), closed=True)


def cokernel_module(f: la.Matrix, Y: RightModule, source_dim: int):
    """Cokernel of a homomorphism into Y: (module, projection, section)."""
    cols = [la.column(f, j) for j in range(source_dim)] if Y.dim else []
    return quotient_module(Y, cols, closed=True)


def radical_submodule(X: RightModule) -> Subspace:
    """X . rad(A)."""
    J = X.algebra.radical()
    vecs = []
    for r in J.basis:
        m = X.act(r)
        vecs.extend(la.column(m, j) for j in range(X.dim))
    return Subspace(vecs, X.dim)


def simple_module(A: Algebra, i: int) -> RightModule:
    P = projective_module(A, i)
    S, _, _ = quotient_module(P, radical_submodule(P).basis, closed=True)
    S.name = f"S{i}"
    return S


@dataclass
class ModuleHom:
    source: RightModule
    target: RightModule
    matrix: la.Matrix

    def __post_init__(self):
        X, Y = self.source, self.target
        if len(self.matrix) != Y.dim or any(len(r) != X.dim for r in self.matrix):
            raise DimensionMismatch("homomorphism matrix has the wrong shape")

    def is_homomorphism(self) -> bool:
        X, Y = self.source, self.target
        for g in X.algebra.generators:
            lhs = la.mat_mul(self.matrix, X.act(g), cols=X.dim)
            rhs = la.mat_mul(Y.act(g), self.matrix, cols=X.dim)
            if not la.mat_equal(lhs, rhs):
                return False
        return True

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """self o other."""
        return ModuleHom(other.source, self.target, la.mat_mul(self.matrix, other.matrix, cols=other.source.dim))


def is_homomorphism(X: RightModule, Y: RightModule, phi: la.Matrix) -> bool:
    return ModuleHom(X, Y, phi).is_homomorphism()


def hom_basis(X: RightModule, Y: RightModule) -> list[la.Matrix]:
    """Basis of Hom_A(X, Y) as matrices."""
    if X.algebra is not Y.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    F = X.algebra.field
    dX, dY = X.dim, Y.dim
    if dX == 0 or dY == 0:
        return []
    if isinstance(X, ProjectiveModule):
        out = []
        for a, t in enumerate(X.tags):
            piece = Y.piece(X.algebra.idempotents[t])
            for y in piece.basis:
                images = [Y.zero_vector() for _ in X.tags]
                images[a] = y
                out.append(X.map_to(Y, images))
        return out
    E = la.Echelon(dX * dY)
    for g in X.algebra.generators:
        P = X.act(g)
        Q = Y.act(g)
        pcols = [[(b, P[b][c]) for b in range(dX) if P[b][c]] for c in range(dX)]
        qrows = [[(b, Q[a][b]) for b in range(dY) if Q[a][b]] for a in range(dY)]
        for a in range(dY):
            for c in range(dX):
                row: dict = {}
                for b, x in pcols[c]:
                    k = a * dX + b
                    row[k] = row.get(k, 0) + x
                for b, x in qrows[a]:
                    k = b * dX + c
                    row[k] = row.get(k, 0) - x
                if any(row.values()):
                    E.add(row)
    out = []
    for v in E.null_vectors(F.one):
        out.append([v[a * dX:(a + 1) * dX] for a in range(dY)])
    return out


def hom_space(X: RightModule, Y: RightModule) -> list[ModuleHom]:
    return [ModuleHom(X, Y, m) for m in hom_basis(X, Y)]


def hom_dim(X: RightModule, Y: RightModule) -> int:
    return len(hom_basis(X, Y))


def find_isomorphism(X: RightModule, Y: RightModule, tries: int = 12, seed: int = 0):
    """An invertible homomorphism X -> Y if one is found, else None.

    A found isomorphism is a proof; None is only evidence (random search).
    """
    if X.dim != Y.dim:
        return None
    if X.dim == 0:
        return []
    basis = hom_basis(X, Y)
    if not basis:
        return None
    rng = _random.Random(seed)
    candidates = list(basis)
    for _ in range(tries):
        coeffs = [rng.randint(-5, 5) for _ in basis]
        candidates.append(la.lin_comb(coeffs, basis, Y.dim, X.dim))
    for phi in candidates:
        if la.rank(phi, X.dim) == X.dim:
            return phi
    return None


def is_projective_module(X: RightModule) -> bool:
    from .homological import projective_cover

    P, epi = projective_cover(X)
    return P.dim == X.dim


# ---------------------------------------------------------------------------
# bimodules


class Bimodule:
    """An (R, S)-bimodule: left R-action and right S-action that commute."""

    def __init__(self, left: Algebra, right: Algebra, left_action, right_action, dim: int | None = None, name: str = "", check: bool = True):
        self.left_algebra = left
        self.right_algebra = right
        if dim is None:
            dim = len(left_action[0]) if left_action and left_action[0] else (len(right_action[0]) if right_action and right_action[0] else 0)
        self.dim = dim
        self.left_action = list(left_action)
        self.right_action = list(right_action)
        self.name = name
        if check:
            self._validate()

    def _validate(self):
        R, S = self.left_algebra, self.right_algebra
        if R.field != S.field:
            raise AlgebraMismatch("bimodule over algebras with different fields")
        F = R.field
        d = self.dim
        if len(self.left_action) != R.dim or len(self.right_action) != S.dim:
            raise DimensionMismatch("need one action matrix per basis element on each side")
        for m in self.left_action + self.right_action:
            if len(m) != d or any(len(r) != d for r in m):
                raise DimensionMismatch("bimodule action matrix has the wrong size")
        self.left_action = [la.coerce_matrix(m, F) for m in self.left_action]
        self.right_action = [la.coerce_matrix(m, F) for m in self.right_action]
        I = la.identity(d, F)
        if not la.mat_equal(self.left(R.unit), I) or not la.mat_equal(self.right(S.unit), I):
            raise ModuleViolation("bimodule units do not act as the identity")
        for i in range(R.dim):
            for j in range(R.dim):
                lhs = self.left(R.multiply(R.basis_vector(i), R.basis_vector(j)))
                if not la.mat_equal(lhs, la.mat_mul(self.left_action[i], self.left_action[j], cols=d)):
                    raise ModuleViolation(f"left action incompatible with {R.labels[i]}*{R.labels[j]}")
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = self.right(S.multiply(S.basis_vector(i), S.basis_vector(j)))
                if not la.mat_equal(lhs, la.mat_mul(self.right_action[j], self.right_action[i], cols=d)):
                    raise ModuleViolation(f"right action incompatible with {S.labels[i]}*{S.labels[j]}")
        for a in self.left_action:
            for b in self.right_action:
                if not la.mat_equal(la.mat_mul(a, b, cols=d), la.mat_mul(b, a, cols=d)):
                    raise ModuleViolation("left and right actions do not commute")

    def left(self, r) -> la.Matrix:
        return la.lin_comb(r, self.left_action, self.dim, self.dim)

    def right(self, s) -> la.Matrix:
        return la.lin_comb(s, self.right_action, self.dim, self.dim)

    def right_module(self) -> RightModule:
        """M as a right S-module."""
        return RightModule(self.right_algebra, self.right_action, self.dim, name=f"{self.name}_S", check=False)

    def left_as_right_module(self) -> RightModule:
        """M as a right R^op-module."""
        return RightModule(opposite(self.left_algebra), self.left_action, self.dim, check=False)

    def enveloping_module(self, env: Algebra | None = None) -> RightModule:
        """M as a right module over R^op (x) S."""
        env = env or tensor_algebra(opposite(self.left_algebra), self.right_algebra)
        action = []
        for a in self.left_action:
            for b in self.right_action:
                action.append(la.mat_mul(a, b, cols=self.dim))
        return RightModule(env, action, self.dim, check=False)

    def __repr__(self):
        return f"Bimodule({self.name or '?'}, dim={self.dim})"


def regular_bimodule(A: Algebra) -> Bimodule:
    return Bimodule(A, A, A.left_basis_matrices, A.right_basis_matrices, A.dim, name=f"{A.name}_bimod", check=False)


def zero_bimodule(R: Algebra, S: Algebra) -> Bimodule:
    return Bimodule(R, S, [[] for _ in range(R.dim)], [[] for _ in range(S.dim)], 0, name="0", check=False)


def bimodule_from_enveloping(R: Algebra, S: Algebra, X: RightModule) -> Bimodule:
    """Inverse of :meth:`Bimodule.enveloping_module` for a module over R^op (x) S."""
    dS = S.dim
    F = R.field
    left = []
    for i in range(R.dim):
        vec = [F.zero] * (R.dim * dS)
        for j, c in enumerate(S.unit):
            if c:
                vec[i * dS + j] = c
        left.append(X.act(vec))
    right = []
    for j in range(dS):
        vec = [F.zero] * (R.dim * dS)
        for i, c in enumerate(R.unit):
            if c:
                vec[i * dS + j] = c
        right.append(X.act(vec))
    return Bimodule(R, S, left, right, X.dim, check=False)


def bimodule_from_right_module(X: RightModule, k: Algebra | None = None) -> Bimodule:
    """The (k, A)-bimodule with k acting by scalars."""
    k = k or field_algebra(X.algebra.field)
    if k.dim != 1:
        raise ValidationError("left algebra must be the base field")
    return Bimodule(k, X.algebra, [X.identity_matrix()], X.action, X.dim, name=X.name, check=False)


def bimodule_from_left_module(left_action, A: Algebra, k: Algebra | None = None, dim: int | None = None) -> Bimodule:
    """The (A, k)-bimodule with k acting by scalars on the right."""
    k = k or field_algebra(A.field)
    d = dim if dim is not None else len(left_action[0])
    return Bimodule(A, k, left_action, [la.identity(d, A.field)], d)


def dual_bimodule(M: Bimodule) -> Bimodule:
    """D M = Hom_k(M, k) as an (S, R)-bimodule.

    (s phi)(m) = phi(m s) and (phi r)(m) = phi(r m); in the dual basis the
    action matrices are the transposes of the original ones.
    """
    d = M.dim
    left = [la.transpose(m, d) for m in M.right_action]
    right = [la.transpose(m, d) for m in M.left_action]
    return Bimodule(M.right_algebra, M.left_algebra, left, right, d, name=f"D({M.name})", check=False)


def dual_module_of_left(left_action, A: Algebra, dim: int) -> RightModule:
    """D of a left A-module given by left-action matrices, as a right A-module."""
    return RightModule(A, [la.transpose(m, dim) for m in left_action], dim, check=False)


def dual_regular_module(A: Algebra) -> RightModule:
    """D(A) as a right A-module (the injective cogenerator)."""
    return dual_bimodule(regular_bimodule(A)).right_module()


# ---------------------------------------------------------------------------
# tensor products


@dataclass
class TensorProduct:
    module: RightModule  # X (x)_R M over S
    projection: la.Matrix  # from X (x)_k M (index i * dim M + j)
    section: la.Matrix
    relations: Subspace


def tensor_over(X: RightModule, M: Bimodule) -> TensorProduct:
    """X (x)_R M with its right S-action and the canonical surjection from X (x)_k M."""
    R = M.left_algebra
    if X.algebra is not R:
        raise AlgebraMismatch("X must be a module over the left algebra of M")
    F = R.field
    dX, dM = X.dim, M.dim
    n = dX * dM
    rels = []
    for g in range(R.dim):
        P = X.action[g]
        L = M.left_action[g]
        for i in range(dX):
            for j in range(dM):
                v = [0] * n
                for a in range(dX):
                    if P[a][i]:
                        v[a * dM + j] += P[a][i]
                for b in range(dM):
                    if L[b][j]:
                        v[i * dM + b] -= L[b][j]
                if any(v):
                    rels.append(v)
    W = Subspace(rels, n)
    Q = W.quotient_matrix(F.one)
    Sec = W.section_matrix(F.one)
    c = W.codim
    action = []
    for s in range(M.right_algebra.dim):
        # (x (x) m) s = x (x) m s
        Rs = M.right_action[s]
        big = la.block_diag([Rs] * dX, [(dM, dM)] * dX) if dX else []
        action.append(la.mat_mul(la.mat_mul(Q, big, cols=n), Sec, cols=c) if c else [])
    module = RightModule(M.right_algebra, action, c, check=False)
    return TensorProduct(module, Q, Sec, W)


def tensor_map(f: la.Matrix, src: TensorProduct, dst: TensorProduct, dM: int, dX: int) -> la.Matrix:
    """The map X (x)_R M -> X' (x)_R M induced by f : X -> X'."""
    dX2 = len(f)
    big = [[0] * (dX * dM) for _ in range(dX2 * dM)]
    for a in range(dX2):
        for b in range(dX):
            if f[a][b]:
                for j in range(dM):
                    big[a * dM + j][b * dM + j] = f[a][b]
    m = la.mat_mul(dst.projection, big, cols=dX * dM)
    return la.mat_mul(m, src.section, cols=src.module.dim)


# ---------------------------------------------------------------------------
# radical as a free function (module-level surface)


def radical(A: Algebra, method: str = "auto") -> Subspace:
    return A.radical(method)
