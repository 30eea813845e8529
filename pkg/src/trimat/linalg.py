"""Exact linear algebra over the rationals and prime fields.

Matrices are plain row-major lists of lists. Field elements are
``fractions.Fraction`` (rational field) or :class:`ModP` (prime field);
both support the usual arithmetic operators, so the routines below are
written once and work over either field. Integer matrices (Cartan data)
use plain Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, ValidationError

Matrix = list  # list[list[scalar]]


class ModP:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v} mod {self.p}"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    characteristic: int
    name: str

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "rational"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        if isinstance(x, ModP):
            raise TypeError("cannot coerce a residue into the rationals")
        raise TypeError(f"cannot coerce {x!r} to a rational")


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValidationError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"fp:{p}"

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, ModP):
            if x.p != p:
                raise ValueError("residue from a different prime field")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return ModP(x.numerator * pow(x.denominator, -1, p), p)
        if isinstance(x, int):
            return ModP(x, p)
        raise TypeError(f"cannot coerce {x!r} to F_{p}")


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    if spec in ("rational", "Q", "QQ"):
        return QQ
    if spec.startswith("fp:"):
        return GF(int(spec[3:]))
    raise ValidationError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# dense helpers


def zeros(rows: int, cols: int, F: Field | None = None) -> Matrix:
    z = F.zero if F is not None else 0
    return [[z] * cols for _ in range(rows)]


def identity(n: int, F: Field | None = None) -> Matrix:
    z, o = (F.zero, F.one) if F is not None else (0, 1)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def coerce_matrix(M, F: Field) -> Matrix:
    return [[F(x) for x in row] for row in M]


def shape(M: Matrix, cols: int | None = None) -> tuple[int, int]:
    if not M:
        return 0, (cols or 0)
    return len(M), len(M[0])


def transpose(M: Matrix, rows: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(rows or 0)]
    return [list(col) for col in zip(*M)]


def mat_mul(A: Matrix, B: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """Product of dense matrices, skipping zero entries.

    ``cols`` is only needed when ``B`` has no rows (so its width is unknown).
    """
    if B:
        n = len(B[0])
    else:
        n = cols or 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def mat_vec(A: Matrix, v: Sequence) -> list:
    out = []
    for row in A:
        s = 0
        for a, x in zip(row, v):
            if a and x:
                s += a * x
        out.append(s)
    return out


def vec_mat(v: Sequence, A: Matrix) -> list:
    n = len(A[0]) if A else 0
    acc = [0] * n
    for k, a in enumerate(v):
        if a:
            for j, b in enumerate(A[k]):
                if b:
                    acc[j] += a * b
    return acc


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_neg(A: Matrix) -> Matrix:
    return [[-a for a in row] for row in A]


def is_zero_matrix(A: Matrix) -> bool:
    return not any(x for row in A for x in row)


def mat_equal(A: Matrix, B: Matrix) -> bool:
    if len(A) != len(B):
        return False
    return all(len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def lin_comb(coeffs: Sequence, mats: Sequence[Matrix], rows: int, cols: int) -> Matrix:
    out = [[0] * cols for _ in range(rows)]
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        for i, row in enumerate(M):
            o = out[i]
            for j, x in enumerate(row):
                if x:
                    o[j] += c * x
    return out


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, v):
    return [c * a for a in v]


def column(M: Matrix, j: int) -> list:
    return [row[j] for row in M]


def from_columns(cols: Sequence[Sequence], rows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(rows)]
    return [list(r) for r in zip(*cols)]


def block_diag(blocks: Sequence[Matrix], dims: Sequence[tuple[int, int]] | None = None) -> Matrix:
    if dims is None:
        dims = [shape(b) for b in blocks]
    R = sum(d[0] for d in dims)
    C = sum(d[1] for d in dims)
    out = [[0] * C for _ in range(R)]
    r0 = c0 = 0
    for b, (r, c) in zip(blocks, dims):
        for i in range(r if c else 0):
            row = b[i]
            o = out[r0 + i]
            for j in range(c):
                if row[j]:
                    o[c0 + j] = row[j]
        r0 += r
        c0 += c
    return out


def hstack(mats: Sequence[Matrix], rows: int) -> Matrix:
    out = [[] for _ in range(rows)]
    for M in mats:
        for i in range(rows):
            out[i].extend(M[i])
    return out


def vstack(mats: Sequence[Matrix]) -> Matrix:
    out = []
    for M in mats:
        out.extend([list(r) for r in M])
    return out


def submatrix(M: Matrix, rows: range | Sequence[int], cols: range | Sequence[int]) -> Matrix:
    return [[M[i][j] for j in cols] for i in rows]


# ---------------------------------------------------------------------------
# echelon forms


class Echelon:
    """Incrementally maintained reduced row echelon form of a row space.

    Rows are sparse dicts ``{column: value}``. Every stored row has a
    pivot entry equal to one and no entries in the other pivot columns,
    so the stored rows are exactly the RREF of the span.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    @classmethod
    def from_vectors(cls, vectors, ncols: int) -> "Echelon":
        E = cls(ncols)
        for v in vectors:
            E.add(v)
        return E

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def _reduce(self, r: dict) -> dict:
        for p in [c for c in r if c in self.rows]:
            c = r.get(p)
            if not c:
                continue
            for j, x in self.rows[p].items():
                y = r.get(j, 0) - c * x
                if y:
                    r[j] = y
                else:
                    r.pop(j, None)
        return r

    def reduce(self, v) -> dict:
        r = _sparse(v)
        return self._reduce(r)

    def add(self, v) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        r = self._reduce(_sparse(v))
        if not r:
            return False
        q = min(r)
        c = r[q]
        inv = Fraction(1, c) if isinstance(c, int) else 1 / c
        r = {j: x * inv for j, x in r.items()}
        for p, row in self.rows.items():
            c = row.get(q)
            if c:
                for j, x in r.items():
                    y = row.get(j, 0) - c * x
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
        self.rows[q] = r
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[list]:
        """RREF basis vectors as dense lists, ordered by pivot."""
        out = []
        for p in self.pivots:
            row = [0] * self.ncols
            for j, x in self.rows[p].items():
                row[j] = x
            out.append(row)
        return out

    def coordinates(self, v) -> list:
        """Coordinates of ``v`` in :meth:`basis`; raises if ``v`` is outside the span."""
        if self.reduce(v):
            raise ValidationError("vector not in span")
        return [v[p] for p in self.pivots]

    def free_columns(self) -> list[int]:
        return [j for j in range(self.ncols) if j not in self.rows]

    def null_vectors(self, one=1) -> list[list]:
        """Basis of {x : row . x = 0 for every row}, one vector per free column."""
        out = []
        piv = self.pivots
        for f in self.free_columns():
            v = [0] * self.ncols
            v[f] = one
            for p in piv:
                c = self.rows[p].get(f)
                if c:
                    v[p] = -c
            out.append(v)
        return out

    def copy(self) -> "Echelon":
        E = Echelon(self.ncols)
        E.rows = {p: dict(r) for p, r in self.rows.items()}
        return E


def _sparse(v) -> dict:
    if isinstance(v, dict):
        return {j: x for j, x in v.items() if x}
    return {j: x for j, x in enumerate(v) if x}


def rref(M: Matrix, cols: int | None = None) -> tuple[Matrix, list[int]]:
    n = len(M[0]) if M else (cols or 0)
    E = Echelon.from_vectors(M, n)
    return E.basis(), E.pivots


def rank(M: Matrix, cols: int | None = None) -> int:
    n = len(M[0]) if M else (cols or 0)
    return Echelon.from_vectors(M, n).rank


def kernel(A: Matrix, cols: int | None = None, one=1) -> list[list]:
    """Basis of the null space {v : A v = 0} (column vectors)."""
    n = len(A[0]) if A else (cols if cols is not None else 0)
    return Echelon.from_vectors(A, n).null_vectors(one)


def image_basis(A: Matrix, cols: int | None = None) -> list[list]:
    """RREF basis of the column space of ``A``."""
    return Echelon.from_vectors(transpose(A), len(A)).basis() if A and A[0] else []


@dataclass
class LinearSolution:
    particular: Matrix | None  # X with A X = B, or None if infeasible
    kernel: list[list]  # basis of {v : A v = 0}

    @property
    def feasible(self) -> bool:
        return self.particular is not None


def solve_linear(A: Matrix, B: Matrix, cols: int | None = None) -> LinearSolution:
    """Solve ``A X = B`` exactly.

    Returns a particular solution (one column per column of ``B``) together
    with a basis of the homogeneous solution space; ``particular`` is None if
    some column is infeasible.
    """
    m = len(A)
    n = len(A[0]) if A else (cols or 0)
    if len(B) != m:
        raise DimensionMismatch(f"A has {m} rows but B has {len(B)}")
    k = len(B[0]) if B else 0
    EA = Echelon.from_vectors(A, n)
    null = EA.null_vectors()
    particular = []
    for c in range(k):
        E = Echelon.from_vectors([list(A[i]) + [B[i][c]] for i in range(m)], n + 1)
        if n in E.rows:
            return LinearSolution(None, null)
        x = [0] * n
        for p, row in E.rows.items():
            x[p] = row.get(n, 0)
        particular.append(x)
    return LinearSolution(from_columns(particular, n) if k else [[] for _ in range(n)], null)


def solve_vector(A: Matrix, b: Sequence, cols: int | None = None):
    """One solution of ``A x = b`` or None."""
    n = len(A[0]) if A else (cols or 0)
    E = Echelon.from_vectors([list(A[i]) + [b[i]] for i in range(len(A))], n + 1)
    if n in E.rows:
        return None
    x = [0] * n
    for p, row in E.rows.items():
        x[p] = row.get(n, 0)
    return x


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    sol = solve_linear(A, identity(n))
    if sol.particular is None or sol.kernel:
        raise ValidationError("matrix is singular")
    return sol.particular


def det(A: Matrix):
    """Determinant by Gaussian elimination (field entries) or Bareiss (ints)."""
    n = len(A)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in A for x in row):
        return det_int(A)
    M = [list(r) for r in A]
    d = 1
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return 0 * M[0][0]
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        piv = M[c][c]
        d = d * piv
        for r in range(c + 1, n):
            f = M[r][c]
            if f:
                f = f / piv
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return d


def det_int(A: Matrix) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# subspaces and quotients


class Subspace:
    """A subspace of k^n stored by its RREF basis.

    Coordinates of a member vector are its entries at the pivot columns,
    and the non-pivot columns index a canonical complement used for
    quotients.
    """

    def __init__(self, vectors, n: int):
        self.n = n
        self._E = vectors if isinstance(vectors, Echelon) else Echelon.from_vectors(vectors, n)
        self.basis = self._E.basis()
        self.pivots = self._E.pivots
        self._free = self._E.free_columns()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.n - self.dim

    def contains(self, v) -> bool:
        return self._E.contains(v)

    def coordinates(self, v) -> list:
        return self._E.coordinates(v)

    def basis_matrix(self) -> Matrix:
        """n x dim matrix whose columns are the basis vectors."""
        return from_columns(self.basis, self.n)

    def coordinate_matrix(self, M: Matrix) -> Matrix:
        """Coordinates of the columns of ``M`` (which must lie in the subspace)."""
        cols = [self.coordinates(column(M, j)) for j in range(len(M[0]) if M else 0)]
        return from_columns(cols, self.dim)

    def quotient_coordinates(self, v) -> list:
        r = self._E.reduce(v)
        return [r.get(j, 0) for j in self._free]

    def quotient_matrix(self, one=1) -> Matrix:
        """codim x n matrix of the canonical projection k^n -> k^n / W."""
        cols = []
        for j in range(self.n):
            if j in self._E.rows:
                row = self._E.rows[j]
                cols.append([-row.get(f, 0) for f in self._free])
            else:
                cols.append([one if f == j else 0 for f in self._free])
        return from_columns(cols, len(self._free))

    def section_matrix(self, one=1) -> Matrix:
        """n x codim matrix sending a quotient coordinate to its standard lift."""
        return from_columns([[one if i == f else 0 for i in range(self.n)] for f in self._free], self.n)

    def restrict(self, T: Matrix) -> Matrix:
        """Matrix of an operator preserving the subspace, in subspace coordinates."""
        return self.coordinate_matrix(mat_mul(T, self.basis_matrix(), cols=self.dim))

    def induced(self, T: Matrix) -> Matrix:
        """Matrix of the operator induced on k^n / W."""
        Q = self.quotient_matrix()
        return mat_mul(mat_mul(Q, T), self.section_matrix(), cols=self.codim)


def column_space(A: Matrix, rows: int) -> Subspace:
    return Subspace(transpose(A) if A and A[0] else [], rows)


def null_space(A: Matrix, cols: int) -> Subspace:
    return Subspace(kernel(A, cols), cols)


# ---------------------------------------------------------------------------
# integer matrices


def is_unimodular(P: Matrix) -> bool:
    if len(P) != (len(P[0]) if P else 0):
        raise DimensionMismatch("unimodularity needs a square matrix")
    return det_int(P) in (1, -1)


def int_inverse(P: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    inv = inverse([[Fraction(x) for x in row] for row in P])
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValidationError("matrix is not invertible over the integers")
        out.append([int(x) for x in row])
    return out


def smith_normal_form(C: Matrix):
    """Return ``(U, D, V)`` with ``U C V = D`` diagonal, d1 | d2 | ..., U and V unimodular."""
    m = len(C)
    n = len(C[0]) if C else 0
    D = [list(r) for r in C]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def smith_diagonal(C: Matrix) -> list[int]:
    _, D, _ = smith_normal_form(C)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


# ---------------------------------------------------------------------------
# characteristic polynomials and eigenvalues


def charpoly(A: Matrix) -> list:
    """Coefficients [c_0, ..., c_n] (c_n = 1) of det(x I - A), Faddeev-LeVerrier.

    Needs characteristic zero (divides by 1..n).
    """
    n = len(A)
    if n == 0:
        return [1]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = zeros(n, n)
    I = identity(n)
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = mat_add(mat_mul(A, Mk, cols=n), mat_scale(c, I))
        AM = mat_mul(A, Mk, cols=n)
        tr = sum((AM[i][i] for i in range(n)), 0)
        c = Fraction(-1, k) * tr if not isinstance(tr, ModP) else -tr / k
        coeffs[n - k] = c
    return coeffs


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def rational_roots(coeffs: Sequence) -> list:
    """Distinct rational roots of sum c_k x^k (rational coefficients), sorted."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    roots = set()
    while cs and cs[0] == 0:
        roots.add(Fraction(0))
        cs.pop(0)
    if len(cs) <= 1:
        return sorted(roots)
    den = 1
    for c in cs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if _poly_eval(ints, r) == 0:
                    roots.add(r)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def eigenvalues(A: Matrix, F: Field) -> list:
    """Distinct eigenvalues of ``A`` lying in the field ``F``."""
    n = len(A)
    if n == 0:
        return []
    if F.characteristic == 0:
        return rational_roots(charpoly(A))
    p = F.characteristic
    if p > 5000:
        from .errors import UnsupportedField

        raise UnsupportedField("eigenvalue search over F_p is limited to p <= 5000")
    out = []
    for v in range(p):
        lam = F(v)
        if det([[A[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]) == 0:
            out.append(lam)
    return out


def mat_pow(A: Matrix, k: int) -> Matrix:
    n = len(A)
    R = identity(n)
    B = A
    while k:
        if k & 1:
            R = mat_mul(R, B, cols=n)
        B = mat_mul(B, B, cols=n)
        k >>= 1
    return R
