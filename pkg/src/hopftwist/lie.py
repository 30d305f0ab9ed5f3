"""Finite-dimensional Lie algebras over Q given by structure constants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg as la
from .errors import ConfigurationError, DomainError, FormNotInvariant
from .scalars import Rational, as_rational, format_rational

ZERO = Rational(0)


class LieAlgebraData:
    """Lie algebra with basis x_0..x_{n-1} and [x_i, x_j] = sum_k c[i][j][k] x_k.

    ``brackets`` maps ordered pairs (i, j) to sparse dicts {k: coefficient}.
    Nothing is completed or checked here; use :func:`validate_lie` (or the
    ``from_*`` constructors, which complete antisymmetrically).
    """

    def __init__(self, dim: int, basis_names: Sequence[str] | None = None,
                 brackets: dict | None = None, name: str = ""):
        if dim < 0:
            raise DomainError("dimension must be non-negative")
        self.dim = dim
        self.basis_names = list(basis_names) if basis_names else [f"x{i}" for i in range(dim)]
        if len(self.basis_names) != dim:
            raise DomainError("need one basis name per dimension")
        self.name = name
        self._br: dict[tuple[int, int], dict[int, Rational]] = {}
        for (i, j), vec in (brackets or {}).items():
            clean = {k: as_rational(v) for k, v in vec.items() if as_rational(v)}
            if clean:
                self._br[(i, j)] = clean
        self._ad_cache: dict[int, la.Matrix] = {}

    # -- basic access ----------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict[int, Rational]:
        return self._br.get((i, j), {})

    def c(self, i: int, j: int, k: int) -> Rational:
        return self._br.get((i, j), {}).get(k, ZERO)

    def structure_constants(self) -> list:
        n = self.dim
        return [[[self.c(i, j, k) for k in range(n)] for j in range(n)] for i in range(n)]

    def bracket(self, u: Sequence[Rational], v: Sequence[Rational]) -> list[Rational]:
        out = [ZERO] * self.dim
        for (i, j), vec in self._br.items():
            a, b = u[i], v[j]
            if a and b:
                s = a * b
                for k, ck in vec.items():
                    out[k] += s * ck
        return out

    def ad(self, i: int) -> la.Matrix:
        """Matrix of ad_{x_i}: entry [k][j] is the x_k-coefficient of [x_i, x_j]."""
        if i not in self._ad_cache:
            m = la.zeros(self.dim, self.dim)
            for j in range(self.dim):
                for k, ck in self.bracket_basis(i, j).items():
                    m[k][j] = ck
            self._ad_cache[i] = m
        return self._ad_cache[i]

    def ad_vec(self, u: Sequence[Rational]) -> la.Matrix:
        m = la.zeros(self.dim, self.dim)
        for i, a in enumerate(u):
            if a:
                for k, row in enumerate(self.ad(i)):
                    for j, x in enumerate(row):
                        if x:
                            m[k][j] += a * x
        return m

    def unit_vector(self, i: int) -> list[Rational]:
        v = [ZERO] * self.dim
        v[i] = Rational(1)
        return v

    def is_abelian(self) -> bool:
        return not self._br

    def __repr__(self):
        label = self.name or "LieAlgebraData"
        return f"<{label} dim={self.dim}>"

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        rows = []
        for (i, j), vec in sorted(self._br.items()):
            if i < j:
                rows.append([i, j, [[k, format_rational(v)] for k, v in sorted(vec.items())]])
        return {"dim": self.dim, "basis": self.basis_names, "brackets": rows}

    @classmethod
    def from_json(cls, data: dict | str, name: str = "") -> "LieAlgebraData":
        """Parse the JSON schema, complete antisymmetrically and validate."""
        if isinstance(data, str):
            data = json.loads(data)
        try:
            dim = int(data["dim"])
            names = data.get("basis") or [f"x{i}" for i in range(dim)]
            raw = data.get("brackets", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigurationError(f"malformed Lie algebra JSON: {exc}") from exc
        given: dict[tuple[int, int], dict[int, Rational]] = {}
        for entry in raw:
            i, j, terms = entry
            if not (0 <= i < dim and 0 <= j < dim):
                raise ConfigurationError(f"bracket index out of range: {(i, j)}")
            vec = given.setdefault((i, j), {})
            for k, coef in terms:
                if not 0 <= k < dim:
                    raise ConfigurationError(f"bracket target out of range: {k}")
                vec[k] = vec.get(k, ZERO) + as_rational(coef)
        full: dict[tuple[int, int], dict[int, Rational]] = {}
        for (i, j), vec in given.items():
            if (j, i) in given and (i, j) > (j, i):
                continue  # both orientations supplied; the check below compares them
            full[(i, j)] = dict(vec)
            if (j, i) in given:
                full[(j, i)] = dict(given[(j, i)])
            else:
                full[(j, i)] = {k: -v for k, v in vec.items()}
        g = cls(dim, names, full, name=name)
        report = validate_lie(g)
        if not report.ok:
            raise DomainError(f"invalid Lie algebra: {report}")
        return g

    @classmethod
    def from_structure_constants(cls, c, names=None, name: str = "") -> "LieAlgebraData":
        """Build from a dense c[i][j][k] exactly as given (no completion)."""
        n = len(c)
        br = {}
        for i in range(n):
            for j in range(n):
                vec = {k: as_rational(c[i][j][k]) for k in range(n) if c[i][j][k]}
                if vec:
                    br[(i, j)] = vec
        return cls(n, names, br, name=name)


def _antisymmetric(dim: int, table: dict[tuple[int, int], dict[int, Rational]]) -> dict:
    full = {}
    for (i, j), vec in table.items():
        full[(i, j)] = dict(vec)
        full[(j, i)] = {k: -v for k, v in vec.items()}
    return full


# -- validation ------------------------------------------------------------

@dataclass
class LieReport:
    ok: bool
    kind: str = ""
    where: tuple = ()
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"{self.kind} violation at {self.where}: {self.detail}"


def validate_lie(g: LieAlgebraData) -> LieReport:
    """Check antisymmetry and the Jacobi identity on every basis pair/triple.

    Indices in the report are 0-based positions in the basis.
    """
    n = g.dim
    for i in range(n):
        if g.bracket_basis(i, i):
            return LieReport(False, "antisymmetry", (i, i), "[x,x] != 0")
        for j in range(i + 1, n):
            a, b = g.bracket_basis(i, j), g.bracket_basis(j, i)
            for k in set(a) | set(b):
                if a.get(k, ZERO) + b.get(k, ZERO):
                    return LieReport(False, "antisymmetry", (i, j),
                                     f"component {k} of [x_i,x_j]+[x_j,x_i] is nonzero")
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = g.unit_vector(i), g.unit_vector(j), g.unit_vector(k)
        t1 = g.bracket(ei, g.bracket(ej, ek))
        t2 = g.bracket(ej, g.bracket(ek, ei))
        t3 = g.bracket(ek, g.bracket(ei, ej))
        if any(a + b + c for a, b, c in zip(t1, t2, t3)):
            return LieReport(False, "jacobi", (i, j, k), "cyclic sum is nonzero")
    return LieReport(True)


# -- subspaces -------------------------------------------------------------

class Subspace:
    """Subspace of Q^n stored as a reduced row echelon basis."""

    __slots__ = ("n", "basis", "pivots")

    def __init__(self, n: int, vectors: Iterable[Sequence] = ()):
        rows = [list(map(as_rational, v)) for v in vectors]
        for r in rows:
            if len(r) != n:
                raise DomainError("vector length does not match ambient dimension")
        red, piv = la.rref(rows, n) if rows else ([], [])
        self.n = n
        self.basis = [tuple(r) for r in red]
        self.pivots = piv

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, la.identity(n))

    @classmethod
    def span_of_basis(cls, n: int, indices: Iterable[int]) -> "Subspace":
        rows = []
        for i in indices:
            v = [ZERO] * n
            v[i] = Rational(1)
            rows.append(v)
        return cls(n, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Rational]) -> bool:
        return la.in_span([list(r) for r in self.basis], self.pivots, v)

    def coordinates(self, v: Sequence[Rational]) -> list[Rational]:
        c = la.coordinates([list(r) for r in self.basis], self.pivots, v)
        if c is None:
            raise DomainError("vector is not in the subspace")
        return c

    def vector(self, coords: Sequence[Rational]) -> list[Rational]:
        out = [ZERO] * self.n
        for c, row in zip(coords, self.basis):
            if c:
                out = [x + c * y for x, y in zip(out, row)]
        return out

    def annihilator(self) -> list[list[Rational]]:
        return la.nullspace([list(r) for r in self.basis], self.n)

    def __add__(self, other: "Subspace") -> "Subspace":
        _same(self, other)
        return Subspace(self.n, list(self.basis) + list(other.basis))

    def __and__(self, other: "Subspace") -> "Subspace":
        _same(self, other)
        eqs = self.annihilator() + other.annihilator()
        return Subspace(self.n, la.nullspace(eqs, self.n) if eqs else la.identity(self.n))

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, tuple(self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={[[str(x) for x in r] for r in self.basis]})"


def _same(s: Subspace, t: Subspace):
    if s.n != t.n:
        raise ConfigurationError("subspaces live in different ambient spaces")


def bracket_space(g: LieAlgebraData, s: Subspace, t: Subspace) -> Subspace:
    return Subspace(g.dim, [g.bracket(u, v) for u in s.basis for v in t.basis])


def is_ideal(g: LieAlgebraData, s: Subspace) -> bool:
    return all(s.contains(g.bracket(g.unit_vector(i), u)) for i in range(g.dim) for u in s.basis)


def is_abelian_ideal(g: LieAlgebraData, s: Subspace) -> bool:
    if not is_ideal(g, s):
        return False
    return all(not any(g.bracket(u, v)) for u in s.basis for v in s.basis)


def is_subalgebra(g: LieAlgebraData, s: Subspace) -> bool:
    return all(s.contains(g.bracket(u, v)) for u in s.basis for v in s.basis)


def subspace_ops(g: LieAlgebraData, s: Subspace, t: Subspace | None, op: str):
    if t is not None:
        _same(s, t)
    if op == "sum":
        return s + t
    if op == "intersect":
        return s & t
    if op == "is_abelian_ideal":
        return is_abelian_ideal(g, s)
    raise ValueError(f"unknown op {op!r}")


def center(g: LieAlgebraData) -> Subspace:
    # z is central iff ad(x_i) z = 0 for every i
    eqs = [list(r) for i in range(g.dim) for r in g.ad(i)]
    return Subspace(g.dim, la.nullspace(eqs, g.dim) if eqs else la.identity(g.dim))


def normalizer(g: LieAlgebraData, s: Subspace) -> Subspace:
    """{x in g : [x, s] subset of s}."""
    ann = s.annihilator()
    n = g.dim
    eqs = []
    for u in s.basis:
        # x -> [x, u] is minus ad_u
        adu = g.ad_vec(u)
        for w in ann:
            eqs.append(la.vecmat(w, adu))
    return Subspace(n, la.nullspace(eqs, n) if eqs else la.identity(n))


def centralizer_of_subspace(g: LieAlgebraData, s: Subspace) -> Subspace:
    n = g.dim
    eqs = []
    for u in s.basis:
        eqs.extend(g.ad_vec(u))
    return Subspace(n, la.nullspace(eqs, n) if eqs else la.identity(n))


# -- skew forms and 2-tensors ---------------------------------------------

@dataclass
class SkewForm:
    """Skew bilinear form on a subspace, as a matrix in the subspace basis."""

    space: Subspace
    matrix: la.Matrix
    symplectic: bool = False

    def __post_init__(self):
        m = self.matrix
        d = self.space.dim
        if len(m) != d or any(len(r) != d for r in m):
            raise DomainError("form matrix size does not match subspace dimension")
        for i in range(d):
            for j in range(d):
                if m[i][j] != -m[j][i]:
                    raise DomainError("form matrix is not skew-symmetric")
        if self.symplectic and la.det(m) == 0:
            raise DomainError("form flagged symplectic is degenerate")

    def value(self, u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
        cu = self.space.coordinates(u)
        cv = self.space.coordinates(v)
        return sum((cu[i] * self.matrix[i][j] * cv[j]
                    for i in range(len(cu)) if cu[i]
                    for j in range(len(cv)) if cv[j]), ZERO)

    def is_nondegenerate(self) -> bool:
        return self.space.dim == 0 or la.det(self.matrix) != 0

    def is_invariant(self, g: LieAlgebraData) -> bool:
        """b([x,u],v) + b(u,[x,v]) = 0 for all basis x of g and u, v in the space."""
        for i in range(g.dim):
            ei = g.unit_vector(i)
            for u in self.space.basis:
                xu = g.bracket(ei, u)
                if not self.space.contains(xu):
                    return False
            for u in self.space.basis:
                xu = g.bracket(ei, u)
                for v in self.space.basis:
                    xv = g.bracket(ei, v)
                    if self.value(xu, v) + self.value(u, xv):
                        return False
        return True

    def __eq__(self, other):
        return (isinstance(other, SkewForm) and self.space == other.space
                and self.matrix == other.matrix)


def is_skew(m: la.Matrix) -> bool:
    n = len(m)
    return all(m[i][j] == -m[j][i] for i in range(n) for j in range(n))


def wedge(u: Sequence[Rational], v: Sequence[Rational]) -> la.Matrix:
    """Matrix of u∧v = u⊗v − v⊗u."""
    n = len(u)
    return [[u[i] * v[j] - v[i] * u[j] for j in range(n)] for i in range(n)]


def mat_add(a: la.Matrix, b: la.Matrix) -> la.Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(c, a: la.Matrix) -> la.Matrix:
    c = as_rational(c)
    return [[c * x for x in r] for r in a]


def act_on_2tensor(g: LieAlgebraData, x: Sequence[Rational], m: la.Matrix) -> la.Matrix:
    """(ad_x⊗1 + 1⊗ad_x) applied to the 2-tensor with coefficient matrix m."""
    a = g.ad_vec(x)
    am = la.matmul(a, m)
    ma = la.matmul(m, la.transpose(a))
    return mat_add(am, ma)


def is_invariant_2tensor(g: LieAlgebraData, m: la.Matrix) -> bool:
    for i in range(g.dim):
        if any(any(r) for r in act_on_2tensor(g, g.unit_vector(i), m)):
            return False
    return True


def apply_linear_2tensor(p: la.Matrix, m: la.Matrix) -> la.Matrix:
    """(P⊗P)(X) for the linear map with matrix P (columns are images)."""
    return la.matmul(la.matmul(p, m), la.transpose(p))


def invariant_skew2(g: LieAlgebraData) -> list[la.Matrix]:
    """Basis of (Λ²g)^g, returned as skew coefficient matrices, RREF-reduced."""
    n = g.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if not pairs:
        return []
    index = {p: t for t, p in enumerate(pairs)}
    eqs = []
    for x in range(n):
        a = g.ad(x)
        # For X = sum_{i<j} m_ij (x_i∧x_j): ad_x acts on each wedge factor.
        # Component (k,l), k<l, of the result, as a linear form in the m_ij.
        rows: dict[tuple[int, int], list[Rational]] = {}
        for (i, j), t in index.items():
            # [x, x_i]∧x_j + x_i∧[x, x_j]
            for k in range(n):
                ak = a[k][i]
                if ak:
                    _add_wedge(rows, index, len(pairs), k, j, ak, t)
                ak = a[k][j]
                if ak:
                    _add_wedge(rows, index, len(pairs), i, k, ak, t)
        eqs.extend(rows.values())
    kernel = la.nullspace(eqs, len(pairs)) if eqs else la.identity(len(pairs))
    red, _ = la.rref(kernel, len(pairs)) if kernel else ([], [])
    out = []
    for vec in red:
        m = la.zeros(n, n)
        for (i, j), t in index.items():
            if vec[t]:
                m[i][j] = vec[t]
                m[j][i] = -vec[t]
        out.append(m)
    return out


def _add_wedge(rows, index, npairs, k, l, coef, t):
    if k == l:
        return
    sign = 1
    if k > l:
        k, l, sign = l, k, -1
    row = rows.setdefault((k, l), [ZERO] * npairs)
    row[t] += sign * coef


# -- automorphisms and derivations ----------------------------------------

def apply_linear(p: la.Matrix, v: Sequence[Rational]) -> list[Rational]:
    return la.matvec(p, v)


def is_derivation(g: LieAlgebraData, d: la.Matrix) -> bool:
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            ei, ej = g.unit_vector(i), g.unit_vector(j)
            lhs = la.matvec(d, g.bracket(ei, ej))
            r1 = g.bracket(la.matvec(d, ei), ej)
            r2 = g.bracket(ei, la.matvec(d, ej))
            if any(a != b + c for a, b, c in zip(lhs, r1, r2)):
                return False
    return True


def is_automorphism(g: LieAlgebraData, p: la.Matrix) -> bool:
    """Columns of p are the images of the basis vectors."""
    n = g.dim
    if len(p) != n or (n and la.det(p) == 0):
        return False
    return is_homomorphism(g, p)


def is_homomorphism(g: LieAlgebraData, p: la.Matrix) -> bool:
    n = g.dim
    cols = la.transpose(p, n)
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.matvec(p, g.bracket(g.unit_vector(i), g.unit_vector(j)))
            rhs = g.bracket(cols[i], cols[j])
            if lhs != rhs:
                return False
    return True


# -- constructors ----------------------------------------------------------

def abelian(n: int) -> LieAlgebraData:
    return LieAlgebraData(n, [f"a{i + 1}" for i in range(n)], {}, name=f"abelian({n})")


def affine2() -> LieAlgebraData:
    """The 2-dimensional non-abelian algebra [x, y] = y."""
    return LieAlgebraData(2, ["x", "y"], _antisymmetric(2, {(0, 1): {1: Rational(1)}}),
                          name="affine2")


def sl2() -> LieAlgebraData:
    """sl2 with basis e, h, f: [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    e, h, f = 0, 1, 2
    table = {(h, e): {e: Rational(2)}, (h, f): {f: Rational(-2)}, (e, f): {h: Rational(1)}}
    return LieAlgebraData(3, ["e", "h", "f"], _antisymmetric(3, table), name="sl2")


def heisenberg(m: int) -> tuple[LieAlgebraData, SkewForm]:
    """Heisenberg algebra on e_1..e_m, f_1..f_m, c with [e_i, f_i] = c.

    Also returns the standard symplectic form on V = span(e, f), so that
    [u, v] = b(u, v) c.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    n = 2 * m + 1
    names = [f"e{i + 1}" for i in range(m)] + [f"f{i + 1}" for i in range(m)] + ["c"]
    if m == 1:
        names = ["e", "f", "c"]
    table = {(i, m + i): {2 * m: Rational(1)} for i in range(m)}
    g = LieAlgebraData(n, names, _antisymmetric(n, table), name=f"heisenberg({m})")
    v = Subspace.span_of_basis(n, range(2 * m))
    mat = la.zeros(2 * m, 2 * m)
    for i in range(m):
        mat[i][m + i] = Rational(1)
        mat[m + i][i] = Rational(-1)
    return g, SkewForm(v, mat, symplectic=True)


def is_symmetric3(c, d: int) -> bool:
    for p in range(d):
        for q in range(d):
            for r in range(d):
                v = c[p][q][r]
                if v != c[q][p][r] or v != c[r][q][p] or v != c[p][r][q]:
                    return False
    return True


@dataclass
class MetaAbelian:
    """g(b,c) on b*⊕b*⊕b with the two abelian ideals and their forms."""

    algebra: LieAlgebraData
    b_dim: int
    c: list
    a1: Subspace
    a2: Subspace
    b1: SkewForm
    b2: SkewForm


def meta_abelian(b_dim: int, c) -> MetaAbelian:
    """Build g(b,c); basis L_1..L_d (first b*), M_1..M_d (second b*), X_1..X_d (b).

    [L_p, M_q] = sum_r c[p][q][r] X_r and all other brackets vanish.
    """
    d = b_dim
    c = [[[as_rational(c[p][q][r]) for r in range(d)] for q in range(d)] for p in range(d)]
    if not is_symmetric3(c, d):
        raise DomainError("c must be a fully symmetric 3-tensor")
    n = 3 * d
    table = {}
    for p in range(d):
        for q in range(d):
            vec = {2 * d + r: c[p][q][r] for r in range(d) if c[p][q][r]}
            if vec:
                table[(p, d + q)] = vec
    names = [f"L{p + 1}" for p in range(d)] + [f"M{p + 1}" for p in range(d)] + \
            [f"X{p + 1}" for p in range(d)]
    g = LieAlgebraData(n, names, _antisymmetric(n, table), name=f"meta_abelian({d})")
    a1 = Subspace.span_of_basis(n, list(range(d)) + list(range(2 * d, 3 * d)))
    a2 = Subspace.span_of_basis(n, list(range(d, 3 * d)))
    # b_1((l1,0,x1),(l2,0,x2)) = l1(x2) - l2(x1); coordinates are (l, x)
    mat = la.zeros(2 * d, 2 * d)
    for p in range(d):
        mat[p][d + p] = Rational(1)
        mat[d + p][p] = Rational(-1)
    b1 = SkewForm(a1, mat, symplectic=True)
    b2 = SkewForm(a2, [list(r) for r in mat], symplectic=True)
    report = validate_lie(g)
    if not report.ok:
        raise DomainError(f"g(b,c) failed validation: {report}")
    for s, form in ((a1, b1), (a2, b2)):
        if not is_abelian_ideal(g, s):
            raise DomainError("designated subspace is not an abelian ideal")
        if not form.is_invariant(g):
            raise FormNotInvariant("designated form is not invariant")
    return MetaAbelian(g, d, c, a1, a2, b1, b2)


def builtin(spec: str) -> LieAlgebraData:
    """Named algebras: abelian:N, heisenberg:M, sl2, affine2, meta-abelian:D (c = sum e⊗e⊗e)."""
    name, _, arg = spec.partition(":")
    try:
        if name == "abelian":
            return abelian(int(arg))
        if name == "heisenberg":
            return heisenberg(int(arg or 1))[0]
        if name == "sl2":
            return sl2()
        if name == "affine2":
            return affine2()
        if name in ("meta-abelian", "meta_abelian"):
            d = int(arg or 1)
            c = [[[Rational(int(p == q == r)) for r in range(d)] for q in range(d)] for p in range(d)]
            return meta_abelian(d, c).algebra
    except ValueError as exc:
        raise ConfigurationError(f"bad algebra spec {spec!r}: {exc}") from exc
    raise ConfigurationError(f"unknown algebra {spec!r}")
