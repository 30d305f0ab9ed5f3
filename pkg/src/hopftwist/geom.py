"""Supports of skew 2-tensors, their symplectic forms, and the 3-vector construction.

A skew tensor X = sum_ij M[i][j] x_i⊗x_j is stored as its matrix M.  Its
support a(X) is the span of the contractions (l⊗I)(X), i.e. the row space of
M, and b((l⊗I)X, (l'⊗I)X) = (l⊗l')(X).

With X = sum_pq N[p][q] u_p⊗u_q in an RREF basis u of a(X), the form matrix
in that basis is B = −N^{-1}; equivalently N·B = −I.  Contracting the first
factor instead gives the positive identity (b(·,w)⊗I)(X) = w.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .errors import (FormNotInvariant, LagrangianNotFound, NotAbelianIdeal, NotInvariant,
                     VerificationError)
from .lie import (LieAlgebraData, SkewForm, Subspace, bracket_space, is_abelian_ideal,
                  is_invariant_2tensor, is_skew, is_subalgebra, normalizer)
from .scalars import Rational, format_rational

ZERO = Rational(0)
ONE = Rational(1)


@dataclass
class SupportData:
    X: la.Matrix
    space: Subspace
    form: SkewForm

    def to_json(self) -> dict:
        fmt = lambda m: [[format_rational(v) for v in r] for r in m]
        return {"X": fmt(self.X),
                "basis": fmt([list(r) for r in self.space.basis]),
                "form": fmt(self.form.matrix)}

    def __eq__(self, other):
        return (isinstance(other, SupportData) and self.X == other.X
                and self.space == other.space and self.form.matrix == other.form.matrix)


def _basis_matrix(s: Subspace) -> la.Matrix:
    return [list(r) for r in s.basis]


def coefficient_matrix_in(s: Subspace, m: la.Matrix) -> la.Matrix:
    """N with M = U^T N U for the RREF basis rows U of s (M must live in s⊗s)."""
    d = s.dim
    rows = [s.coordinates(r) for r in m]         # M = C U with C = U^T N
    ct = la.transpose(rows, d)                   # C^T = N^T U
    nt = [s.coordinates(r) for r in ct]
    return la.transpose(nt, d)


def support(X: la.Matrix, check_casimir: bool = True) -> SupportData:
    if not is_skew(X):
        raise ValueError("support needs a skew 2-tensor")
    n = len(X)
    space = Subspace(n, X)
    d = space.dim
    if d == 0:
        return SupportData([list(r) for r in X], space, SkewForm(space, [], symplectic=True))
    N = coefficient_matrix_in(space, X)
    B = [[-v for v in r] for r in la.inverse(N)]
    form = SkewForm(space, B, symplectic=True)
    sd = SupportData([list(r) for r in X], space, form)
    if check_casimir and la.matmul(N, B) != [[-v for v in r] for r in la.identity(d)]:
        raise VerificationError("Casimir identity N·B = −I failed")
    return sd


def casimir_matrix(space: Subspace, form: SkewForm) -> la.Matrix:
    """The skew tensor whose support data is (space, form)."""
    d = space.dim
    n = space.n
    if d == 0:
        return la.zeros(n, n)
    N = [[-v for v in r] for r in la.inverse(form.matrix)]
    U = _basis_matrix(space)
    return la.matmul(la.matmul(la.transpose(U, n), N), U)


def casimir_identity_holds(sd: SupportData) -> bool:
    d = sd.space.dim
    if d == 0:
        return True
    N = coefficient_matrix_in(sd.space, sd.X)
    return la.matmul(N, sd.form.matrix) == [[-v for v in r] for r in la.identity(d)]


def commutator_13_23(g: LieAlgebraData, X: la.Matrix):
    """[X_13, X_23] in U(g)^{⊗3}, computed in the enveloping algebra."""
    from .uea import UEA
    alg = UEA(g, order=0, validate=False)
    T = alg.from_bivector(X)
    x13 = T.embed((0, 2), 3)
    x23 = T.embed((1, 2), 3)
    return x13 * x23 - x23 * x13


def classify_invariant(g: LieAlgebraData, X: la.Matrix) -> tuple[Subspace, SkewForm]:
    if not is_invariant_2tensor(g, X):
        raise NotInvariant("tensor is not g-invariant")
    sd = support(X)
    if not is_abelian_ideal(g, sd.space):
        raise VerificationError("support of an invariant tensor is not an abelian ideal")
    if not sd.form.is_invariant(g):
        raise VerificationError("support form of an invariant tensor is not invariant")
    if commutator_13_23(g, X):
        raise VerificationError("[X_13, X_23] != 0")
    return sd.space, sd.form


def casimir_of(g: LieAlgebraData, space: Subspace, form: SkewForm) -> la.Matrix:
    if not is_abelian_ideal(g, space):
        raise NotAbelianIdeal("subspace is not an abelian ideal")
    if not form.is_invariant(g):
        raise FormNotInvariant("form is not g-invariant")
    if not form.is_nondegenerate():
        raise FormNotInvariant("form is degenerate")
    X = casimir_matrix(space, form)
    if not is_invariant_2tensor(g, X):
        raise VerificationError("Casimir element is not invariant")
    return X


# -- addition ---------------------------------------------------------------------

@dataclass
class GeometricSum:
    result: SupportData
    perp_dim: int
    kernel_dim: int
    agrees_with_direct: bool


def geometric_add(s1: SupportData, s2: SupportData, check: bool = True) -> GeometricSum:
    """Support data of X1 + X2 built from (a1, b1), (a2, b2) alone.

    ⊥ = {(u1, u2) in a1⊕a2 : b1(u1, x) = b2(u2, x) for x in a1∩a2}; the support
    of the sum is the image of ⊥ under (u1, u2) ↦ u1 + u2, and the form is
    b1(u1, u1') + b2(u2, u2') on lifts.  The kernel of the sum map on ⊥ is
    {(w, −w) : w in a1∩a2, (b1 + b2)(w, ·) = 0 on a1∩a2}.
    """
    a1, a2 = s1.space, s2.space
    n = a1.n
    d1, d2 = a1.dim, a2.dim
    inter = a1 & a2
    U1, U2 = _basis_matrix(a1), _basis_matrix(a2)
    eqs = []
    for x in inter.basis:
        c1 = a1.coordinates(x)
        c2 = a2.coordinates(x)
        row1 = la.matvec(s1.form.matrix, c1)    # y -> b1(U1^T y, x) = y·(B1 c1)
        row2 = la.matvec(s2.form.matrix, c2)
        eqs.append(row1 + [-v for v in row2])
    perp = la.nullspace(eqs, d1 + d2) if eqs else la.identity(d1 + d2)
    images = [la.vecmat(v[:d1], U1) if d1 else [ZERO] * n for v in perp]
    images = [[a + b for a, b in zip(im, la.vecmat(v[d1:], U2) if d2 else [ZERO] * n)]
              for im, v in zip(images, perp)]
    space = Subspace(n, images)
    # kernel K of the sum map restricted to ⊥
    kernel_dim = len(perp) - space.dim
    if inter.dim:
        # w in a1∩a2 with (b1 + b2)(w, y) = 0 for all y in a1∩a2
        ib = [list(r) for r in inter.basis]
        mat = [[s1.form.value(u, v) + s2.form.value(u, v) for v in ib] for u in ib]
        Kw = la.nullspace(la.transpose(mat, len(ib)), len(ib))
        if len(Kw) != kernel_dim:
            raise VerificationError("kernel of the sum map does not match ker(b1 + b2)")
    elif kernel_dim:
        raise VerificationError("sum map has a kernel with trivial intersection")
    # form on the image via lifts
    d = space.dim
    lifts = []
    P = la.transpose(perp, d1 + d2) if perp else []
    for u in space.basis:
        # solve sum(lift) = u with lift in span(perp)
        sums = la.transpose(images, n) if images else []
        coef = la.solve(sums, list(u), len(perp))
        if coef is None:
            raise VerificationError("basis vector of the sum support has no lift")
        lifts.append(la.matvec(P, coef) if perp else [])
    B1, B2 = s1.form.matrix, s2.form.matrix
    form_m = la.zeros(d, d)
    for p in range(d):
        for q in range(d):
            y, z = lifts[p], lifts[q]
            v1 = sum((y[i] * B1[i][j] * z[j] for i in range(d1) for j in range(d1)
                      if y[i] and z[j]), ZERO)
            v2 = sum((y[d1 + i] * B2[i][j] * z[d1 + j] for i in range(d2) for j in range(d2)
                      if y[d1 + i] and z[d1 + j]), ZERO)
            form_m[p][q] = v1 + v2
    X = [[a + b for a, b in zip(r, s)] for r, s in zip(s1.X, s2.X)]
    result = SupportData(X, space, SkewForm(space, form_m, symplectic=True))
    agrees = True
    if check:
        direct = support(X)
        agrees = direct.space == space and direct.form.matrix == form_m
    return GeometricSum(result, len(perp), kernel_dim, agrees)


# -- the 3-vector construction ------------------------------------------------------

@dataclass
class ThreeVector:
    bspace: Subspace
    c: list                      # c[s][t][r] in the RREF basis of b
    a: object                    # central UEAElem
    checks: dict


def _dual_lift(form: SkewForm, bspace: Subspace) -> list[list[Rational]]:
    """x_s in the form's space with b(x_s, β_r) = δ_sr for the basis β of b."""
    a = form.space
    da = a.dim
    coords_b = [a.coordinates(list(beta)) for beta in bspace.basis]
    # b(U^T y, β_r) = y · (B c_r)
    cols = [la.matvec(form.matrix, cr) for cr in coords_b]   # each length da
    A = [list(c) for c in cols]                                # rows: equations r
    out = []
    for s in range(bspace.dim):
        rhs = [ONE if r == s else ZERO for r in range(bspace.dim)]
        y = la.solve(A, rhs, da)
        if y is None:
            raise VerificationError("form restricted to [a1, a2] has no dual lift")
        out.append(a.vector(y))
    return out


def three_vector(alg, X1: la.Matrix, X2: la.Matrix, lagrangian_check: bool = True) -> ThreeVector:
    """Symmetric c in b^{⊗3}, b = [a1, a2], and a = −(1/3) sum c_str β_s β_t β_r.

    x1_s, x2_t are lifts of the dual basis of b through b1, b2 and c_str is the
    β_r-coordinate of [x1_s, x2_t].  The factor −1/3 makes ∂a = [X1, X2] in
    the convention ∂a = a⊗1 + 1⊗a − Δ(a).
    """
    from .cochain import differential

    g = alg.lie
    for X in (X1, X2):
        if not is_invariant_2tensor(g, X):
            raise NotInvariant("three_vector needs invariant tensors")
    s1, s2 = support(X1), support(X2)
    a1, a2 = s1.space, s2.space
    bsp = bracket_space(g, a1, a2)
    d = bsp.dim
    checks = {}
    # commutation property: [b^⊥ in a1, a2] = [a1, b^⊥ in a2] = 0
    perp1 = _form_perp(s1.form, bsp)
    perp2 = _form_perp(s2.form, bsp)
    checks["commutation"] = (not any(any(g.bracket(u, v)) for u in perp1 for v in a2.basis)
                             and not any(any(g.bracket(u, v)) for u in a1.basis for v in perp2))
    if d == 0:
        c = []
        a = alg.zero(1)
    else:
        x1 = _dual_lift(s1.form, bsp)
        x2 = _dual_lift(s2.form, bsp)
        c = [[bsp.coordinates(g.bracket(x1[s], x2[t])) for t in range(d)] for s in range(d)]
        a = alg.zero(1)
        betas = [alg.from_vector(list(b)) for b in bsp.basis]
        for s in range(d):
            for t in range(d):
                for r in range(d):
                    if c[s][t][r]:
                        a = a + (betas[s] * betas[t] * betas[r]).scale(c[s][t][r])
        a = a.scale(Rational(-1, 3))
    checks["symmetric"] = all(c[s][t][r] == c[t][s][r] == c[r][t][s] == c[s][r][t]
                              for s in range(d) for t in range(d) for r in range(d))
    if not checks["commutation"]:
        raise VerificationError("commutation property failed")
    if not checks["symmetric"]:
        raise VerificationError("3-vector is not symmetric")
    T1, T2 = alg.from_bivector(X1), alg.from_bivector(X2)
    comm = T1 * T2 - T2 * T1
    checks["coboundary"] = differential(a) == comm
    checks["central"] = alg.commutes_with_generators(a)
    if lagrangian_check:
        checks["lagrangian_agrees"] = three_vector_lagrangian(alg, X1, X2) == a
    if not (checks["coboundary"] and checks["central"]):
        raise VerificationError(f"3-vector construction failed: {checks}")
    return ThreeVector(bsp, c, a, checks)


def _form_perp(form: SkewForm, sub: Subspace) -> list[list[Rational]]:
    """{u in form.space : b(u, x) = 0 for x in sub}."""
    a = form.space
    eqs = [la.matvec(form.matrix, a.coordinates(list(x))) for x in sub.basis]
    ys = la.nullspace(eqs, a.dim) if eqs else la.identity(a.dim)
    return [a.vector(y) for y in ys]


def lagrangian_containing(form: SkewForm, iso: Subspace) -> Subspace:
    """Greedy extension of an isotropic subspace to a Lagrangian, by basis order."""
    a = form.space
    n = a.n
    if any(form.value(list(u), list(v)) for u in iso.basis for v in iso.basis):
        raise LagrangianNotFound("starting subspace is not isotropic")
    cur = iso
    target = a.dim // 2
    for cand in a.basis:
        if cur.dim == target:
            break
        cand = list(cand)
        if cur.contains(cand):
            continue
        if all(not form.value(cand, list(u)) for u in cur.basis):
            cur = cur + Subspace(n, [cand])
    if cur.dim < target:
        # fill from the orthogonal complement of cur inside a
        while cur.dim < target:
            perp = _form_perp(form, cur)
            new = next((v for v in perp if not cur.contains(v)), None)
            if new is None:
                raise LagrangianNotFound("could not extend to a Lagrangian")
            cur = cur + Subspace(n, [new])
    return cur


def three_vector_lagrangian(alg, X1: la.Matrix, X2: la.Matrix):
    """a = −(1/3) sum_ij e_i f_j [e^i, f^j] with Lagrangian bases e of L1 ⊂ a1, f of L2 ⊂ a2.

    e^i are dual partners: b1(e_i, e^j) = δ_ij and likewise for f.  Both
    Lagrangians contain b = [a1, a2], which is isotropic for b1 and b2.
    """
    g = alg.lie
    s1, s2 = support(X1), support(X2)
    bsp = bracket_space(g, s1.space, s2.space)
    total = alg.zero(1)
    if bsp.dim == 0:
        return total
    parts = []
    for sd in (s1, s2):
        L = lagrangian_containing(sd.form, bsp)
        # order the Lagrangian basis so that the first vectors span b
        basis = [list(b) for b in bsp.basis]
        for v in L.basis:
            if not Subspace(L.n, basis).contains(list(v)):
                basis.append(list(v))
        duals = _duals(sd.form, basis)
        parts.append((basis, duals))
    (e, eu), (f, fu) = parts
    for i in range(len(e)):
        for j in range(len(f)):
            br = g.bracket(eu[i], fu[j])
            if any(br):
                total = total + alg.from_vector(e[i]) * alg.from_vector(f[j]) * alg.from_vector(br)
    return total.scale(Rational(-1, 3))


def _duals(form: SkewForm, basis: list[list[Rational]]) -> list[list[Rational]]:
    """Vectors e^j in the form's space with b(e_i, e^j) = δ_ij."""
    a = form.space
    k = len(basis)
    A = [la.vecmat(a.coordinates(e), form.matrix) for e in basis]   # y -> b(e_i, U^T y)
    out = []
    for j in range(k):
        rhs = [ONE if i == j else ZERO for i in range(k)]
        y = la.solve(A, rhs, a.dim)
        if y is None:
            raise LagrangianNotFound("no dual partner")
        out.append(a.vector(y))
    return out


# -- general CYBE solutions ---------------------------------------------------

def form_is_lie_cocycle(g: LieAlgebraData, sd: SupportData) -> bool:
    """b([x,y],z) + b([y,z],x) + b([z,x],y) = 0 on the support."""
    B = [list(r) for r in sd.space.basis]
    f = sd.form
    for x in B:
        for y in B:
            for z in B:
                tot = ZERO
                for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
                    br = g.bracket(u, v)
                    if not sd.space.contains(br):
                        return False
                    tot += f.value(br, w)
                if tot:
                    return False
    return True


def support_is_subalgebra(g: LieAlgebraData, sd: SupportData) -> bool:
    return is_subalgebra(g, sd.space)


def form_stabilizer(g: LieAlgebraData, sd: SupportData) -> Subspace:
    """{x in N_g(s) : b([x,u],v) + b(u,[x,v]) = 0 for u, v in s}."""
    norm = normalizer(g, sd.space)
    n = g.dim
    dn = norm.dim
    B = [list(r) for r in sd.space.basis]
    eqs = []
    for u in B:
        for v in B:
            row = []
            for y in norm.basis:
                y = list(y)
                row.append(sd.form.value(g.bracket(y, u), v) + sd.form.value(u, g.bracket(y, v)))
            eqs.append(row)
    ks = la.nullspace(eqs, dn) if eqs else la.identity(dn)
    return Subspace(n, [norm.vector(k) for k in ks])
