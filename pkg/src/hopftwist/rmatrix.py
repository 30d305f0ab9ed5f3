"""Triangular structures, Drinfeld elements and classical limits of twists.

All structures here live over cocommutative bialgebras, so the intertwining
axiom R Δ(x) = Δ^op(x) R is the same as R commuting with Δ(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import Rational
from . import linalg as la
from .algebra import BasisAlgebra, TensorElem, UEAElem, alternation
from .cochain import differential, solve_coboundary
from .errors import CYBEViolation, DomainError, NotInvariant, VerificationError
from .lie import (LieAlgebraData, SkewForm, Subspace, act_on_2tensor, is_invariant_2tensor,
                  is_skew, is_subalgebra)
from .twist import TwistedEndo, cocycle_defect, gauge_twist, verify_twist

ZERO = Rational(0)
ONE = Rational(1)
HALF = Rational(1, 2)

TRIANGULAR_AXIOMS = ("intertwining", "triangle_right", "triangle_left", "normalization",
                     "unitarity", "2-cocycle", "yang_baxter_form")


@dataclass
class TriangularReport:
    ok: bool
    failure: str = ""
    checks: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else f"{self.failure} violation"


def verify_triangular(R: TensorElem) -> TriangularReport:
    """Check every R-matrix axiom; the first failure is reported.

    The 2-cocycle identity is the twist one, (R⊗1)(Δ⊗I)R = (1⊗R)(I⊗Δ)R.
    ``yang_baxter_form`` is R12 R13 R23 = (I⊗Δ)(R)(1⊗R).
    """
    alg = R.alg
    if R.arity != 2:
        return TriangularReport(False, "arity", {})
    R12, R13, R23 = R.embed((0, 1), 3), R.embed((0, 2), 3), R.embed((1, 2), 3)
    tests = {
        "intertwining": lambda: R.is_invariant(),
        "triangle_right": lambda: R.delta_at(1) == R13 * R12,
        "triangle_left": lambda: R.delta_at(0) == R13 * R23,
        "normalization": lambda: (R.counit_at(0) == alg.unit(1) and R.counit_at(1) == alg.unit(1)),
        "unitarity": lambda: R.transpose() * R == alg.unit(2),
        "2-cocycle": lambda: not cocycle_defect(R),
        "yang_baxter_form": lambda: R12 * R13 * R23 == R.delta_at(1) * R23,
    }
    checks = {}
    failure = ""
    for name in TRIANGULAR_AXIOMS:
        checks[name] = bool(tests[name]())
        if not checks[name] and not failure:
            failure = name
    return TriangularReport(not failure, failure, checks)


# -- Drinfeld element -------------------------------------------------------------

@dataclass
class DrinfeldElement:
    u: UEAElem
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _commutes_with_algebra(x: TensorElem) -> bool:
    return all(not (g * x - x * g) for g in x.alg.generators())


def drinfeld_element(R: TensorElem) -> DrinfeldElement:
    """u = μ(I⊗S)(R), with the group-like / central / involution checks."""
    u = R.antipode_at(1).mu()
    alg = R.alg
    checks = {
        "group_like": u.delta_at(0) == u.tensor(u),
        "central": _commutes_with_algebra(u),
        "involution": u * u == alg.unit(1),
    }
    return DrinfeldElement(u, checks)


class GroupAlgebraZ2(BasisAlgebra):
    """k[Z/2] with basis keys 0 (unit) and 1 (the involution u); u is group-like."""

    def __init__(self, order: int = 4):
        self.order = order
        self.one = 0

    def mul_basis(self, a, b):
        return {(0, (a + b) % 2): ONE}

    def coproduct_basis(self, a):
        return {(0, a, a): ONE}

    def counit_basis(self, a):
        return {0: ONE}

    def antipode_basis(self, a):
        return {(0, a): ONE}

    def generator_keys(self):
        return [1]

    def basis_str(self, a):
        return "1" if a == 0 else "u"

    def involution(self) -> UEAElem:
        return self.basis_elem(1)


def r_from_involution(u: UEAElem) -> TensorElem:
    """R_u = ½(1⊗1 + 1⊗u + u⊗1 − u⊗u) for a central group-like involution u."""
    alg = u.alg
    one = alg.unit(1)
    if u.delta_at(0) != u.tensor(u):
        raise DomainError("u is not group-like")
    if not _commutes_with_algebra(u):
        raise DomainError("u is not central")
    if u * u != one:
        raise DomainError("u is not an involution")
    R = one.tensor(one) + one.tensor(u) + u.tensor(one) - u.tensor(u)
    return R.scale(HALF)


def twist_R(t: TwistedEndo, R: TensorElem) -> TensorElem:
    """R^{(f,F)} = F_21 (f⊗f)(R) F^{-1}.

    Only meaningful for invariant F (then f is a bialgebra map and every
    Out-class has such a representative).  With F Δ(f x) = (f⊗f)Δ(x) F a
    non-invariant F must act through ``twist_R_gauged`` instead.
    """
    if not t.F.is_invariant():
        raise DomainError("twist_R needs an invariant twist; use twist_R_gauged")
    return t.F.transpose() * t.apply(R) * t.F.inverse()


def twist_R_gauged(t: TwistedEndo, R: TensorElem) -> TensorElem:
    """F_21^{-1} (f⊗f)(R) F: triangular for every twisted automorphism, gauge invariant."""
    return t.F.transpose().inverse() * t.apply(R) * t.F


# -- classical Yang-Baxter equation -------------------------------------------------

def cybe_tensor(g: LieAlgebraData, r: la.Matrix) -> list:
    """[r12,r13] + [r12,r23] + [r13,r23] as an array t[a][b][c] over g⊗g⊗g."""
    n = g.dim
    t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    nz = [(i, j, r[i][j]) for i in range(n) for j in range(n) if r[i][j]]
    for i, j, x in nz:
        for k, l, y in nz:
            c = x * y
            # [r12, r13]: [x_i, x_k] ⊗ x_j ⊗ x_l
            for m, s in g.bracket_basis(i, k).items():
                t[m][j][l] += c * s
            # [r12, r23]: x_i ⊗ [x_j, x_k] ⊗ x_l
            for m, s in g.bracket_basis(j, k).items():
                t[i][m][l] += c * s
            # [r13, r23]: x_i ⊗ x_k ⊗ [x_j, x_l]
            for m, s in g.bracket_basis(j, l).items():
                t[i][k][m] += c * s
    return t


def cybe_tensor_uea(alg, r: la.Matrix) -> TensorElem:
    """The same tensor computed from commutators in U(g)^{⊗3}."""
    rt = alg.from_bivector(r)
    r12, r13, r23 = rt.embed((0, 1), 3), rt.embed((0, 2), 3), rt.embed((1, 2), 3)
    return r12.commutator(r13) + r12.commutator(r23) + r13.commutator(r23)


def satisfies_cybe(g: LieAlgebraData, r: la.Matrix) -> bool:
    return all(not v for a in cybe_tensor(g, r) for b in a for v in b)


def second_order_term(r_t: TensorElem) -> TensorElem:
    """(1⊗r)(I⊗Δ)(r) − (r⊗1)(Δ⊗I)(r) = r23(r12 + r13) − r12(r13 + r23)."""
    r12, r13, r23 = r_t.embed((0, 1), 3), r_t.embed((0, 2), 3), r_t.embed((1, 2), 3)
    return r23 * (r12 + r13) - r12 * (r13 + r23)


@dataclass
class ClassicalLimit:
    r: la.Matrix
    gauge: UEAElem
    checks: dict


def classical_limit(F: TensorElem, verify: bool = True) -> ClassicalLimit:
    """r = Alt_2(F_1), a solution of the classical Yang-Baxter equation.

    F is gauged so that its h-coefficient is exactly r.  The h² part of the
    twist equation then reads
        (1⊗r)(I⊗Δ)(r) − (r⊗1)(Δ⊗I)(r) = −∂F_2,
    and alternating over three factors kills the right side.  The left side
    alternates to −(2/3)([r12,r13] + [r12,r23] + [r13,r23]), i.e. to 4/6 of
    [r23,r13] + [r23,r12] + [r13,r12].
    """
    alg = F.alg
    if verify:
        report = verify_twist(F)
        if not report:
            raise VerificationError(f"not a twist: {report}")
    F1 = F.h_coeff(1)
    r_t = alternation(F1)
    if not alg.is_lie_tensor(r_t):
        raise VerificationError("Alt_2 of the first-order term is not in Λ²g")
    r = alg.to_bivector(r_t) if r_t else la.zeros(alg.n, alg.n)
    alpha = solve_coboundary(F1)
    gauge = alpha.shift(1).exp()
    G = gauge_twist(gauge, F)
    checks = {"first_order_is_r": G.h_coeff(1) == r_t}
    lhs = second_order_term(r_t)
    checks["second_order_identity"] = lhs == -differential(G.h_coeff(2))
    cyb = cybe_tensor_uea(alg, r)
    checks["alternation_is_cybe"] = alternation(lhs) == cyb.scale(Rational(-2, 3))
    checks["cybe_routes_agree"] = (alg.from_trivector(cybe_tensor(alg.lie, r)) == cyb)
    checks["cybe"] = not cyb
    if not checks["cybe"]:
        raise CYBEViolation("classical limit fails the classical Yang-Baxter equation")
    if not all(checks.values()):
        raise VerificationError(f"classical limit checks failed: {checks}")
    return ClassicalLimit(r, gauge, checks)


def _ad_matrix(g: LieAlgebraData, x) -> la.Matrix:
    n = g.dim
    m = la.zeros(n, n)
    for i, xi in enumerate(x):
        if xi:
            a = g.ad(i)
            for p in range(n):
                for q in range(n):
                    m[p][q] += xi * a[p][q]
    return m


def centralizer(g: LieAlgebraData, r: la.Matrix) -> Subspace:
    """{x in g : (ad x ⊗ 1 + 1 ⊗ ad x)(r) = 0}."""
    n = g.dim
    cols = [act_on_2tensor(g, g.unit_vector(i), r) for i in range(n)]
    eqs = [[cols[i][p][q] for i in range(n)] for p in range(n) for q in range(n)]
    ker = la.nullspace(eqs, n)
    sub = Subspace(n, ker)
    if not is_subalgebra(g, sub):
        raise VerificationError("centralizer is not closed under the bracket")
    return sub


def centralizer_matches_stabilizer(g: LieAlgebraData, r: la.Matrix) -> bool:
    """Compare with the stabiliser of the support form inside the normaliser of the support."""
    from .geom import form_stabilizer, support
    if not any(any(row) for row in r):
        return centralizer(g, r) == Subspace(g.dim, la.identity(g.dim))
    return centralizer(g, r) == form_stabilizer(g, support(r))


def invariant_shift(g: LieAlgebraData, X: la.Matrix, r: la.Matrix) -> la.Matrix:
    """X + r for X in (Λ²g)^g and a CYBE solution r."""
    if not is_skew(X) or not is_invariant_2tensor(g, X):
        raise NotInvariant("shift must be an invariant skew tensor")
    if not is_skew(r) or not satisfies_cybe(g, r):
        raise CYBEViolation("r does not satisfy the classical Yang-Baxter equation")
    s = [[a + b for a, b in zip(p, q)] for p, q in zip(X, r)]
    if not satisfies_cybe(g, s):
        raise CYBEViolation("shifted tensor fails the classical Yang-Baxter equation")
    return s


@dataclass
class HeisenbergSplit:
    Y: la.Matrix
    v: list
    checks: dict


def heisenberg_split(g: LieAlgebraData, form: SkewForm, r: la.Matrix) -> HeisenbergSplit:
    """Write a CYBE solution on H(V,b) as Y + v∧c with Y supported in V.

    The centre c is the last basis vector.  Y must itself solve the CYBE and
    have a b-isotropic support.
    """
    from .geom import support
    n = g.dim
    ci = n - 1
    v = [r[i][ci] for i in range(n - 1)] + [ZERO]
    Y = [row[:] for row in r]
    for i in range(n):
        Y[i][ci] = ZERO
        Y[ci][i] = ZERO
    vc = [[ZERO] * n for _ in range(n)]
    for i in range(n - 1):
        vc[i][ci] = v[i]
        vc[ci][i] = -v[i]
    sd = support(Y)
    iso = all(p[ci] == 0 for p in sd.space.basis) and all(
        form.value(p, q) == 0 for p in sd.space.basis for q in sd.space.basis)
    checks = {
        "reconstructs": [[a + b for a, b in zip(p, q)] for p, q in zip(Y, vc)] == [list(x) for x in r],
        "Y_cybe": satisfies_cybe(g, Y),
        "Y_isotropic_support": iso,
        "vc_invariant": is_invariant_2tensor(g, vc),
    }
    return HeisenbergSplit(Y, v, checks)
