"""Products, coproducts and antipodes checked through matrix representations."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hopftwist.lie import builtin
from hopftwist.uea import UEA

E = lambda i, j, n: sympy.Matrix(n, n, lambda a, b: int((a, b) == (i, j)))

REPS = {
    "sl2": [E(0, 1, 2), sympy.diag(1, -1), E(1, 0, 2)],
    "heisenberg:1": [E(0, 1, 3), E(1, 2, 3), E(0, 2, 3)],
    "affine2": [E(0, 0, 2), E(0, 1, 2)],
}
ORDER = 3
ALGS = {name: UEA(builtin(name), ORDER) for name in REPS}


def q(x):
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def evaluate(u, gens, size):
    """h-coefficients of ρ(u) for the representation x_i -> gens[i]."""
    out = [sympy.zeros(size, size) for _ in range(u.order + 1)]
    for (mono,), coeffs in u.terms.items():
        m = sympy.eye(size)
        for i, k in enumerate(mono):
            m = m * gens[i] ** k
        for p, c in enumerate(coeffs):
            if c:
                out[p] += q(c) * m
    return out


def evaluate2(t, gens, size):
    out = [sympy.zeros(size * size, size * size) for _ in range(t.order + 1)]
    for (m1, m2), coeffs in t.terms.items():
        a, b = sympy.eye(size), sympy.eye(size)
        for i, k in enumerate(m1):
            a = a * gens[i] ** k
        for i, k in enumerate(m2):
            b = b * gens[i] ** k
        kron = sympy.kronecker_product(a, b)
        for p, c in enumerate(coeffs):
            if c:
                out[p] += q(c) * kron
    return out


@st.composite
def elements(draw, name):
    U = ALGS[name]
    n = U.n
    u = U.zero(1)
    for _ in range(draw(st.integers(1, 3))):
        mono = tuple(draw(st.integers(0, 2)) for _ in range(n))
        c = draw(st.fractions(min_value=-3, max_value=3, max_denominator=3))
        p = draw(st.integers(0, ORDER))
        u = u + U.mono(mono).scale(c).shift(p)
    return u


names = st.sampled_from(sorted(REPS))


@given(names.flatmap(lambda s: st.tuples(st.just(s), elements(s), elements(s))))
def test_product_is_represented(data):
    name, u, v = data
    gens, size = REPS[name], REPS[name][0].shape[0]
    ru, rv, ruv = evaluate(u, gens, size), evaluate(v, gens, size), evaluate(u * v, gens, size)
    for p in range(ORDER + 1):
        assert ruv[p] == sum((ru[i] * rv[p - i] for i in range(p + 1)), sympy.zeros(size, size))


@given(names.flatmap(lambda s: st.tuples(st.just(s), elements(s))))
def test_coproduct_is_tensor_representation(data):
    name, u = data
    gens, size = REPS[name], REPS[name][0].shape[0]
    I = sympy.eye(size)
    tensor_gens = [sympy.kronecker_product(g, I) + sympy.kronecker_product(I, g) for g in gens]
    assert evaluate2(u.delta_at(0), gens, size) == evaluate(u, tensor_gens, size * size)


@given(names.flatmap(lambda s: st.tuples(st.just(s), elements(s))))
def test_antipode_is_dual_representation(data):
    name, u = data
    gens, size = REPS[name], REPS[name][0].shape[0]
    dual = [-g.T for g in gens]
    assert [m.T for m in evaluate(u, dual, size)] == evaluate(u.antipode(), gens, size)


@pytest.mark.parametrize("name", ["sl2", "heisenberg:2", "meta-abelian:1", "affine2"])
def test_generators_satisfy_brackets(name):
    U = UEA(builtin(name), 2)
    g = U.lie
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = U.gen(i) * U.gen(j) - U.gen(j) * U.gen(i)
            assert lhs == U.from_vector(g.bracket(g.unit_vector(i), g.unit_vector(j)))


@given(names.flatmap(lambda s: st.tuples(st.just(s), elements(s), elements(s), elements(s))))
def test_associativity_and_hopf_axioms(data):
    name, u, v, w = data
    U = ALGS[name]
    assert (u * v) * w == u * (v * w)
    assert (u * v).delta_at(0) == u.delta_at(0) * v.delta_at(0)
    d = u.delta_at(0)
    assert d.delta_at(0) == d.delta_at(1)
    assert d.counit_at(0) == u and d.counit_at(1) == u
    assert d.antipode_at(0).mu() == U.scalar(u.counit())


def test_sl2_casimir_is_central():
    U = UEA(builtin("sl2"), 1)
    e, h, f = U.gen(0), U.gen(1), U.gen(2)
    cas = e * f + f * e + (h * h).scale(Fraction(1, 2))
    assert U.commutes_with_generators(cas)
    centre = U.center_basis(2)
    assert len(centre) == 2              # 1 and the Casimir
    assert all(U.commutes_with_generators(z) for z in centre)


def test_exp_log_inverse_in_tensor_square():
    U = UEA(builtin("heisenberg:1"), 4)
    X = U.gen(0).tensor(U.gen(2)) - U.gen(2).tensor(U.gen(0))
    F = X.shift(1).exp()
    assert F.log() == X.shift(1)
    assert F * F.inverse() == U.unit(2)
