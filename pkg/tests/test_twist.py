from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from hopftwist import linalg as la
from hopftwist.algebra import alternation
from hopftwist.cochain import differential
from hopftwist.errors import InternalNoSolution, NoSolution, NotInvariant
from hopftwist.lie import builtin, heisenberg, invariant_skew2
from hopftwist.samples import (jordanian_twist, product_of_exponentials, random_automorphism,
                               random_central_gauge, random_gauge, random_invariant_skew,
                               random_normal_form)
from hopftwist.twist import (NormalForm, Pi0Class, TwistedEndo, apply_gauge, associator,
                             associator_alternation, associator_by_gauge, coassociativity_defect,
                             compose, gauge_twist, geometric_a, group_law_cocycle,
                             normalize_invariant_twist, pi0_compose, separate, transpose,
                             twisted_coproducts, verify_twist)
from hopftwist.uea import UEA

H1 = UEA(builtin("heisenberg:1"), 4)
SMALL = ["heisenberg:1", "abelian:3", "meta-abelian:1"]
UEAS = {s: UEA(builtin(s), 3) for s in SMALL}
seeds = st.integers(0, 10 ** 6)


def ec():
    return H1.from_bivector(invariant_skew2(H1.lie)[0])


def test_exponential_of_invariant_bivector_is_invariant_twist():
    r = verify_twist(ec().shift(1).exp())
    assert r.ok and r.invariant


def test_corrupted_twist_reports_first_degree():
    F = ec().shift(1).exp()
    e, f = H1.gen(0), H1.gen(1)
    bad = F + (e * e).tensor(f).shift(1)
    assert str(verify_twist(bad)) == "2-cocycle violation at h-degree 1"
    bad2 = F + e.tensor(H1.unit(1)).shift(2)
    assert "normalisation" in str(verify_twist(bad2))


@pytest.mark.parametrize("name,x,y", [("affine2", [1, 0], [0, 1]),
                                      ("sl2", [0, Fraction(1, 2), 0], [1, 0, 0])])
def test_jordanian_twist_is_a_non_invariant_twist(name, x, y):
    U = UEA(builtin(name), 4)
    r = verify_twist(jordanian_twist(U, x, y))
    assert r.ok and not r.invariant


@given(st.sampled_from(SMALL), seeds)
@settings(max_examples=15)
def test_gauge_is_a_right_action(name, seed):
    rng = random.Random(seed)
    U = UEAS[name]
    t = TwistedEndo.from_twist(product_of_exponentials(U, random_normal_form(rng, U)))
    a, b = random_gauge(rng, U), random_gauge(rng, U)
    assert apply_gauge(b, apply_gauge(a, t)) == apply_gauge(a * b, t)
    assert apply_gauge(a, t).is_valid()


def test_other_gauge_pairing_breaks_compatibility():
    """f' = a f a^{-1} with F' = Δ(a) F (a⊗a)^{-1} is not a twisted endomorphism."""
    U = UEA(builtin("heisenberg:1"), 2)
    F = U.from_bivector(invariant_skew2(U.lie)[0]).shift(1).exp()
    a = (U.gen(0) * U.gen(1)).shift(1).exp()
    ainv = a.inverse()
    other = TwistedEndo(U, [a * x * ainv for x in U.generators()],
                        a.delta_at(0) * F * ainv.tensor(ainv))
    assert not other.check()["compatibility"]
    assert apply_gauge(a, TwistedEndo.from_twist(F)).check()["compatibility"]


@given(st.sampled_from(SMALL), seeds)
@settings(max_examples=15)
def test_composition_is_associative_and_valid(name, seed):
    rng = random.Random(seed)
    U = UEAS[name]
    ts = [apply_gauge(random_gauge(rng, U),
                      compose(TwistedEndo.from_twist(product_of_exponentials(U, random_normal_form(rng, U))),
                              TwistedEndo.from_matrix(U, random_automorphism(rng, U.lie))))
          for _ in range(3)]
    left = compose(compose(ts[0], ts[1]), ts[2])
    assert left == compose(ts[0], compose(ts[1], ts[2]))
    assert left.is_valid()


@given(st.sampled_from(SMALL), seeds)
@settings(max_examples=15)
def test_transpose_commutes_with_compose_and_gauge(name, seed):
    rng = random.Random(seed)
    U = UEAS[name]
    t1 = TwistedEndo.from_matrix(U, random_automorphism(rng, U.lie),
                                 product_of_exponentials(U, random_normal_form(rng, U)))
    t2 = TwistedEndo.from_twist(product_of_exponentials(U, random_normal_form(rng, U)))
    a = random_gauge(rng, U)
    assert transpose(transpose(t1)) == t1
    assert transpose(compose(t2, t1)) == compose(transpose(t2), transpose(t1))
    assert transpose(apply_gauge(a, t1)) == apply_gauge(a, transpose(t1))
    assert transpose(t2).is_valid()


@given(st.sampled_from(SMALL), seeds)
@settings(max_examples=20)
def test_normal_form_round_trip(name, seed):
    rng = random.Random(seed)
    U = UEAS[name]
    Xs = random_normal_form(rng, U)
    F = gauge_twist(random_central_gauge(rng, U), product_of_exponentials(U, Xs))
    nf = normalize_invariant_twist(F)
    assert nf.X == Xs
    assert gauge_twist(nf.gauge, F) == nf.product(U)


def test_normal_form_rejects_non_invariant():
    U = UEA(builtin("affine2"), 3)
    with pytest.raises(NotInvariant):
        normalize_invariant_twist(jordanian_twist(U, [1, 0], [0, 1]))


@given(st.sampled_from(SMALL), seeds)
@settings(max_examples=15)
def test_normal_form_through_non_central_gauge(name, seed):
    rng = random.Random(seed)
    U = UEAS[name]
    Xs = random_normal_form(rng, U)
    F = gauge_twist(random_gauge(rng, U), product_of_exponentials(U, Xs))
    nf = normalize_invariant_twist(F, require_invariant=False)
    assert nf.X == Xs
    assert gauge_twist(nf.gauge, F) == nf.product(U)


def test_jordanian_has_no_invariant_representative():
    U = UEA(builtin("affine2"), 3)
    with pytest.raises(NoSolution) as info:
        normalize_invariant_twist(jordanian_twist(U, [1, 0], [0, 1]), require_invariant=False)
    assert not isinstance(info.value, InternalNoSolution)


def test_normal_form_json():
    nf = normalize_invariant_twist(ec().shift(1).exp())
    data = nf.to_json()
    assert data["X"][0][0][2] == "1/1" and data["X"][0][2][0] == "-1/1"


@given(st.sampled_from(SMALL), seeds)
@settings(max_examples=15)
def test_separation(name, seed):
    rng = random.Random(seed)
    U = UEAS[name]
    p = random_automorphism(rng, U.lie)
    Xs = random_normal_form(rng, U)
    t = apply_gauge(random_gauge(rng, U),
                    compose(TwistedEndo.from_twist(product_of_exponentials(U, Xs)),
                            TwistedEndo.from_matrix(U, p)))
    sep = separate(t)
    assert sep.matrix == p
    assert sep.F_inv.is_invariant() and sep.auto.is_bialgebra_map()
    assert normalize_invariant_twist(sep.F_inv).X == Xs


def test_heisenberg_group_law_value():
    g, form = heisenberg(1)
    U = UEA(g, 4)
    X, Y = invariant_skew2(g)[:2]
    gl = group_law_cocycle(U, X, Y)
    assert all(gl.checks.values())
    c = U.gen(2)
    # [e∧c, f∧c] = c⊗c² + c²⊗c and a = −(1/3)c³
    assert gl.commutator == c.tensor(c * c) + (c * c).tensor(c)
    assert geometric_a(U, X, Y) == (c * c * c).scale(Fraction(-1, 3))
    assert differential(gl.a) == gl.commutator


@given(seeds)
@settings(max_examples=10)
def test_group_law_on_random_pairs(seed):
    rng = random.Random(seed)
    g, _ = heisenberg(2)
    U = UEA(g, 3)
    X, Y = random_invariant_skew(rng, g), random_invariant_skew(rng, g)
    assert all(group_law_cocycle(U, X, Y).checks.values())


@given(seeds)
@settings(max_examples=10)
def test_associator_alternation_vanishes(seed):
    rng = random.Random(seed)
    g, _ = heisenberg(2)
    U = UEA(g, 2)
    X, Y, Z = (random_invariant_skew(rng, g) for _ in range(3))
    assert not associator_alternation(U, X, Y, Z)
    assert not associator(U, X, Y, Z)


def test_associator_by_gauge_is_central():
    g, _ = heisenberg(2)
    U = UEA(g, 3)
    X, Y, Z = invariant_skew2(g)[:3]
    phi = associator_by_gauge(U, X, Y, Z)
    assert U.commutes_with_generators(phi)


def test_twisted_coproduct_variants():
    U = UEA(builtin("affine2"), 3)
    F = jordanian_twist(U, [1, 0], [0, 1])
    x = U.gen(1)
    conj = lambda u: twisted_coproducts(F, u, "conjugated")
    assert not coassociativity_defect(conj, x)
    assert twisted_coproducts(F, x, "galois") == F * x.delta_at(0)
    with pytest.raises(ValueError):
        twisted_coproducts(F, x, "nope")


def test_pi0_composition_law():
    U = UEA(builtin("heisenberg:1"), 3)
    rng = random.Random(5)
    classes = []
    for _ in range(2):
        p = random_automorphism(rng, U.lie)
        classes.append(Pi0Class(p, NormalForm(random_normal_form(rng, U), U.unit(1))))
    result, checks = pi0_compose(U, *classes)
    assert all(checks.values())
    assert result.matrix == la.matmul(classes[0].matrix, classes[1].matrix)
