from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from hopftwist.crossedprod import (CrossedProduct, ExtensionAlgebra, TwistedActionData,
                                   crossed_product_checks, extension_checks,
                                   extension_normalize, heisenberg_action, verify_action,
                                   wedge_with_center)
from hopftwist.errors import NotInvariant
from hopftwist.lie import heisenberg, wedge
from hopftwist.samples import random_uea_element
from hopftwist.uea import UEA

G1, FORM1 = heisenberg(1)
U3 = UEA(G1, 3)
D3 = heisenberg_action(U3)
CP3 = CrossedProduct(D3)


def test_action_conditions_hold():
    rep = verify_action(D3, samples=[(1, 1), (2, -1)])
    assert rep.ok, str(rep)


def test_opposite_theta_sign_fails_cobound():
    d = heisenberg_action(U3, theta_sign=1)
    rep = verify_action(d)
    assert rep.failure == "cobound"
    assert rep.where == ((1, 0), (0, 1))


def test_theta_corruption_is_detected():
    e = U3.gen(0)
    good = D3.theta

    def corrupted(n, m):
        th = good(n, m)
        return th * (e * e).shift(2).exp() if (n, m) == ((1, 0), (0, 1)) else th

    d = heisenberg_action(U3, theta_override=corrupted)
    rep = verify_action(d)
    assert not rep.ok
    assert not rep.checks["cobound"] and not rep.checks["theta_central"]


def test_generators_must_be_invariant():
    with pytest.raises(NotInvariant):
        TwistedActionData(U3, [wedge([1, 0, 0], [0, 1, 0])])


@st.composite
def cp_elements(draw):
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    n = (rng.randint(-1, 1), rng.randint(-1, 1))
    return CP3.embed(random_uea_element(rng, U3, max_degree=2, terms=2, min_degree=0), n)


@given(cp_elements(), cp_elements(), cp_elements())
@settings(max_examples=15)
def test_crossed_product_is_a_bialgebra(u, v, w):
    assert all(crossed_product_checks(CP3, u, v, w).values())


def test_group_part_multiplies_with_theta():
    one = U3.unit(1)
    x = CP3.embed(one, (1, 0)) * CP3.embed(one, (0, 1))
    expected = CP3.embed(D3.theta((1, 0), (0, 1)), (1, 1))
    assert x == expected
    # θ((1,0),(0,1)) = exp(−½ a(e∧c, f∧c) h²) with a = −(1/3)c³
    c = U3.gen(2)
    assert D3.theta((1, 0), (0, 1)) == (c * c * c).scale(Fraction(1, 6)).shift(2).exp()


def test_extension_relations():
    E = ExtensionAlgebra(heisenberg_action(UEA(G1, 3)))
    assert all(extension_checks(E).values())
    c = E.from_uea(E.uea.gen(2))
    le, lf = E.l(0), E.l(1)
    assert le * lf - lf * le == (c * c * c).scale(Fraction(1, 3))
    e = E.from_uea(E.uea.gen(0))
    expected = (e.tensor(c) - c.tensor(e) + le.tensor(E.unit(1)) + E.unit(1).tensor(le))
    assert le.delta_at(0) == expected


def test_bracket_sign_relative_to_form():
    """[l_v, l_u] = b(v, u)/3 c³; the variant with b(u, v) has the wrong sign."""
    E = ExtensionAlgebra(heisenberg_action(UEA(G1, 2)))
    c = E.from_uea(E.uea.gen(2))
    c3 = c * c * c
    v, u = [1, 0, 0], [0, 1, 0]
    br = E.l(0) * E.l(1) - E.l(1) * E.l(0)
    assert br == c3.scale(FORM1.value(v, u) / 3)
    assert br != c3.scale(FORM1.value(u, v) / 3)


@given(st.lists(st.tuples(st.sampled_from("gl"), st.integers(0, 2)), min_size=1, max_size=6))
@settings(max_examples=40)
def test_left_and_right_straightening_agree(word):
    d = heisenberg_action(UEA(G1, 3))
    right, left = ExtensionAlgebra(d), ExtensionAlgebra(d, strategy="left")
    w = [(k, i % (2 if k == "l" else 3)) for k, i in word]
    assert extension_normalize(right, w).terms == extension_normalize(left, w).terms


def test_heisenberg_two_has_four_generators():
    g, _ = heisenberg(2)
    d = heisenberg_action(UEA(g, 2))
    assert d.rank == 4
    assert d.generators[0] == wedge_with_center(5, [1, 0, 0, 0, 0], 4)
