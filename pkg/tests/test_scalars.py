from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopftwist.scalars import HSeries, as_rational, format_rational, parse_rational

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
series = st.lists(fractions, min_size=1, max_size=5).map(lambda c: HSeries(c, 4))


def naive_mul(a, b, n=4):
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            out[i + j] += Fraction(a[i]) * Fraction(b[j])
    return out


@given(series, series)
def test_product_matches_naive_convolution(a, b):
    assert [Fraction(x) for x in (a * b).coeffs] == naive_mul(a, b)


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == HSeries([], 4)


@given(series)
def test_inverse_when_unit(a):
    if a[0] == 0:
        with pytest.raises(Exception):
            a.invert()
    else:
        assert a * a.invert() == HSeries([1], 4)


@given(series)
def test_exp_log_round_trip(a):
    x = a - HSeries([a[0]], 4)          # zero constant term
    assert x.exp().log() == x
    assert (x.exp() * (-x).exp()) == HSeries([1], 4)


def test_exp_of_h_is_inverse_factorials():
    e = HSeries.h(4).exp()
    assert [Fraction(c) for c in e.coeffs] == [Fraction(1), 1, Fraction(1, 2), Fraction(1, 6),
                                               Fraction(1, 24)]


@given(fractions)
def test_format_parse_round_trip(q):
    s = format_rational(q)
    assert "/" in s
    assert parse_rational(s) == q


def test_as_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational("3/6") == Fraction(1, 2)
