from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from hopftwist import linalg as la

entries = st.integers(-3, 3).map(Fraction)


def matrices(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def as_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m])


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_rank_and_nullspace_against_sympy(m):
    cols = len(m[0])
    assert la.rank(m, cols) == as_sympy(m).rank()
    ns = la.nullspace(m, cols)
    assert len(ns) == cols - as_sympy(m).rank()
    for v in ns:
        assert all(not x for x in la.matvec(m, v))


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_det_and_inverse_against_sympy(m):
    d = la.det(m)
    assert d == Fraction(str(as_sympy(m).det()))
    if d:
        inv = la.inverse(m)
        assert la.matmul(m, inv) == la.identity(len(m))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), st.lists(entries, min_size=n, max_size=n))))
def test_solve_consistent(data):
    a, x = data
    b = la.matvec(a, x)
    y = la.solve(a, b, len(x))
    assert y is not None and la.matvec(a, y) == b
