from fractions import Fraction
from itertools import product
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from hopftwist.algebra import alternation
from hopftwist.cochain import (coboundary, cohomology_dimension, differential, dim_exterior,
                               solve_coboundary)
from hopftwist.lie import builtin, invariant_skew2
from hopftwist.samples import random_uea_element
from hopftwist.uea import UEA, _compositions


def monomials(n, cap):
    return [m for d in range(cap + 1) for m in _compositions(d, n)]


def full_rank(U, k, cap):
    """Rank of ∂ on all k-cochains of total degree <= cap, without any grading tricks."""
    if k == 0:
        return 0
    monos = monomials(U.n, cap)
    src = [key for key in product(monos, repeat=k) if sum(map(sum, key)) <= cap]
    rows = []
    cols: dict = {}
    for key in src:
        d = differential(U.basis_elem(*key))
        rows.append({cols.setdefault(t, len(cols)): v[0] for t, v in d.terms.items()})
    M = sympy.zeros(len(rows), max(len(cols), 1))
    for i, r in enumerate(rows):
        for j, v in r.items():
            M[i, j] = sympy.Rational(v.numerator, v.denominator)
    return M.rank(), len(src)


@pytest.mark.parametrize("name,n,cap", [("heisenberg:1", 1, 3), ("heisenberg:1", 2, 2),
                                        ("abelian:2", 2, 3), ("affine2", 2, 3),
                                        ("abelian:2", 3, 3)])
def test_cohomology_against_unblocked_ranks(name, n, cap):
    g = builtin(name)
    U = UEA(g, 0)
    r_out, size = full_rank(U, n, cap)
    r_in, _ = full_rank(U, n - 1, cap) if n > 1 else (0, 0)
    assert cohomology_dimension(g, n, cap) == size - r_out - r_in == dim_exterior(g.dim, n)


def test_first_differential_convention():
    U = UEA(builtin("heisenberg:1"), 2)
    a = U.gen(0) * U.gen(1)
    assert coboundary(a) == a.tensor(U.unit(1)) + U.unit(1).tensor(a) - a.delta_at(0)
    assert not coboundary(U.gen(2))             # primitives are cocycles


@given(st.sampled_from(["heisenberg:1", "sl2", "affine2"]), st.integers(0, 10 ** 6),
       st.integers(1, 2))
def test_differential_squares_to_zero(name, seed, arity):
    rng = random.Random(seed)
    U = UEA(builtin(name), 1)
    x = random_uea_element(rng, U, max_degree=2, terms=3, min_degree=0)
    for _ in range(arity - 1):
        x = x.tensor(random_uea_element(rng, U, max_degree=1, terms=2, min_degree=0))
    assert not differential(differential(x))


@given(st.sampled_from(["heisenberg:1", "heisenberg:2", "sl2", "affine2", "meta-abelian:1"]),
       st.integers(0, 10 ** 6))
def test_solve_coboundary_of_a_coboundary(name, seed):
    rng = random.Random(seed)
    U = UEA(builtin(name), 1)
    a = random_uea_element(rng, U, max_degree=3, terms=3)
    x = coboundary(a)
    b = solve_coboundary(x)
    assert coboundary(b) == x - alternation(x)


def test_solve_coboundary_with_skew_part():
    U = UEA(builtin("heisenberg:1"), 1)
    X = U.from_bivector(invariant_skew2(U.lie)[0])
    a = U.gen(0) * U.gen(2)
    x = coboundary(a) + X
    b = solve_coboundary(x)
    assert coboundary(b) == x - X
    assert alternation(x) == X
