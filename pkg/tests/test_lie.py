from fractions import Fraction
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from hopftwist.lie import (LieAlgebraData, builtin, center, heisenberg, invariant_skew2,
                           is_automorphism, is_derivation, is_invariant_2tensor, meta_abelian,
                           validate_lie)
from hopftwist.errors import DomainError
from hopftwist.samples import _derivations, random_automorphism

NAMES = ["abelian:3", "heisenberg:1", "heisenberg:2", "sl2", "affine2", "meta-abelian:1",
         "meta-abelian:2"]


def invariant_skew_dim(g):
    """dim (Λ²g)^g from A X + X A^T = 0 for every ad matrix A, solved by sympy."""
    n = g.dim
    syms = sympy.symbols(f"x0:{n * n}")
    X = sympy.Matrix(n, n, syms)
    eqs = list(X + X.T)
    for i in range(n):
        A = sympy.Matrix(g.ad(i)).applyfunc(lambda v: sympy.Rational(str(v)))
        eqs += list(A * X + X * A.T)
    M, _ = sympy.linear_eq_to_matrix([e for e in eqs if e != 0], syms)
    return n * n - M.rank()


@pytest.mark.parametrize("name", NAMES)
def test_builtins_are_lie_algebras(name):
    assert validate_lie(builtin(name)).ok


@pytest.mark.parametrize("name", NAMES)
def test_invariant_skew_dimension(name):
    g = builtin(name)
    basis = invariant_skew2(g)
    assert len(basis) == invariant_skew_dim(g)
    assert all(is_invariant_2tensor(g, m) for m in basis)


def test_jacobi_violation_is_located():
    data = {"dim": 3, "brackets": [[0, 1, [[2, "1"]]], [0, 2, [[0, "1"]]]]}
    with pytest.raises(DomainError, match="jacobi"):
        LieAlgebraData.from_json(data)


def test_json_round_trip():
    g = builtin("sl2")
    h = LieAlgebraData.from_json(g.to_json())
    assert h.structure_constants() == g.structure_constants()


def test_antisymmetric_completion():
    g = LieAlgebraData.from_json({"dim": 2, "brackets": [[0, 1, [[1, "1"]]]]})
    assert g.bracket([0, 1], [1, 0]) == [0, -1]


def test_heisenberg_bracket_is_form_times_centre():
    g, form = heisenberg(2)
    rng = random.Random(3)
    for _ in range(20):
        u = [Fraction(rng.randint(-3, 3)) for _ in range(4)] + [Fraction(0)]
        v = [Fraction(rng.randint(-3, 3)) for _ in range(4)] + [Fraction(0)]
        assert g.bracket(u, v) == [0, 0, 0, 0, form.value(u, v)]
    assert center(g).dim == 1


def test_meta_abelian_requires_symmetric_c():
    with pytest.raises(DomainError):
        meta_abelian(2, [[[1, 0], [0, 0]], [[1, 0], [0, 0]]])


@pytest.mark.parametrize("name", NAMES)
def test_derivation_basis(name):
    g = builtin(name)
    for d in _derivations(g):
        assert is_derivation(g, [list(r) for r in d])


@given(st.sampled_from(NAMES), st.integers(0, 10 ** 6))
def test_random_automorphisms(name, seed):
    g = builtin(name)
    p = random_automorphism(random.Random(seed), g)
    assert is_automorphism(g, p)
    assert sympy.Matrix(p).det() != 0
