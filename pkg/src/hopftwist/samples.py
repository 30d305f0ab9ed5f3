"""Seeded random inputs: invariant twists, gauges, Lie automorphisms.

Everything takes a ``random.Random`` so that a fixed seed reproduces a run.
"""

from __future__ import annotations

import random
from functools import lru_cache

from . import linalg as la
from .algebra import TensorElem, UEAElem
from .errors import VerificationError
from .lie import LieAlgebraData, invariant_skew2, is_automorphism
from .scalars import Rational
from .uea import UEA, _compositions

ZERO = Rational(0)


def rand_q(rng: random.Random, span: int = 3, denoms=(1, 1, 2, 3)) -> Rational:
    return Rational(rng.randint(-span, span), rng.choice(denoms))


def rand_nonzero_q(rng: random.Random, span: int = 3, denoms=(1, 1, 2, 3)) -> Rational:
    while True:
        q = rand_q(rng, span, denoms)
        if q:
            return q


def combo(rng: random.Random, mats: list, span: int = 2) -> la.Matrix:
    """Random rational combination of equally sized matrices."""
    if not mats:
        return []
    n = len(mats[0])
    out = la.zeros(n, n)
    for m in mats:
        c = rand_q(rng, span, (1, 1, 2))
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * m[i][j]
    return out


def is_zero_matrix(m) -> bool:
    return not any(any(r) for r in m)


def random_invariant_skew(rng: random.Random, g: LieAlgebraData, nonzero: bool = False) -> la.Matrix:
    basis = invariant_skew2(g)
    while True:
        m = combo(rng, basis) if basis else la.zeros(g.dim, g.dim)
        if not nonzero or not basis or not is_zero_matrix(m):
            return m


def random_normal_form(rng: random.Random, alg: UEA, density: float = 0.7) -> list:
    """X_1..X_N in (Λ²g)^g; each is zero with probability 1 − density."""
    return [random_invariant_skew(rng, alg.lie) if rng.random() < density
            else la.zeros(alg.n, alg.n) for _ in range(alg.order)]


def product_of_exponentials(alg: UEA, Xs: list) -> TensorElem:
    out = alg.unit(2)
    for i, m in enumerate(Xs):
        if not is_zero_matrix(m):
            out = out * alg.from_bivector(m).shift(i + 1).exp()
    return out


def central_elements(alg: UEA, max_degree: int = 3) -> list[UEAElem]:
    """Central elements with zero counit, spanning the centre up to max_degree."""
    out = []
    for z in alg.center_basis(max_degree):
        z = z - alg.scalar(z.counit())
        if z:
            out.append(z)
    return out


def random_central_gauge(rng: random.Random, alg: UEA, max_degree: int = 2) -> UEAElem:
    """exp(sum_p z_p h^p) with z_p random central of zero counit."""
    zs = central_elements(alg, max_degree)
    total = alg.zero(1)
    for p in range(1, alg.order + 1):
        for z in zs:
            if rng.random() < 0.4:
                total = total + z.scale(rand_q(rng, 2)).shift(p)
    return total.exp()


def random_uea_element(rng: random.Random, alg: UEA, max_degree: int = 2, terms: int = 3,
                       min_degree: int = 1) -> UEAElem:
    monos = [m for d in range(min_degree, max_degree + 1) for m in _compositions(d, alg.n)]
    total = alg.zero(1)
    for _ in range(terms):
        total = total + alg.mono(rng.choice(monos)).scale(rand_q(rng, 2))
    return total


def random_gauge(rng: random.Random, alg: UEA, max_degree: int = 2, terms: int = 2) -> UEAElem:
    """exp(sum_p y_p h^p) with y_p random (usually non-central) and counit zero."""
    total = alg.zero(1)
    for p in range(1, alg.order + 1):
        if rng.random() < 0.6:
            total = total + random_uea_element(rng, alg, max_degree, terms).shift(p)
    return total.exp()


# -- Lie automorphisms -------------------------------------------------------------

@lru_cache(maxsize=None)
def _derivations(g: LieAlgebraData) -> tuple:
    """Basis of Der(g) as matrices (columns = images)."""
    n = g.dim
    N = n * n
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            br = g.bracket(g.unit_vector(i), g.unit_vector(j))
            # D[x_i,x_j] − [D x_i, x_j] − [x_i, D x_j] = 0, unknown D[p][q] at index p*n+q
            for k in range(n):
                row = [ZERO] * N
                for p, c in enumerate(br):
                    if c:
                        row[k * n + p] += c
                for p in range(n):
                    # D x_i = sum_p D[p][i] x_p
                    c1 = g.c(p, j, k)
                    if c1:
                        row[p * n + i] -= c1
                    c2 = g.c(i, p, k)
                    if c2:
                        row[p * n + j] -= c2
                rows.append(row)
    ker = la.nullspace(rows, N) if rows else la.identity(N)
    red, _ = la.rref(ker, N) if ker else ([], [])
    return tuple(tuple(tuple(v[p * n:(p + 1) * n]) for p in range(n)) for v in red)


def _nilpotent_exp(d: la.Matrix, n: int) -> la.Matrix | None:
    total = la.identity(n)
    term = la.identity(n)
    for k in range(1, n + 1):
        term = [[x / k for x in r] for r in la.matmul(term, d)]
        if is_zero_matrix(term):
            return total
        total = [[a + b for a, b in zip(r, s)] for r, s in zip(total, term)]
    return None if not is_zero_matrix(la.matmul(term, d)) else total


def nilpotent_derivations(g: LieAlgebraData) -> list:
    out = []
    for d in _derivations(g):
        d = [list(r) for r in d]
        if _nilpotent_exp(d, g.dim) is not None:
            out.append(d)
    return out


def random_automorphism(rng: random.Random, g: LieAlgebraData, steps: int = 3) -> la.Matrix:
    """Product of exp(λD) over random nilpotent derivations D."""
    n = g.dim
    nil = nilpotent_derivations(g)
    p = la.identity(n)
    for _ in range(steps):
        if not nil:
            break
        d = rng.choice(nil)
        lam = rand_nonzero_q(rng, 2, (1, 2))
        e = _nilpotent_exp([[lam * x for x in r] for r in d], n)
        p = la.matmul(e, p)
    if not is_automorphism(g, p):
        raise VerificationError("generated matrix is not a Lie algebra automorphism")
    return p


# -- named twists ------------------------------------------------------------------------

def jordanian_twist(alg: UEA, x: list, y: list, scale=1) -> TensorElem:
    """exp(x ⊗ log(1 + λ h y)) for [x, y] = y."""
    X, Y = alg.from_vector(x), alg.from_vector(y)
    sigma = (alg.unit(1) + Y.scale(scale).shift(1)).log()
    return X.tensor(sigma).exp()
