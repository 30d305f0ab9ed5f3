"""The cobar-type complex on U(g)^{⊗n}, alternation, and the coboundary solver.

∂X = 1⊗X + sum_{i=1..n} (-1)^i Δ_i(X) + (-1)^{n+1} X⊗1, where Δ_i applies
the coproduct to the i-th factor.  For n = 1 this reads
∂a = a⊗1 + 1⊗a − Δ(a).

∂ never straightens anything (the coproduct of a PBW monomial is a sum of
PBW monomials of the same total exponent), so it preserves the total
multidegree of a tensor key.  Every computation below is done block by
block in that grading.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from math import comb

from .scalars import Rational
from . import linalg as la
from .algebra import TensorElem, UEAElem, alternation, make_elem
from .errors import InternalNoSolution, NoSolution, NotACocycle, NotInvariant
from .lie import LieAlgebraData
from .uea import UEA, multidegree

ZERO = Rational(0)
ONE = Rational(1)

Cochain = TensorElem


def differential(x: TensorElem) -> TensorElem:
    n = x.arity
    alg = x.alg
    one = alg.unit(1)
    total = one.tensor(x)
    for i in range(n):
        term = x.delta_at(i)
        total = total + (term if (i + 1) % 2 == 0 else -term)
    last = x.tensor(one)
    total = total + (last if (n + 1) % 2 == 0 else -last)
    return total


def coboundary(a: UEAElem) -> TensorElem:
    """a⊗1 + 1⊗a − Δ(a): the differential on 1-cochains."""
    return differential(a)


def _split_by_multidegree(x: TensorElem) -> dict[tuple, dict]:
    blocks: dict[tuple, dict] = defaultdict(dict)
    for key, v in x.terms.items():
        blocks[multidegree(key)][key] = v
    return blocks


def solve_coboundary(x: TensorElem, invariant: bool = False, check: bool = True) -> UEAElem:
    """Return a with ∂a = x − Alt_2(x) for a 2-cocycle x.

    Each multidegree block of 1-cochains is spanned by a single PBW monomial,
    so the solve is a one-unknown problem per block.  Degree-one blocks lie in
    the kernel of ∂; the canonical solution has no component there.  With
    ``invariant=True`` the degree-one part is then adjusted so that a is
    central.
    """
    alg = x.alg
    if x.arity != 2:
        raise NotACocycle("solve_coboundary expects a 2-cochain")
    if check and differential(x):
        raise NotACocycle("input is not a 2-cocycle")
    if invariant and check and not x.is_invariant():
        raise NotInvariant("input is not g-invariant")
    target = x - alternation(x)
    n = alg.order
    terms: dict = {}
    for mdeg, block in sorted(_split_by_multidegree(target).items()):
        mono = tuple(mdeg)
        d = differential(alg.basis_elem(mono))
        if not d:
            raise NoSolution(f"component of multidegree {mdeg} is not a coboundary")
        # block must be a multiple (with h-coefficients) of d
        pivot_key, pivot = next(iter(sorted(d.terms.items())))
        p0 = pivot[0]
        ratio = [c / p0 for c in block.get(pivot_key, [ZERO] * (n + 1))]
        for key, v in d.terms.items():
            want = block.get(key, [ZERO] * (n + 1))
            if [v[0] * r for r in ratio] != want:
                raise NoSolution(f"component of multidegree {mdeg} is not a coboundary")
        if len(block.keys() - d.terms.keys()):
            raise NoSolution(f"component of multidegree {mdeg} is not a coboundary")
        terms[(mono,)] = ratio
    a = make_elem(alg, 1, terms)
    if invariant:
        a = a + _central_correction(a)
        if not alg.commutes_with_generators(a):
            raise InternalNoSolution("could not make the solution central")
    return a


def _central_correction(a: UEAElem) -> UEAElem:
    """Find y in g[h] with [x_i, a + y] = 0 for all generators x_i."""
    alg = a.alg
    g = alg.lie
    n = g.dim
    order = alg.order
    result = alg.zero(1)
    for p in range(order + 1):
        ap = a.h_coeff(p)
        if not ap:
            continue
        rhs = []
        eqs = []
        for i in range(n):
            comm = alg.gen(i) * ap - ap * alg.gen(i)
            vec = [ZERO] * n
            for (m,), v in comm.terms.items():
                if sum(m) != 1:
                    raise InternalNoSolution("commutator with a generator is not primitive")
                vec[m.index(1)] = v[0]
            # want ad(x_i) y = -[x_i, a_p]
            eqs.extend(g.ad(i))
            rhs.extend(-c for c in vec)
        y = la.solve(eqs, rhs, n)
        if y is None:
            raise InternalNoSolution("no central representative exists")
        result = result + alg.from_vector(y).shift(p)
    return result


def alternation_n(x: TensorElem) -> TensorElem:
    return alternation(x)


# -- cohomology ranks ---------------------------------------------------------

def _distributions(e: tuple, k: int):
    """All ways to split the exponent vector e over k ordered factors."""
    per_coord = []
    for ei in e:
        per_coord.append([c for c in _weak_compositions(ei, k)])
    for choice in product(*per_coord):
        yield tuple(tuple(choice[i][f] for i in range(len(e))) for f in range(k))


def _weak_compositions(total: int, k: int):
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, k - 1):
            yield (first,) + rest


def _block_differential_rank(alg: UEA, e: tuple, k: int) -> int:
    """Rank of ∂: C^k_e → C^{k+1}_e."""
    if k == 0:
        return 0
    src = list(_distributions(e, k))
    tgt_index = {key: t for t, key in enumerate(_distributions(e, k + 1))}
    rows = []
    for key in src:
        d = differential(alg.basis_elem(*key))
        row = [ZERO] * len(tgt_index)
        for tk, v in d.terms.items():
            row[tgt_index[tk]] = v[0]
        rows.append(row)
    return la.rank(rows, len(tgt_index))


def _exponent_vectors(dim: int, max_total: int):
    if dim == 0:
        yield ()
        return
    for total in range(max_total + 1):
        yield from _weak_compositions(total, dim)


def cohomology_dimension(g: LieAlgebraData, n: int, degree_cap: int) -> int:
    """dim H^n of the complex restricted to total PBW degree <= degree_cap."""
    if n < 1:
        raise ValueError("n must be >= 1")
    alg = UEA(g, order=0)
    total = 0
    for e in _exponent_vectors(g.dim, degree_cap):
        size = 1
        for ei in e:
            size *= comb(ei + n - 1, n - 1)
        r_out = _block_differential_rank(alg, e, n)
        r_in = _block_differential_rank(alg, e, n - 1)
        total += size - r_out - r_in
    return total


def dim_exterior(d: int, n: int) -> int:
    return comb(d, n) if 0 <= n <= d else 0


def is_cocycle(x: TensorElem) -> bool:
    return not differential(x)
