"""Truncated universal enveloping algebra U(g)[h]/(h^{N+1}) in the PBW basis.

Basis keys are exponent tuples e = (e_0, ..., e_{n-1}) standing for the
ordered monomial x_0^{e_0} ... x_{n-1}^{e_{n-1}}; the PBW order is the input
basis order.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from math import comb
from typing import Sequence

from . import linalg as la
from .algebra import BasisAlgebra, TensorElem, UEAElem, make_elem
from .errors import ConfigurationError, DomainError
from .lie import LieAlgebraData, validate_lie
from .scalars import Rational, DEFAULT_ORDER, as_rational

ZERO = Rational(0)
ONE = Rational(1)

Mono = tuple[int, ...]


class UEA(BasisAlgebra):
    """U(g) with straightening multiplication and the standard Hopf structure.

    ``strategy`` selects how products are straightened: ``"right"`` feeds the
    generators of the right factor one at a time into the left monomial,
    ``"left"`` feeds the generators of the left factor (last first) into the
    right monomial.  Both give the same normal form; having two lets tests
    check confluence.
    """

    def __init__(self, lie: LieAlgebraData, order: int = DEFAULT_ORDER,
                 strategy: str = "right", validate: bool = True):
        if validate:
            report = validate_lie(lie)
            if not report.ok:
                raise DomainError(f"invalid Lie algebra: {report}")
        if order < 0:
            raise ConfigurationError("h-order must be >= 0")
        if strategy not in ("right", "left"):
            raise ConfigurationError(f"unknown straightening strategy {strategy!r}")
        self.lie = lie
        self.order = order
        self.strategy = strategy
        self.n = lie.dim
        self.one: Mono = (0,) * self.n
        self._rmul: dict[tuple[Mono, int], dict[Mono, Rational]] = {}
        self._lmul: dict[tuple[int, Mono], dict[Mono, Rational]] = {}
        self._mul: dict[tuple[Mono, Mono], dict] = {}
        self._delta: dict[Mono, dict] = {}
        self._anti: dict[Mono, dict] = {}

    def __repr__(self):
        return f"UEA({self.lie!r}, order={self.order})"

    # -- monomial helpers --------------------------------------------------
    def gen_key(self, i: int) -> Mono:
        e = [0] * self.n
        e[i] = 1
        return tuple(e)

    def generator_keys(self):
        return [self.gen_key(i) for i in range(self.n)]

    def gen(self, i: int) -> UEAElem:
        return self.basis_elem(self.gen_key(i))

    def mono(self, exps: Sequence[int]) -> UEAElem:
        if len(exps) != self.n:
            raise DomainError("exponent vector has wrong length")
        return self.basis_elem(tuple(exps))

    def from_vector(self, v: Sequence) -> UEAElem:
        """Embed a Lie algebra vector as a degree-one element."""
        terms = {}
        for i, a in enumerate(v):
            a = as_rational(a)
            if a:
                terms[(self.gen_key(i),)] = [a] + [ZERO] * self.order
        return make_elem(self, 1, terms)

    def from_bivector(self, m: la.Matrix) -> TensorElem:
        """sum_ij m[i][j] x_i ⊗ x_j."""
        terms = {}
        for i, row in enumerate(m):
            for j, a in enumerate(row):
                if a:
                    terms[(self.gen_key(i), self.gen_key(j))] = [as_rational(a)] + [ZERO] * self.order
        return make_elem(self, 2, terms)

    def to_bivector(self, x: TensorElem) -> la.Matrix:
        """Inverse of from_bivector; x must be h-constant with degree-one factors."""
        m = la.zeros(self.n, self.n)
        for (a, b), v in x.terms.items():
            if any(v[1:]) or sum(a) != 1 or sum(b) != 1:
                raise DomainError("not a 2-tensor with Lie-algebra factors")
            m[a.index(1)][b.index(1)] = v[0]
        return m

    def from_trivector(self, t) -> TensorElem:
        terms = {}
        n = self.n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    a = t[i][j][k]
                    if a:
                        terms[(self.gen_key(i), self.gen_key(j), self.gen_key(k))] = \
                            [as_rational(a)] + [ZERO] * self.order
        return make_elem(self, 3, terms)

    def to_trivector(self, x: TensorElem) -> list:
        n = self.n
        t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (a, b, c), v in x.terms.items():
            if any(v[1:]) or sum(a) != 1 or sum(b) != 1 or sum(c) != 1:
                raise DomainError("not a 3-tensor with Lie-algebra factors")
            t[a.index(1)][b.index(1)][c.index(1)] = v[0]
        return t

    def is_lie_tensor(self, x: TensorElem) -> bool:
        return all(not any(v[1:]) and all(sum(b) == 1 for b in key)
                   for key, v in x.terms.items())

    def basis_str(self, e: Mono) -> str:
        if not any(e):
            return "1"
        parts = []
        for i, k in enumerate(e):
            if k:
                name = self.lie.basis_names[i]
                parts.append(name if k == 1 else f"{name}^{k}")
        return "·".join(parts)

    def key_to_json(self, e):
        return list(e)

    def key_from_json(self, data):
        e = tuple(int(x) for x in data)
        if len(e) != self.n or any(x < 0 for x in e):
            raise ConfigurationError(f"bad PBW exponent vector {data!r}")
        return e

    @staticmethod
    def degree(e: Mono) -> int:
        return sum(e)

    # -- straightening -----------------------------------------------------
    def _times_gen(self, w: Mono, j: int) -> dict[Mono, Rational]:
        """PBW expansion of (monomial w) · x_j."""
        key = (w, j)
        hit = self._rmul.get(key)
        if hit is not None:
            return hit
        k = max((i for i, x in enumerate(w) if x), default=-1)
        if k <= j:
            e = list(w)
            e[j] += 1
            res = {tuple(e): ONE}
        else:
            # w = w' x_k and x_k x_j = x_j x_k + [x_k, x_j]
            wp = list(w)
            wp[k] -= 1
            wp = tuple(wp)
            res = defaultdict(Rational)
            for m, c in self._times_gen(wp, j).items():
                for m2, d in self._times_gen(m, k).items():
                    res[m2] += c * d
            for l, cl in self.lie.bracket_basis(k, j).items():
                for m, c in self._times_gen(wp, l).items():
                    res[m] += cl * c
            res = {m: c for m, c in res.items() if c}
        self._rmul[key] = res
        return res

    def _gen_times(self, j: int, w: Mono) -> dict[Mono, Rational]:
        """PBW expansion of x_j · (monomial w)."""
        key = (j, w)
        hit = self._lmul.get(key)
        if hit is not None:
            return hit
        k = next((i for i, x in enumerate(w) if x), self.n)
        if j <= k:
            e = list(w)
            e[j] += 1
            res = {tuple(e): ONE}
        else:
            # w = x_k w' and x_j x_k = x_k x_j + [x_j, x_k]
            wp = list(w)
            wp[k] -= 1
            wp = tuple(wp)
            res = defaultdict(Rational)
            for m, c in self._gen_times(j, wp).items():
                for m2, d in self._gen_times(k, m).items():
                    res[m2] += c * d
            for l, cl in self.lie.bracket_basis(j, k).items():
                for m, c in self._gen_times(l, wp).items():
                    res[m] += cl * c
            res = {m: c for m, c in res.items() if c}
        self._lmul[key] = res
        return res

    def mul_basis(self, a: Mono, b: Mono) -> dict:
        key = (a, b)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        if not any(b):
            res = {(0, a): ONE}
        elif not any(a):
            res = {(0, b): ONE}
        elif self.strategy == "right":
            cur = {a: ONE}
            for j, ej in enumerate(b):
                for _ in range(ej):
                    nxt = defaultdict(Rational)
                    for m, c in cur.items():
                        for m2, d in self._times_gen(m, j).items():
                            nxt[m2] += c * d
                    cur = {m: c for m, c in nxt.items() if c}
            res = {(0, m): c for m, c in cur.items()}
        else:
            cur = {b: ONE}
            for j in reversed(range(self.n)):
                for _ in range(a[j]):
                    nxt = defaultdict(Rational)
                    for m, c in cur.items():
                        for m2, d in self._gen_times(j, m).items():
                            nxt[m2] += c * d
                    cur = {m: c for m, c in nxt.items() if c}
            res = {(0, m): c for m, c in cur.items()}
        self._mul[key] = res
        return res

    # -- Hopf structure ------------------------------------------------------
    def coproduct_basis(self, e: Mono) -> dict:
        # generators are primitive and the PBW order is kept on both sides,
        # so Δ(x^e) = sum_{f<=e} prod_i C(e_i, f_i) x^f ⊗ x^{e-f}
        hit = self._delta.get(e)
        if hit is not None:
            return hit
        res = {}
        for f in product(*(range(k + 1) for k in e)):
            c = 1
            for k, fk in zip(e, f):
                c *= comb(k, fk)
            res[(0, tuple(f), tuple(k - fk for k, fk in zip(e, f)))] = Rational(c)
        self._delta[e] = res
        return res

    def counit_basis(self, e: Mono) -> dict:
        return {0: ONE} if not any(e) else {}

    def antipode_basis(self, e: Mono) -> dict:
        # S(x_1^{e_1}...x_n^{e_n}) = (-1)^{|e|} x_n^{e_n} ... x_1^{e_1}
        hit = self._anti.get(e)
        if hit is not None:
            return hit
        cur = {self.one: ONE}
        for i in reversed(range(self.n)):
            for _ in range(e[i]):
                nxt = defaultdict(Rational)
                for m, c in cur.items():
                    for m2, d in self._times_gen(m, i).items():
                        nxt[m2] += c * d
                cur = {m: c for m, c in nxt.items() if c}
        sign = -1 if sum(e) % 2 else 1
        res = {(0, m): sign * c for m, c in cur.items()}
        self._anti[e] = res
        return res

    # -- derived structure -------------------------------------------------
    def monomials_of_degree(self, d: int) -> list[Mono]:
        return [m for m in _compositions(d, self.n)]

    def center_basis(self, max_degree: int) -> list[UEAElem]:
        """Basis of the g-invariants (= centre) of U(g) in filtration degree <= max_degree.

        Solved degree by degree in the symmetrization-free PBW basis: a
        central element has central top symbol, but lower parts mix, so the
        whole filtered piece is solved at once.
        """
        monos = [m for d in range(max_degree + 1) for m in _compositions(d, self.n)]
        index = {m: t for t, m in enumerate(monos)}
        rows: dict[tuple[int, Mono], list[Rational]] = {}
        for i in range(self.n):
            g = self.gen_key(i)
            for t, m in enumerate(monos):
                left = self.mul_basis(g, m)
                right = self.mul_basis(m, g)
                diff = defaultdict(Rational)
                for (_, mm), c in left.items():
                    diff[mm] += c
                for (_, mm), c in right.items():
                    diff[mm] -= c
                for mm, c in diff.items():
                    if c:
                        row = rows.setdefault((i, mm), [ZERO] * len(monos))
                        row[t] += c
        eqs = list(rows.values())
        kernel = la.nullspace(eqs, len(monos)) if eqs else la.identity(len(monos))
        red, _ = la.rref(kernel, len(monos)) if kernel else ([], [])
        out = []
        for vec in red:
            out.append(make_elem(self, 1, {(m,): [vec[t]] + [ZERO] * self.order
                                           for m, t in index.items() if vec[t]}))
        return out

    def commutes_with_generators(self, x: UEAElem) -> bool:
        return all(not (g * x - x * g) for g in self.generators())

    def pbw_multiply(self, a: UEAElem, b: UEAElem) -> UEAElem:
        return a * b

    def hopf(self, a: UEAElem, op: str):
        if op == "coproduct":
            return a.delta_at(0)
        if op == "counit":
            return a.counit_at(0)
        if op == "antipode":
            return a.antipode_at(0)
        raise ValueError(f"unknown op {op!r}")


def _compositions(d: int, n: int):
    """All exponent tuples of length n summing to d, in lexicographic order."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


def multidegree(key: tuple[Mono, ...]) -> tuple[int, ...]:
    """Total exponent vector of a tensor key (sum over factors)."""
    return tuple(map(sum, zip(*key)))


def tensor_ops(a: TensorElem, b: TensorElem | None, op: str, **kw) -> TensorElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "permute":
        return a.permute(kw["sigma"])
    if op == "embed":
        return a.embed(kw["positions"], kw["k"])
    if op == "apply_map_per_factor":
        return a.apply_per_factor(kw["maps"])
    raise ValueError(f"unknown op {op!r}")


def exp_log_tensor(a: TensorElem, direction: str) -> TensorElem:
    if direction == "exp":
        return a.exp()
    if direction == "log":
        return a.log()
    raise ValueError(f"unknown direction {direction!r}")


def is_invariant(a: TensorElem) -> bool:
    return a.is_invariant()
