"""Sparse tensors over a bialgebra with a distinguished basis.

A :class:`BasisAlgebra` supplies products, coproducts, counit and antipode of
basis elements.  :class:`TensorElem` is a finitely supported element of
A^{⊗k}[h]/(h^{N+1}); its terms map a k-tuple of basis keys to the list of
h-coefficients.  Everything is exact.
"""

from __future__ import annotations

import json
from collections import defaultdict
from itertools import permutations
from math import factorial
from typing import Callable, Hashable, Iterable, Sequence

from .errors import ConfigurationError, DomainError, NotInvertible
from .scalars import Rational, HSeries, as_rational, format_rational, parse_rational

ZERO = Rational(0)
ONE = Rational(1)

Key = Hashable
Coeffs = list  # list[Rational] of length order+1


class BasisAlgebra:
    """Interface for an algebra (usually a bialgebra) with a fixed basis.

    Subclasses implement the ``*_basis`` methods.  Products may raise the
    h-degree (``q`` in the returned keys), which is how crossed products with
    h-dependent cocycles fit the same machinery.
    """

    order: int = 4
    one: Key = None

    def mul_basis(self, a: Key, b: Key) -> dict[tuple[int, Key], Rational]:
        raise NotImplementedError

    def coproduct_basis(self, a: Key) -> dict[tuple[int, Key, Key], Rational]:
        raise NotImplementedError

    def counit_basis(self, a: Key) -> dict[int, Rational]:
        raise NotImplementedError

    def antipode_basis(self, a: Key) -> dict[tuple[int, Key], Rational]:
        raise NotImplementedError

    def generator_keys(self) -> list[Key]:
        """Basis keys of algebra generators; enough to test invariance."""
        raise NotImplementedError

    def basis_str(self, a: Key) -> str:
        return str(a)

    def key_to_json(self, a: Key):
        return a

    def key_from_json(self, data) -> Key:
        return data

    # -- element constructors -------------------------------------------
    def element(self, terms: dict, arity: int = 1) -> "TensorElem":
        return make_elem(self, arity, terms)

    def unit(self, arity: int = 1) -> "TensorElem":
        return make_elem(self, arity, {(self.one,) * arity: _const(ONE, self.order)})

    def zero(self, arity: int = 1) -> "TensorElem":
        return make_elem(self, arity, {})

    def basis_elem(self, *keys: Key, coef=ONE, hpow: int = 0) -> "TensorElem":
        c = [ZERO] * (self.order + 1)
        if hpow <= self.order:
            c[hpow] = as_rational(coef)
        return make_elem(self, len(keys), {tuple(keys): c})

    def scalar(self, s, arity: int = 1) -> "TensorElem":
        if isinstance(s, HSeries):
            if s.order != self.order:
                raise ConfigurationError("h-order mismatch")
            c = list(s.coeffs)
        else:
            c = _const(as_rational(s), self.order)
        return make_elem(self, arity, {(self.one,) * arity: c})

    def h(self, arity: int = 1) -> "TensorElem":
        return self.basis_elem(*((self.one,) * arity), hpow=1)

    def generators(self) -> list["TensorElem"]:
        return [self.basis_elem(k) for k in self.generator_keys()]

    def primitive_power(self, x: "TensorElem", k: int) -> "TensorElem":
        """Δ^{(k)}(x) for primitive x: sum of x placed in each of k slots."""
        out = self.zero(k)
        for i in range(k):
            out = out + x.embed((i,), k)
        return out

    def iterated_coproduct(self, x: "TensorElem", k: int) -> "TensorElem":
        if k == 1:
            return x
        y = x
        for _ in range(k - 1):
            y = y.delta_at(y.arity - 1)
        return y


def _const(c: Rational, order: int) -> Coeffs:
    out = [ZERO] * (order + 1)
    out[0] = c
    return out


def _nonzero(c: Coeffs) -> bool:
    return any(c)


def make_elem(alg: BasisAlgebra, arity: int, terms: dict) -> "TensorElem":
    cls = UEAElem if arity == 1 else TensorElem
    return cls(alg, arity, terms)


class TensorElem:
    """Element of A^{⊗k}[h]/(h^{N+1}), stored sparsely."""

    __slots__ = ("alg", "arity", "terms")

    def __init__(self, alg: BasisAlgebra, arity: int, terms: dict):
        self.alg = alg
        self.arity = arity
        n = alg.order + 1
        clean = {}
        for key, c in terms.items():
            if len(key) != arity:
                raise DomainError(f"key {key!r} does not have arity {arity}")
            if isinstance(c, HSeries):
                if c.order != alg.order:
                    raise ConfigurationError("h-order mismatch")
                c = list(c.coeffs)
            elif not isinstance(c, list):
                c = _const(as_rational(c), alg.order)
            if len(c) != n:
                raise ConfigurationError("coefficient length does not match h-order")
            if _nonzero(c):
                clean[key] = c
        self.terms = clean

    # -- helpers -----------------------------------------------------------
    @property
    def order(self) -> int:
        return self.alg.order

    def _check(self, other: "TensorElem", same_arity: bool = True):
        if not isinstance(other, TensorElem):
            raise TypeError("expected a TensorElem")
        if other.alg is not self.alg:
            raise ConfigurationError("elements belong to different algebra contexts")
        if same_arity and other.arity != self.arity:
            raise DomainError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other):
        if isinstance(other, TensorElem):
            self._check(other)
            return other
        return self.alg.scalar(other, self.arity)

    def coefficient(self, *keys: Key) -> HSeries:
        c = self.terms.get(tuple(keys))
        return HSeries(c if c else [], self.order)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, TensorElem):
            return (other.alg is self.alg and other.arity == self.arity
                    and other.terms == self.terms)
        try:
            return self == self.alg.scalar(other, self.arity)
        except TypeError:
            return NotImplemented

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    # -- linear structure --------------------------------------------------
    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = {k: list(v) for k, v in self.terms.items()}
        for k, v in o.terms.items():
            if k in out:
                out[k] = [a + b for a, b in zip(out[k], v)]
            else:
                out[k] = list(v)
        return make_elem(self.alg, self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return make_elem(self.alg, self.arity, {k: [-a for a in v] for k, v in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "TensorElem":
        if isinstance(s, HSeries):
            return self * self.alg.scalar(s, self.arity)
        s = as_rational(s)
        if not s:
            return self.alg.zero(self.arity)
        return make_elem(self.alg, self.arity, {k: [s * a for a in v] for k, v in self.terms.items()})

    def shift(self, p: int) -> "TensorElem":
        """Multiply by h^p."""
        n = self.order
        out = {}
        for k, v in self.terms.items():
            w = [ZERO] * (n + 1)
            for i in range(n + 1 - p):
                w[i + p] = v[i]
            out[k] = w
        return make_elem(self.alg, self.arity, out)

    def h_coeff(self, p: int) -> "TensorElem":
        """Coefficient of h^p, as an h-constant element."""
        return make_elem(self.alg, self.arity,
                         {k: _const(v[p], self.order) for k, v in self.terms.items() if v[p]})

    def valuation(self) -> int | None:
        best = None
        for v in self.terms.values():
            for i, a in enumerate(v):
                if a:
                    if best is None or i < best:
                        best = i
                    break
        return best

    def mod_h(self, p: int) -> "TensorElem":
        """Drop all h-powers >= p."""
        return make_elem(self.alg, self.arity,
                         {k: [a if i < p else ZERO for i, a in enumerate(v)]
                          for k, v in self.terms.items()})

    def is_h_constant(self) -> bool:
        return all(not any(v[1:]) for v in self.terms.values())

    # -- multiplication ----------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, TensorElem):
            self._check(other)
            return _multiply(self, other)
        if isinstance(other, HSeries):
            return self.scale(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, TensorElem):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.alg.unit(self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def commutator(self, other: "TensorElem") -> "TensorElem":
        return self * other - other * self

    # -- tensor manipulations ---------------------------------------------
    def permute(self, perm: Sequence[int]) -> "TensorElem":
        """Result factor i is the input factor perm[i]; (1, 0) swaps two factors."""
        if sorted(perm) != list(range(self.arity)):
            raise DomainError(f"{perm} is not a permutation of {self.arity} factors")
        return make_elem(self.alg, self.arity,
                         {tuple(k[p] for p in perm): list(v) for k, v in self.terms.items()})

    def transpose(self) -> "TensorElem":
        return self.permute((1, 0))

    def embed(self, positions: Sequence[int], k: int) -> "TensorElem":
        """Place the factors at the given positions of a k-fold tensor, units elsewhere."""
        if len(positions) != self.arity or len(set(positions)) != len(positions) \
                or any(not 0 <= p < k for p in positions):
            raise DomainError(f"cannot embed arity {self.arity} at {positions} in arity {k}")
        one = self.alg.one
        out = {}
        for key, v in self.terms.items():
            new = [one] * k
            for p, b in zip(positions, key):
                new[p] = b
            out[tuple(new)] = list(v)
        return make_elem(self.alg, k, out)

    def tensor(self, other: "TensorElem") -> "TensorElem":
        self._check(other, same_arity=False)
        n = self.order
        out = defaultdict(lambda: [ZERO] * (n + 1))
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                acc = out[k1 + k2]
                _conv_into(acc, v1, v2, 0, ONE, n)
        return make_elem(self.alg, self.arity + other.arity, dict(out))

    def map_factor(self, i: int, fn: Callable[[Key], dict], new_arity_delta: int = 0) -> "TensorElem":
        """Apply a basis-level map to factor i.

        ``fn(key)`` returns {(q, *new_keys): coef}; the new keys replace factor i
        (so a coproduct inserts two keys, a counit none).
        """
        n = self.order
        out = defaultdict(lambda: [ZERO] * (n + 1))
        for key, v in self.terms.items():
            sv = [(t, x) for t, x in enumerate(v) if x]
            if not sv:
                continue
            pre, post = key[:i], key[i + 1:]
            for (q, *newk), c in fn(key[i]).items():
                if q > n or q + sv[0][0] > n:
                    continue
                acc = out[pre + tuple(newk) + post]
                lim = n - q
                for t, x in sv:
                    if t > lim:
                        break
                    acc[t + q] += c * x
        return make_elem(self.alg, self.arity + new_arity_delta, dict(out))

    def delta_at(self, i: int) -> "TensorElem":
        """Apply the coproduct to factor i (arity grows by one)."""
        self._index(i)
        return self.map_factor(i, self.alg.coproduct_basis, 1)

    def counit_at(self, i: int):
        """Apply the counit to factor i; returns an HSeries when arity drops to 0."""
        self._index(i)
        res = self.map_factor(i, lambda b: {(q,): c for q, c in self.alg.counit_basis(b).items()}, -1)
        if self.arity == 1:
            return HSeries(res.terms.get((), []), self.order)
        return res

    def antipode_at(self, i: int) -> "TensorElem":
        self._index(i)
        return self.map_factor(i, self.alg.antipode_basis, 0)

    def _index(self, i: int):
        if not 0 <= i < self.arity:
            raise DomainError(f"factor index {i} out of range for arity {self.arity}")

    def mu(self) -> "TensorElem":
        """Multiply all factors together (arity becomes 1)."""
        alg = self.alg
        n = self.order
        out = defaultdict(lambda: [ZERO] * (n + 1))
        for key, v in self.terms.items():
            partial = {(0, key[0]): ONE}
            for b in key[1:]:
                nxt = defaultdict(Rational)
                for (q, a), c in partial.items():
                    for (q2, ab), d in alg.mul_basis(a, b).items():
                        if q + q2 <= n:
                            nxt[(q + q2, ab)] += c * d
                partial = {k: c for k, c in nxt.items() if c}
            for (q, a), c in partial.items():
                acc = out[(a,)]
                for t in range(n + 1 - q):
                    if v[t]:
                        acc[t + q] += c * v[t]
        return make_elem(alg, 1, dict(out))

    def apply_per_factor(self, fns: Sequence[Callable[[Key], dict] | None]) -> "TensorElem":
        """Apply basis-level linear maps factorwise (None leaves the factor alone)."""
        res = self
        for i, fn in enumerate(fns):
            if fn is not None:
                res = res.map_factor(i, lambda b, fn=fn: {(q, k): c for (q, k), c in fn(b).items()})
        return res

    # -- series ------------------------------------------------------------
    def constant_term(self) -> "TensorElem":
        return self.h_coeff(0)

    def exp(self) -> "TensorElem":
        if self.h_coeff(0):
            raise DomainError("exp needs an element that vanishes mod h")
        total = self.alg.unit(self.arity)
        term = self.alg.unit(self.arity)
        for k in range(1, self.order + 1):
            term = (term * self).scale(Rational(1, k))
            if not term:
                break
            total = total + term
        return total

    def log(self) -> "TensorElem":
        unit = self.alg.unit(self.arity)
        y = self - unit
        if y.h_coeff(0):
            raise DomainError("log needs an element congruent to the unit mod h")
        total = self.alg.zero(self.arity)
        power = unit
        for k in range(1, self.order + 1):
            power = power * y
            if not power:
                break
            total = total + power.scale(Rational((-1) ** (k + 1), k))
        return total

    def inverse(self) -> "TensorElem":
        """Inverse when the constant term is a nonzero multiple of the unit."""
        c0 = self.h_coeff(0)
        unit_key = (self.alg.one,) * self.arity
        if set(c0.terms) != {unit_key}:
            raise NotInvertible("constant term is not an invertible scalar")
        lam = c0.terms[unit_key][0]
        y = self.scale(1 / lam) - self.alg.unit(self.arity)
        total = self.alg.unit(self.arity)
        power = self.alg.unit(self.arity)
        for _ in range(self.order):
            power = power * (-y)
            if not power:
                break
            total = total + power
        return total.scale(1 / lam)

    def is_invariant(self) -> bool:
        """Commutes with Δ^{(k)}(x) for every algebra generator x."""
        for x in self.alg.generators():
            dx = self.alg.iterated_coproduct(x, self.arity)
            if (dx * self - self * dx):
                return False
        return True

    # -- output ------------------------------------------------------------
    def to_json(self) -> dict:
        alg = self.alg
        return {"arity": self.arity,
                "terms": [{"mons": [alg.key_to_json(b) for b in key],
                           "coef": [format_rational(a) for a in v]}
                          for key, v in self.sorted_terms()]}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, v in self.sorted_terms():
            coef = str(HSeries(v, self.order))
            if coef != "1":
                coef = f"({coef})" if " " in coef else coef
            body = " ⊗ ".join(self.alg.basis_str(b) for b in key)
            parts.append(body if coef == "1" else f"{coef}*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{type(self).__name__} arity={self.arity}: {self}>"


class UEAElem(TensorElem):
    """Arity-one tensor: an element of the algebra itself."""

    __slots__ = ()

    def __init__(self, alg, arity=1, terms=None):
        if terms is None:
            terms, arity = arity, 1
        super().__init__(alg, 1, terms)

    def coproduct(self) -> TensorElem:
        return self.delta_at(0)

    def counit(self) -> HSeries:
        return self.counit_at(0)

    def antipode(self) -> "UEAElem":
        return self.antipode_at(0)


def from_json(alg: BasisAlgebra, data: dict | str) -> TensorElem:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        arity = int(data["arity"])
        terms = {}
        for t in data["terms"]:
            key = tuple(alg.key_from_json(m) for m in t["mons"])
            coef = [parse_rational(s) for s in t["coef"]]
            if len(coef) > alg.order + 1:
                if any(coef[alg.order + 1:]):
                    raise ConfigurationError("coefficients beyond the h-order")
                coef = coef[: alg.order + 1]
            coef += [ZERO] * (alg.order + 1 - len(coef))
            if key in terms:
                terms[key] = [a + b for a, b in zip(terms[key], coef)]
            else:
                terms[key] = coef
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed tensor JSON: {exc}") from exc
    return make_elem(alg, arity, terms)


# -- products ----------------------------------------------------------------

def _conv_into(acc: Coeffs, a: Coeffs, b: Coeffs, shift: int, c: Rational, n: int):
    for i in range(n + 1 - shift):
        ai = a[i]
        if not ai:
            continue
        ai = ai * c
        for j in range(n + 1 - shift - i):
            bj = b[j]
            if bj:
                acc[i + j + shift] += ai * bj


def _basis_tensor_product(alg: BasisAlgebra, ka: tuple, kb: tuple) -> dict:
    cache = alg.__dict__.setdefault("_tensor_mul_cache", {})
    hit = cache.get((ka, kb))
    if hit is not None:
        return hit
    partial = {(0, ()): ONE}
    n = alg.order
    for a, b in zip(ka, kb):
        prod = alg.mul_basis(a, b)
        nxt = defaultdict(Rational)
        for (q, key), c in partial.items():
            for (q2, ab), d in prod.items():
                if q + q2 <= n:
                    nxt[(q + q2, key + (ab,))] += c * d
        partial = {k: c for k, c in nxt.items() if c}
    if len(cache) < 1000000:
        cache[(ka, kb)] = partial
    return partial


def _sparse(v: Coeffs) -> list:
    return [(i, c) for i, c in enumerate(v) if c]


def _multiply(x: TensorElem, y: TensorElem) -> TensorElem:
    alg = x.alg
    n = alg.order
    out: dict = {}
    ys = [(kb, _sparse(vb)) for kb, vb in y.terms.items()]
    cache = alg.__dict__.setdefault("_tensor_mul_cache", {})
    for ka, va in x.terms.items():
        sa = _sparse(va)
        a0 = sa[0][0]
        for kb, sb in ys:
            if a0 + sb[0][0] > n:
                continue
            prod = cache.get((ka, kb))
            if prod is None:
                prod = _basis_tensor_product(alg, ka, kb)
            for (q, kc), c in prod.items():
                lim = n - q
                acc = out.get(kc)
                if acc is None:
                    acc = out[kc] = [ZERO] * (n + 1)
                for i, ai in sa:
                    if i > lim:
                        break
                    aic = ai * c
                    for j, bj in sb:
                        if i + j > lim:
                            break
                        acc[i + j + q] += aic * bj
    return make_elem(alg, x.arity, out)


# -- misc operations ---------------------------------------------------------

def alternation(x: TensorElem) -> TensorElem:
    """(1/n!) sum_σ sgn(σ) σ(x)."""
    k = x.arity
    total = x.alg.zero(k)
    for perm in permutations(range(k)):
        total = total + x.permute(perm).scale(_sign(perm))
    return total.scale(Rational(1, factorial(k)))


def _sign(perm: Sequence[int]) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def sum_elems(elems: Iterable[TensorElem], alg: BasisAlgebra, arity: int) -> TensorElem:
    total = alg.zero(arity)
    for e in elems:
        total = total + e
    return total
