"""Exact rationals and the truncated deformation ring Q[h]/(h^{N+1})."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Union

from .errors import ConfigurationError, DomainError, NotInvertible

try:  # GMP rationals are several times faster than fractions.Fraction
    from gmpy2 import mpq as Rational, mpz as _mpz
    _RATIONAL_TYPES: tuple = (Rational, Fraction)
    _INT_TYPES: tuple = (int, _mpz)
except ImportError:  # pragma: no cover
    Rational = Fraction
    _RATIONAL_TYPES = (Fraction,)
    _INT_TYPES = (int,)

DEFAULT_ORDER = 4

Scalar = Union[int, Fraction]


def as_rational(x):
    """Coerce ints, rationals and ``"p/q"`` strings to the exact rational type.

    Floats are rejected on purpose: every computation here is exact.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, _RATIONAL_TYPES) or isinstance(x, _INT_TYPES):
        return Rational(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def parse_rational(s: str):
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {s!r}")
    return Rational(Fraction(s))


def format_rational(q) -> str:
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


class HSeries:
    """Truncated polynomial sum_{k<=N} c_k h^k with rational coefficients.

    Instances are immutable; arithmetic is performed modulo h^{N+1} and both
    operands must share the same order N.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable = (), order: int = DEFAULT_ORDER):
        if order < 0:
            raise ConfigurationError("truncation order must be >= 0")
        cs = [as_rational(c) for c in coeffs]
        if len(cs) > order + 1:
            if any(cs[order + 1:]):
                raise ConfigurationError(
                    f"{len(cs)} coefficients given for order {order}")
            cs = cs[: order + 1]
        cs.extend([Rational(0)] * (order + 1 - len(cs)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("HSeries is immutable")

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> "HSeries":
        return cls([c], order)

    @classmethod
    def h(cls, order: int = DEFAULT_ORDER) -> "HSeries":
        return cls([0, 1], order) if order >= 1 else cls([], order)

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other) -> "HSeries":
        if isinstance(other, HSeries):
            if other.order != self.order:
                raise ConfigurationError(
                    f"h-order mismatch: {self.order} vs {other.order}")
            return other
        return HSeries([as_rational(other)], self.order)

    def __getitem__(self, k: int) -> Rational:
        return self.coeffs[k]

    def valuation(self) -> int | None:
        """Lowest k with a nonzero coefficient, or None for zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- ring structure --------------------------------------------------
    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return HSeries([a + b for a, b in zip(self.coeffs, o.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return HSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return HSeries([a - b for a, b in zip(self.coeffs, o.coeffs)], self.order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = self.order
        out = [Rational(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = o.coeffs[j]
                if b:
                    out[i + j] += a * b
        return HSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        result = HSeries([1], self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, HSeries):
            return self * other.invert()
        return self * (Rational(1) / as_rational(other))

    def invert(self) -> "HSeries":
        a0 = self.coeffs[0]
        if not a0:
            raise NotInvertible("constant term is zero")
        n = self.order
        inv = [Rational(0)] * (n + 1)
        inv[0] = 1 / a0
        for k in range(1, n + 1):
            s = sum((self.coeffs[j] * inv[k - j] for j in range(1, k + 1)), Rational(0))
            inv[k] = -s / a0
        return HSeries(inv, n)

    def exp(self) -> "HSeries":
        if self.coeffs[0]:
            raise DomainError("exp needs a series without constant term")
        total = HSeries([1], self.order)
        term = HSeries([1], self.order)
        for k in range(1, self.order + 1):
            term = term * self * Rational(1, k)
            total = total + term
        return total

    def log(self) -> "HSeries":
        if self.coeffs[0] != 1:
            raise DomainError("log needs a series with constant term 1")
        y = self - 1
        total = HSeries([], self.order)
        power = HSeries([1], self.order)
        for k in range(1, self.order + 1):
            power = power * y
            total = total + power * Rational((-1) ** (k + 1), k)
        return total

    # -- comparison / display -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, HSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        try:
            return self.coeffs == HSeries([as_rational(other)], self.order).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"HSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            hk = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(hk)
            else:
                parts.append(f"({c})*{hk}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str], order: int | None = None) -> "HSeries":
        order = len(data) - 1 if order is None else order
        return cls([parse_rational(s) for s in data], order)


def hseries_arith(a: HSeries, b: HSeries, op: str) -> HSeries:
    if a.order != b.order:
        raise ConfigurationError(f"h-order mismatch: {a.order} vs {b.order}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def hseries_invert(a: HSeries) -> HSeries:
    return a.invert()


def hseries_exp_log(a: HSeries, direction: str) -> HSeries:
    if direction == "exp":
        return a.exp()
    if direction == "log":
        return a.log()
    raise ValueError(f"unknown direction {direction!r}")


def inverse_factorial(k: int) -> Rational:
    return Rational(1, factorial(k))
