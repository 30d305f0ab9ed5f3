"""Dense exact linear algebra over Q.

Matrices are lists of rows of Fractions.  Everything here is small (a few
hundred unknowns at most), so plain Gauss-Jordan elimination is adequate.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import Rational
from .errors import NotInvertible

Matrix = list[list[Rational]]
Vector = list[Rational]

ZERO = Rational(0)
ONE = Rational(1)


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Rational(x) for x in r] for r in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = zeros(len(a), ncols)
    for i, row in enumerate(a):
        acc = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += x * bk[j]
    return out


def matvec(a: Matrix, v: Sequence[Rational]) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def vecmat(v: Sequence[Rational], a: Matrix) -> Vector:
    n = len(a[0]) if a else 0
    out = [ZERO] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def rref(rows: Sequence[Sequence[Rational]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = [list(map(Rational, r)) for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pr = None
        for i in range(r, len(a)):
            if a[i][col]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][col]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        prow = a[r]
        for i in range(len(a)):
            if i != r:
                f = a[i][col]
                if f:
                    ai = a[i]
                    a[i] = [x - f * y if y else x for x, y in zip(ai, prow)]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence[Rational]], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(a: Matrix, ncols: int) -> Matrix:
    """Basis of {x : a x = 0}, one vector per free column, in column order."""
    red, pivots = rref(a, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for fcol in free:
        v = [ZERO] * ncols
        v[fcol] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[fcol]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Rational], ncols: int) -> Vector | None:
    """A particular solution of a x = b with free variables set to zero.

    Returns None when the system is inconsistent.  Setting the free variables
    to zero makes the answer canonical for a given column order.
    """
    aug = [list(row) + [Rational(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise NotInvertible("matrix is singular")
    return [row[n:] for row in red]


def det(a: Matrix) -> Rational:
    n = len(a)
    m = [list(r) for r in a]
    d = ONE
    for col in range(n):
        pr = next((i for i in range(col, n) if m[i][col]), None)
        if pr is None:
            return ZERO
        if pr != col:
            m[col], m[pr] = m[pr], m[col]
            d = -d
        piv = m[col][col]
        d *= piv
        for i in range(col + 1, n):
            f = m[i][col] / piv
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return d


def in_span(rows_rref: Matrix, pivots: list[int], v: Sequence[Rational]) -> bool:
    """Membership test against a basis already in RREF."""
    w = list(v)
    for row, p in zip(rows_rref, pivots):
        f = w[p]
        if f:
            w = [x - f * y for x, y in zip(w, row)]
    return not any(w)


def coordinates(rows_rref: Matrix, pivots: list[int], v: Sequence[Rational]) -> Vector | None:
    """Coordinates of v in an RREF basis, or None if v is not in the span."""
    coords = [v[p] for p in pivots]
    recon = [ZERO] * len(v)
    for c, row in zip(coords, rows_rref):
        if c:
            recon = [x + c * y for x, y in zip(recon, row)]
    if any(x != y for x, y in zip(recon, v)):
        return None
    return coords
