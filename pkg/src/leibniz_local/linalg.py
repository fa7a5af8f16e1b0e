"""Exact dense linear algebra over a :class:`~leibniz_local.scalars.Field`.

Matrices are row-major lists of lists of field elements.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import Field


def rref(rows, field: Field):
    """Reduced row-echelon form.

    Returns ``(basis, pivots)`` where ``basis`` holds the nonzero RREF rows as
    tuples and ``pivots`` their leading column indices.
    """
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows, field: Field) -> int:
    return len(rref(rows, field)[1])


def det(matrix, field: Field):
    """Determinant by fraction-free (Bareiss) elimination.

    Over Q the rows are first scaled to integers, so all intermediate values
    stay integral and every division is exact.
    """
    n = len(matrix)
    if n == 0:
        return field.one
    if field.is_finite:
        m = [list(r) for r in matrix]
        scale = field.one
    else:
        m = []
        scale = Fraction(1)
        for row in matrix:
            lcm = math.lcm(*(Fraction(x).denominator for x in row))
            m.append([int(Fraction(x) * lcm) for x in row])
            scale *= lcm
    sign = 1
    prev = field.one if field.is_finite else 1
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return field.zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num / prev if field.is_finite else num // prev
            m[i][k] = field.zero if field.is_finite else 0
        prev = m[k][k]
    d = m[n - 1][n - 1] * sign
    return field(d) / scale if not field.is_finite else d


def matmul(a, b):
    """Product of row-major matrices."""
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), start=v[0] * 0) for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n: int, field: Field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
