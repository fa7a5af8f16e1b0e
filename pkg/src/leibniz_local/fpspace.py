"""Integer-array view of F_p^d used by the exhaustive oracles.

Points of F_p^d are enumerated in lexicographic order of their coordinate
tuples (first coordinate most significant); a point's *code* is its rank in
that order, ``sum_i x_i p^(d-1-i)``.
"""

from __future__ import annotations

import itertools

import numpy as np


def weights(p: int, d: int) -> np.ndarray:
    return np.array([p ** (d - 1 - i) for i in range(d)], dtype=np.int64)


def points(p: int, d: int) -> np.ndarray:
    """All p^d points as a (p^d, d) int64 array, in code order."""
    return np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(-1, d)


def encode(arr, p: int) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    return (arr % p) @ weights(p, arr.shape[-1])


def decode(code: int, p: int, d: int) -> tuple:
    out = []
    for _ in range(d):
        code, r = divmod(int(code), p)
        out.append(r)
    return tuple(reversed(out))


def vec_to_ints(v) -> tuple:
    return tuple(int(x) for x in v)


def structure_tensor(A) -> np.ndarray:
    """c[i, j, k] with [e_i, e_j] = sum_k c[i, j, k] e_k, as residues."""
    p = A.field.p
    c = np.zeros((A.dim, A.dim, A.dim), dtype=np.int64)
    for i, j, k, val in A.entries():
        c[i, j, k] = int(val) % p
    return c


def det_mod_p(m, p: int) -> int:
    """Determinant of a small integer matrix modulo p (Gaussian elimination)."""
    a = [[int(x) % p for x in row] for row in m]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p
