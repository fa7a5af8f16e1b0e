"""Anchor collapse for 2-local maps over F_p.

A 2-local map agrees with some automorphism on every pair of points.
Pairing a point with a fixed anchor pins the parameters that the anchor
sees.  A few anchors pin every parameter, which yields a single candidate
automorphism; Delta is then compared with it on a sample of points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .. import fpspace
from ..automorphisms import AutParams, aut_group
from ..errors import AnchorFailure
from ..scalars import PrimeField
from .oracle import FunctionTable
from .probes import basis_names


def anchors(family: str, n: int) -> list:
    """(label, coordinate tuple) anchors per family."""
    names = basis_names(family, n)
    d = len(names)

    def vec(*labels):
        return tuple(1 if nm in labels else 0 for nm in names)

    if family == "r0":
        return [("e1", vec("e1"))]
    if family == "r1":
        return [("e1", vec("e1")), ("e2", vec("e2")), ("e1+e2", vec("e1", "e2"))]
    assert d == n + 2
    return [("e1", vec("e1")), ("e2", vec("e2")), ("y", vec("y"))]


@dataclass(frozen=True)
class CollapseVerdict:
    kind: str  # automorphism | anchor_failure
    params: AutParams = None
    point: tuple = None
    anchor: str = None

    def __bool__(self):
        return self.kind == "automorphism"


def _evaluate(delta, x, p):
    if isinstance(delta, FunctionTable):
        return delta(x)
    return tuple(int(c) % p for c in delta(tuple(x)))


def default_sample(family, n, p, rng: random.Random, extra=200):
    """Basis vectors, anchors, pairwise sums and ``extra`` seeded random points."""
    d = len(basis_names(family, n))
    pts = set()
    E = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    pts.update(E)
    pts.update(a for _, a in anchors(family, n))
    for i in range(d):
        for j in range(i + 1, d):
            pts.add(tuple(a + b for a, b in zip(E[i], E[j])))
    for _ in range(extra):
        pts.add(tuple(rng.randrange(p) for _ in range(d)))
    return sorted(pts)


def twolocal_collapse(family: str, n: int, p: int, delta, sample=None, seed: int = 0) -> CollapseVerdict:
    """Read the parameters from the anchors and verify Delta against them.

    ``delta`` is a FunctionTable, verified at every point unless ``sample`` is
    given, or a callable on coordinate tuples, verified on ``sample`` (by
    default :func:`default_sample`).  Raises AnchorFailure when the anchors
    admit no common automorphism at all.
    """
    family = family.lower()
    F = PrimeField(p)
    G = aut_group(family, n, F)
    anc = anchors(family, n)

    def mask(x):
        m = np.zeros(len(G), dtype=bool)
        m[G.fit(x, _evaluate(delta, x, p))] = True
        return m

    masks = [(lb, a, mask(a)) for lb, a in anc]
    common = np.ones(len(G), dtype=bool)
    for lb, a, m in masks:
        if not m.any():
            raise AnchorFailure(a, lb)
        common &= m
        if not common.any():
            raise AnchorFailure(a, lb)
    t = int(np.flatnonzero(common)[0])
    P, T = G.params[t], G.maps[t]
    if sample is None:
        if isinstance(delta, FunctionTable):
            sample = (tuple(int(c) for c in x) for x in fpspace.points(p, G.dim))
        else:
            sample = default_sample(family, n, p, random.Random(seed))
    for x in sample:
        got = _evaluate(delta, x, p)
        want = tuple(int(c) for c in T(tuple(F(c) for c in x)))
        if got == want:
            continue
        mx = mask(x)
        for lb, a, m in masks:
            if not (mx & m).any():
                return CollapseVerdict("anchor_failure", params=P, point=tuple(x), anchor=lb)
        return CollapseVerdict("anchor_failure", params=P, point=tuple(x), anchor="+".join(lb for lb, _ in anc) + " (jointly)")
    return CollapseVerdict("automorphism", params=P)
