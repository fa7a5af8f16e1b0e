"""Point fits: which family automorphisms send a point x to a target v.

Over a finite field the fit is found by enumerating the automorphism group.
Over Q it is solved in closed form by reading leading coefficients, the same
way the hand proofs do, then confirmed by evaluating the automorphism.  The
closed forms cover basis vectors and the 0/1 sums used as probes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from ..automorphisms import PARAM_NAMES, AutParams, aut_family, aut_group
from ..errors import UnsupportedPoint
from ..scalars import Field


@dataclass(frozen=True)
class Relation:
    """``prod name**exp == value``; the last factor has exponent 1."""

    powers: tuple
    value: object

    def __str__(self):
        lhs = "*".join(nm if e == 1 else f"{nm}^{e}" for nm, e in self.powers)
        return f"{lhs} = {self.value}"


@dataclass(frozen=True)
class ParamConstraint:
    bound: dict
    relations: tuple = ()
    free: frozenset = frozenset()

    def describe(self, field: Field):
        return {
            "bound": {k: field.format(v) for k, v in sorted(self.bound.items())},
            "relations": [{"powers": [list(pe) for pe in r.powers], "value": field.format(r.value)} for r in self.relations],
            "free": sorted(self.free),
        }


@dataclass(frozen=True)
class PointFit:
    family: str
    n: int
    point: tuple
    target: tuple
    solutions: tuple = dc_field(default=())  # AutParams (finite field) or ParamConstraint (Q)

    @property
    def empty(self) -> bool:
        return not self.solutions

    def __bool__(self):
        return not self.empty


def fit_at_point(family: str, n: int, x, v, field: Field) -> PointFit:
    family = family.lower()
    x = tuple(field(c) for c in x)
    v = tuple(field(c) for c in v)
    if field.is_finite:
        G = aut_group(family, n, field)
        return PointFit(family, n, x, v, tuple(G.params[t] for t in G.fit(x, v)))
    return PointFit(family, n, x, v, tuple(_rational_fit(family, n, x, v, field)))


def _support(x):
    S = [i for i, c in enumerate(x) if c]
    if any(x[i] != 1 for i in S):
        raise UnsupportedPoint("closed-form fits need a 0/1 point")
    return S


def _rational_fit(family, n, x, v, F):
    S = _support(x)
    if family == "r0":
        branches, needed = _branches_r0(n, S, v, F)
    elif family == "r1":
        branches, needed = _branches_r1(n, S, v, F)
    else:
        branches, needed = _branches_r23(family, n, S, v, F)
    names = PARAM_NAMES[family]
    out = []
    for bound, rels in branches:
        relnames = {nm for r in rels for nm, _ in r.powers}
        if needed - set(bound) - relnames:
            raise UnsupportedPoint(f"point with support {S} is not covered by the closed forms")
        rep = dict(bound)
        ok = True
        for r in rels:
            *head, (last, _) = r.powers
            for nm, _ in head:
                rep.setdefault(nm, F.one)
            denom = math.prod((rep[nm] ** e for nm, e in head), start=F.one)
            if not denom:
                ok = False
                break
            rep[last] = r.value / denom
        if not ok:
            continue
        for nm in names:
            rep.setdefault(nm, F.one)
        P = AutParams(family, **rep)
        if not P.is_admissible():
            continue
        if aut_family(family, n, P, F)(x) != v:
            continue
        c = ParamConstraint(dict(bound), tuple(rels), frozenset(names) - set(bound) - relnames)
        if c not in out:
            out.append(c)
    return out


def _roots_nonzero(F, c, k):
    return [r for r in F.nth_roots(c, k) if r]


def _branches_r0(n, S, v, F):
    if not S:
        return [({}, [])], set()
    m = S[0]
    needed = set()
    for i in S:
        needed |= {"alpha"} if i == 0 else ({"beta"} if i == n else {"alpha", "beta"})
    if m == 0:
        a = v[1]
        if len(S) == 1:
            return [({"alpha": a}, [])], needed
        s2 = S[1]
        if s2 == 1:
            raise UnsupportedPoint("e0 + e1 mixes alpha and beta in one coordinate")
        rhs = v[s2] - a ** s2 / F.factorial(s2)
        return [({"alpha": a, "beta": r}, []) for r in _roots_nonzero(F, rhs, s2)], needed
    if len(S) > 1 and S[1] == m + 1:
        raise UnsupportedPoint("adjacent indices mix in one coordinate")
    roots = _roots_nonzero(F, v[m], m)
    if m == n:
        return [({"beta": r}, []) for r in roots], needed
    return [({"alpha": v[m + 1] / r ** m, "beta": r}, []) for r in roots], needed


def _branches_r1(n, S, v, F):
    X, Y = n, n + 1
    Se = [i + 1 for i in S if i < n]
    hasx = X in S
    needed = set()
    if 1 in Se:
        needed.add("alpha")
    for i in Se:
        if i == 2:
            needed |= {"beta", "gamma"}
        elif i >= 3:
            needed |= {"alpha", "beta"} | ({"gamma"} if i < n else set())
    if hasx:
        needed.add("gamma")
    if 1 in Se and hasx:
        raise UnsupportedPoint("e1 + x mixes alpha and gamma in one coordinate")
    bound, rels = {}, []
    if 1 in Se:
        bound["alpha"] = v[0]
    if hasx:
        bound["gamma"] = v[0]
    rest = [i for i in Se if i >= 2]
    if rest:
        m = rest[0]
        L = v[m - 1]
        if not L:
            return [], needed
        if m == 2:
            bound["beta"] = L
        elif "alpha" in bound:
            if not bound["alpha"]:
                return [], needed
            bound["beta"] = L / bound["alpha"] ** (m - 2)
        else:
            rels.append(Relation((("alpha", m - 2), ("beta", 1)), L))
        if "gamma" not in bound and m < n:
            if m + 1 in Se:
                raise UnsupportedPoint("adjacent indices mix in one coordinate")
            bound["gamma"] = -v[m] / L
        if len(rest) > 1 and not {"alpha", "beta"} <= set(bound):
            raise UnsupportedPoint(f"point with support {S} is not covered by the closed forms")
    return [(bound, rels)], needed


def _branches_r23(family, n, S, v, F):
    X, Y = n, n + 1
    Se = [i + 1 for i in S if i < n]
    hasx, hasy = X in S, Y in S
    needed = set()
    for i in Se:
        if i == 1:
            needed |= {"alpha", "beta"}
        elif i == 2:
            needed.add("gamma")
        elif i < n:
            needed |= {"alpha", "beta"}
        else:
            needed.add("alpha")
    if hasx:
        needed.add("beta")
    if hasy and family == "r2":
        needed.add("delta")
    if 1 in Se and hasx:
        raise UnsupportedPoint("e1 + x mixes alpha and beta in one coordinate")
    if 2 in Se and hasy and family == "r2":
        raise UnsupportedPoint("e2 + y mixes gamma and delta in one coordinate")
    bound = {}
    if 1 in Se:
        bound["alpha"] = v[0]
    if hasx:
        bound["beta"] = v[0]
    if 2 in Se:
        bound["gamma"] = v[1]
    if hasy and family == "r2":
        bound["delta"] = v[1]
    if "alpha" in bound and "beta" not in bound:
        if 3 in Se:
            raise UnsupportedPoint("e1 + e3 mixes alpha and beta in one coordinate")
        if not bound["alpha"]:
            return [], needed
        bound["beta"] = -v[2] / bound["alpha"]
    rest = [i for i in Se if i >= 3]
    branches = [bound]
    if rest and "alpha" not in bound:
        m = rest[0]
        c = v[m - 1]
        if hasx:
            b = bound["beta"]
            c = c - (-1) ** m * b ** (m - 1) / F.factorial(m - 1)
        branches = []
        for a in _roots_nonzero(F, c, m - 1):
            br = dict(bound, alpha=a)
            if "beta" not in br and m < n:
                if m + 1 in Se:
                    raise UnsupportedPoint("adjacent indices mix in one coordinate")
                br["beta"] = -v[m] / a ** (m - 1)
            branches.append(br)
    if len(rest) > 1:
        for br in branches:
            if not {"alpha", "beta"} <= set(br):
                raise UnsupportedPoint(f"point with support {S} is not covered by the closed forms")
    return [(br, []) for br in branches], needed
