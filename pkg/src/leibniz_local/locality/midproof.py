"""Mid-proof matrices: each column drawn from its own automorphism.

Column j of a sample is aut_family(P_j) applied to e_j, where P_j holds only
the parameters that column actually depends on.  A local automorphism has
this shape column by column; the probe proofs then force equalities between
the P_j.  :func:`proof_equalities` lists those equalities directly from the
per-column values, with no use of the verifier.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..automorphisms import PARAM_NAMES, AutParams, LinearMap, aut_family
from ..scalars import QQ
from .probes import basis_names

# candidate values; positive pools keep even powers identifiable
_POS = [Fraction(v) for v in (1, 2, 3)] + [Fraction(1, 2), Fraction(3, 2), Fraction(2, 3)]
_NONZERO = _POS + [-v for v in _POS]
_ANY = [Fraction(0)] + _NONZERO

DOMAINS = {
    "r0": {"alpha": _ANY, "beta": _POS},
    "r1": {"alpha": _NONZERO, "beta": _NONZERO, "gamma": _ANY},
    "r2": {"alpha": _POS, "beta": _ANY, "gamma": _NONZERO, "delta": _ANY},
    "r3": {"alpha": _POS, "beta": _ANY, "gamma": _NONZERO},
}


def column_params(family: str, n: int) -> dict:
    """Column label -> parameters the column depends on."""
    names = basis_names(family, n)
    out = {}
    for lb in names:
        if family == "r0":
            k = int(lb[1:])
            out[lb] = ("alpha",) if k == 0 else ("beta",) if k == n else ("alpha", "beta")
        elif lb == "x":
            out[lb] = ("gamma",) if family == "r1" else ("beta",)
        elif lb == "y":
            out[lb] = ("delta",) if family == "r2" else ()
        else:
            i = int(lb[1:])
            if family == "r1":
                out[lb] = ("alpha",) if i == 1 else ("beta", "gamma") if i == 2 else ("alpha", "beta", "gamma") if i < n else ("alpha", "beta")
            else:
                out[lb] = ("alpha", "beta") if i == 1 else ("gamma",) if i == 2 else ("alpha", "beta") if i < n else ("alpha",)
    return out


@dataclass(frozen=True)
class MidProofSample:
    family: str
    n: int
    mode: str
    values: dict  # (column label, param) -> value
    matrix: LinearMap


def build_midproof(family: str, n: int, values: dict, field=QQ) -> LinearMap:
    names = basis_names(family, n)
    cols = []
    for j, lb in enumerate(names):
        kw = {nm: values.get((lb, nm), 1) for nm in PARAM_NAMES[family]}
        T = aut_family(family, n, AutParams(family, **kw), field, check=False)
        cols.append(T.cols[j])
    return LinearMap(tuple(cols), field)


def sample_midproof(family: str, n: int, rng: random.Random, mode: str = None) -> MidProofSample:
    """Draw one sample.

    Modes: ``consistent`` (all columns share one tuple), ``single`` (one
    column parameter changed), ``random`` (each column parameter kept or
    redrawn with probability 1/2).  Without ``mode`` one is picked at random.
    """
    family = family.lower()
    mode = mode or rng.choice(("consistent", "single", "random"))
    dom = DOMAINS[family]
    base = {nm: rng.choice(dom[nm]) for nm in PARAM_NAMES[family]}
    slots = [(lb, nm) for lb, ps in column_params(family, n).items() for nm in ps]
    values = {s: base[s[1]] for s in slots}
    if mode == "single":
        s = rng.choice(slots)
        values[s] = rng.choice([v for v in dom[s[1]] if v != values[s]])
    elif mode == "random":
        for s in slots:
            if rng.random() < 0.5:
                values[s] = rng.choice(dom[s[1]])
    elif mode != "consistent":
        raise ValueError(f"unknown mode {mode!r}")
    return MidProofSample(family, n, mode, values, build_midproof(family, n, values))


def proof_equalities(family: str, n: int, values: dict) -> list:
    """Equalities the probe proofs derive, as ``(text, holds)`` pairs.

    An equality mentioning a parameter the matrix does not contain is
    vacuous and skipped.
    """
    out = []

    def eq(a, b):
        if a in values and b in values:
            out.append((f"{a[1]}_{a[0]} = {b[1]}_{b[0]}", values[a] == values[b]))

    if family == "r0":
        for k in range(2, n):
            eq(("e0", "alpha"), (f"e{k}", "alpha"))
        for k in range(3, n):
            eq(("e1", "alpha"), (f"e{k}", "alpha"))
            eq(("e1", "beta"), (f"e{k}", "beta"))
        for k in range(4, n):
            eq(("e2", "alpha"), (f"e{k}", "alpha"))
            eq(("e2", "beta"), (f"e{k}", "beta"))
        eq(("e1", "beta"), (f"e{n}", "beta"))
    elif family == "r1":
        for i in range(2, n):
            eq(("x", "gamma"), (f"e{i}", "gamma"))
        a1, b2 = values[("e1", "alpha")], values[("e2", "beta")]
        for i in range(4, n + 1):
            lhs = values[(f"e{i}", "alpha")] ** (i - 2) * values[(f"e{i}", "beta")]
            out.append((f"alpha_e{i}^{i - 2} beta_e{i} = alpha_e1^{i - 2} beta_e2", lhs == a1 ** (i - 2) * b2))
        out.append(("alpha_e3 beta_e3 = alpha_e1 beta_e2", values[("e3", "alpha")] * values[("e3", "beta")] == a1 * b2))
    else:
        for k in range(4, n + 1):
            eq(("e1", "alpha"), (f"e{k}", "alpha"))
        for s in range(4, n):
            eq(("e1", "beta"), (f"e{s}", "beta"))
        eq(("e3", "alpha"), ("e5", "alpha"))
        eq(("e3", "beta"), ("e5", "beta"))
        for k in range(4, n):
            eq(("x", "beta"), (f"e{k}", "beta"))
    return out


def equalities_hold(family, n, values) -> bool:
    return all(ok for _, ok in proof_equalities(family, n, values))
