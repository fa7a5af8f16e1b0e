"""Probe-sum verification of local automorphisms.

A linear map Phi is local when every Phi(x) lies in the orbit of x.  The
hand proofs only use this at basis vectors and at a short list of sums; as
Phi is linear, Phi(s) for a sum is the sum of columns, and requiring it to be
in the orbit of s ties the per-column parameters together.  After the probes
the parameters are read off a few columns and Phi is compared with the
automorphism they define.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..automorphisms import PARAM_NAMES, AutParams, LinearMap, aut_family, is_automorphism
from ..catalog import build
from ..errors import DimensionMismatch, NTooSmallForProbes
from .fits import ParamConstraint, fit_at_point

PROBE_MIN_N = 5


@dataclass(frozen=True)
class Probe:
    support: tuple  # basis indices summed
    label: str
    step: str

    def vector(self, dim, field):
        return tuple(field.one if i in self.support else field.zero for i in range(dim))


@dataclass(frozen=True)
class ProbeSet:
    family: str
    n: int
    probes: tuple

    def labels(self):
        return [p.label for p in self.probes]

    def __iter__(self):
        return iter(self.probes)

    def __len__(self):
        return len(self.probes)


def basis_names(family, n):
    if family == "r0":
        return [f"e{i}" for i in range(n + 1)]
    return [f"e{i}" for i in range(1, n + 1)] + ["x", "y"]


def _probe(names, step, *labels):
    idx = tuple(sorted(names.index(lb) for lb in labels))
    return Probe(idx, "+".join(labels), step)


def probe_set(family: str, n: int) -> ProbeSet:
    family = family.lower()
    if family not in PARAM_NAMES:
        raise ValueError(f"no probe set for family {family!r}")
    if n < PROBE_MIN_N:
        raise NTooSmallForProbes(f"probe sets need n >= {PROBE_MIN_N}, got {n}")
    nm = basis_names(family, n)
    out = []
    if family == "r0":
        out += [_probe(nm, "alpha_e0 = alpha_ek", "e0", f"e{k}") for k in range(2, n)]
        out += [_probe(nm, "alpha_e1, beta_e1 = alpha_ek, beta_ek", "e1", f"e{k}") for k in range(3, n)]
        out += [_probe(nm, "alpha_e2, beta_e2 = alpha_ek, beta_ek", "e2", f"e{k}") for k in range(4, n)]
        out.append(_probe(nm, "beta_e1 = beta_en", "e1", f"e{n}"))
    elif family == "r1":
        out += [_probe(nm, "gamma_x = gamma_ei", f"e{i}", "x") for i in range(2, n)]
        out += [_probe(nm, "alpha_ei^(i-2) beta_ei = alpha_e1^(i-2) beta_e2", "e1", "e2", f"e{i}") for i in range(4, n + 1)]
        out.append(_probe(nm, "alpha_e3 beta_e3 = alpha_e1 beta_e2", "e1", "e3", "e5"))
    else:
        out += [_probe(nm, "alpha_e1 = alpha_ek, beta_e1 = beta_ek", "e1", f"e{k}") for k in range(4, n + 1)]
        out.append(_probe(nm, "alpha_e3 = alpha_e5, beta_e3 = beta_e5", "e3", "e5"))
        out += [_probe(nm, "beta_x = beta_ek", "x", f"e{k}") for k in range(4, n)]
    return ProbeSet(family, n, tuple(out))


@dataclass(frozen=True)
class LocalVerdict:
    kind: str  # automorphism | column_orbit_failure | probe_failure | collapse_failure
    params: AutParams = None
    index: int = None
    probe: Probe = None

    def __bool__(self):
        return self.kind == "automorphism"


# which column fixes each parameter in the collapse
_COLLAPSE = {
    "r0": {"alpha": "e0", "beta": "e1"},
    "r1": {"alpha": "e1", "beta": "e2", "gamma": "x"},
    "r2": {"alpha": "e1", "beta": "e1", "gamma": "e2", "delta": "y"},
    "r3": {"alpha": "e1", "beta": "e1", "gamma": "e2"},
}


def _read(fit, name):
    vals = set()
    for s in fit.solutions:
        if isinstance(s, ParamConstraint):
            if name not in s.bound:
                return None
            vals.add(s.bound[name])
        else:
            vals.add(getattr(s, name))
    return vals.pop() if len(vals) == 1 else None


def verify_local_via_probes(family: str, n: int, phi: LinearMap) -> LocalVerdict:
    family = family.lower()
    probes = probe_set(family, n)
    F = phi.field
    entry = build(family, n, F)
    d = entry.algebra.dim
    if phi.dim != d:
        raise DimensionMismatch(f"{phi.dim}x{phi.dim} map for {family.upper()}({n}) of dim {d}")
    names = basis_names(family, n)
    fits = []
    for j in range(d):
        e = entry.algebra.basis_vector(j)
        f = fit_at_point(family, n, e, phi.cols[j], F)
        if f.empty:
            return LocalVerdict("column_orbit_failure", index=j)
        fits.append(f)
    for pr in probes:
        s = pr.vector(d, F)
        if fit_at_point(family, n, s, phi(s), F).empty:
            return LocalVerdict("probe_failure", probe=pr)
    vals = {}
    for name, col in _COLLAPSE[family].items():
        v = _read(fits[names.index(col)], name)
        if v is None:
            return LocalVerdict("collapse_failure", index=names.index(col))
        vals[name] = v
    P = AutParams(family, **vals)
    T = aut_family(family, n, P, F, check=False)
    for j in range(d):
        if T.cols[j] != phi.cols[j]:
            return LocalVerdict("collapse_failure", params=P, index=j)
    if not P.is_admissible() or not is_automorphism(entry.algebra, phi):
        return LocalVerdict("collapse_failure", params=P)
    return LocalVerdict("automorphism", params=P)
