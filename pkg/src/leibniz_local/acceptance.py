"""The desk-scale acceptance battery.

Each criterion returns a :class:`CriterionResult`; :func:`run_suite` runs them
in order.  All randomness flows from a single seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import algebra as alg
from .automorphisms import (
    PARAM_NAMES,
    AutParams,
    aut_compose_params_r0,
    aut_family,
    aut_group,
    compose,
    enumerate_aut_bruteforce,
    enumerate_aut_parametrized,
    is_automorphism,
    NONZERO,
)
from .catalog import build
from .locality.fits import fit_at_point
from .locality.midproof import equalities_hold, sample_midproof
from .locality.oracle import (
    FunctionTable,
    PatchworkSpec,
    all_local_linear_maps,
    is_2local,
    make_patchwork,
    pair_has_common_automorphism,
)
from .locality.probes import verify_local_via_probes
from .locality.twolocal import twolocal_collapse
from .scalars import QQ, PrimeField

DEFAULT_SEED = 20240607
FAMILY_OFFSET = {"r0": 0, "r1": 1, "r2": 2, "r3": 3}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: dict = dc_field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.seconds:.2f}s, limit {self.limit:g}s)"

    def to_json(self):
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "limit_seconds": self.limit,
            "detail": self.detail,
        }


def _timed(number, name, limit, fn, *args):
    t0 = time.perf_counter()
    ok, detail = fn(*args)
    dt = time.perf_counter() - t0
    if dt > limit:
        detail = dict(detail, over_time=True)
    return CriterionResult(number, name, bool(ok) and dt <= limit, dt, limit, detail)


def _rand_q(rng, nonzero=False):
    while True:
        v = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if v or not nonzero:
            return v


def random_params(family, rng, field=QQ) -> AutParams:
    vals = {}
    for nm in PARAM_NAMES[family]:
        nz = nm in NONZERO[family]
        if field.is_finite:
            lo = 1 if nz else 0
            vals[nm] = field(rng.randrange(lo, field.p))
        else:
            vals[nm] = _rand_q(rng, nz)
    return AutParams(family, **vals)


# ---- 1, 2: identities and structure ------------------------------------

def c1_identity():
    bad = []
    for fam, ns in (("nf", range(2, 11)), ("r0", range(2, 11)), ("r1", range(4, 11)), ("r2", range(4, 11)), ("r3", range(4, 11))):
        for n in ns:
            v = alg.check_leibniz(build(fam, n, QQ).algebra)
            if v is not None:
                bad.append({"family": fam, "n": n, "triple": list(v.triple)})
    return not bad, {"violations": bad, "checked": 9 * 2 + 7 * 3}


def c2_structure():
    problems = []
    for n in range(2, 11):
        e = build("r0", n, QQ)
        A = e.algebra
        der = alg.derived_series(A).dims
        lcs = alg.lower_central_series(A).dims
        if der != (n + 1, n, n - 1, 0) or lcs != (n + 1, n):
            problems.append({"family": "r0", "n": n, "derived": der, "lower_central": lcs})
        if not alg.is_solvable(A)[0] or alg.is_nilpotent(A)[0]:
            problems.append({"family": "r0", "n": n, "issue": "solvable/nilpotent"})
        N = alg.restrict(A, e.nilradical)
        dims = alg.lower_central_series(N).dims
        if dims != tuple(range(n, -1, -1)) or not alg.is_null_filiform(N):
            problems.append({"family": "r0", "n": n, "nilradical_dims": dims})
    for fam in ("r1", "r2", "r3"):
        for n in range(4, 11):
            e = build(fam, n, QQ)
            N = alg.restrict(e.algebra, e.nilradical)
            dims = alg.lower_central_series(N).dims
            expect = (n,) + tuple(range(n - 2, -1, -1))
            if dims != expect or not alg.is_filiform(N) or alg.antisymmetry_witness(N) is None:
                problems.append({"family": fam, "n": n, "nilradical_dims": dims})
            if not alg.is_solvable(e.algebra)[0]:
                problems.append({"family": fam, "n": n, "issue": "not solvable"})
    return not problems, {"problems": problems}


# ---- 3: automorphism soundness ------------------------------------------

def c3_soundness(seed):
    rng = random.Random(seed + 3)
    bad = []
    for fam in ("r0", "r1", "r2", "r3"):
        for _ in range(100):
            n = rng.randint(4, 8)
            P = random_params(fam, rng)
            if not is_automorphism(build(fam, n, QQ).algebra, aut_family(fam, n, P, QQ)):
                bad.append({"family": fam, "n": n, "params": {k: str(v) for k, v in P.as_dict().items()}})
    degenerate = []
    for n in range(2, 9):
        T = aut_family("r0", n, AutParams("r0", _rand_q(rng), Fraction(0)), QQ, check=False)
        if T.det() != 0:
            degenerate.append(n)
    return not bad and not degenerate, {"failures": bad, "beta0_nonsingular": degenerate}


# ---- 4, 5: finite-field completeness oracles ----------------------------

def c4_bruteforce():
    out = {}
    ok = True
    for p in (3, 5):
        F = PrimeField(p)
        t0 = time.perf_counter()
        brute = enumerate_aut_bruteforce(build("r0", 2, F).algebra)
        par = enumerate_aut_parametrized("r0", 2, F)
        out[f"F{p}"] = {"bruteforce": len(brute), "parametrized": len(par), "equal": brute == par,
                        "seconds": round(time.perf_counter() - t0, 3)}
        ok &= brute == par
    return ok, out


def c5_local_oracle(workers):
    out = {}
    ok = True
    for p in (3, 5):
        F = PrimeField(p)
        A = build("r0", 2, F).algebra
        t0 = time.perf_counter()
        brute = enumerate_aut_bruteforce(A)
        local = all_local_linear_maps(A, brute, workers=workers)
        out[f"F{p}"] = {"maps_scanned": p ** 9, "local": len(local), "aut": len(brute), "equal": local == brute,
                        "seconds": round(time.perf_counter() - t0, 3)}
        ok &= local == brute
    return ok, out


# ---- 6: probe collapse ---------------------------------------------------

def _recheck_local_failure(fam, n, phi, verdict):
    """Independent evidence that a failure verdict is genuine."""
    A = build(fam, n, QQ).algebra
    if is_automorphism(A, phi):
        return False
    if verdict.kind == "probe_failure":
        s = verdict.probe.vector(A.dim, QQ)
        return fit_at_point(fam, n, s, phi(s), QQ).empty
    if verdict.kind == "column_orbit_failure":
        j = verdict.index
        return fit_at_point(fam, n, A.basis_vector(j), phi.cols[j], QQ).empty
    if verdict.kind == "collapse_failure" and verdict.params is not None:
        return aut_family(fam, n, verdict.params, QQ, check=False).cols[verdict.index] != phi.cols[verdict.index]
    return True


def c6_probes(seed, n=5, samples=200):
    detail = {}
    ok = True
    for fam in ("r0", "r1", "r2", "r3"):
        rng = random.Random(seed * 31 + FAMILY_OFFSET[fam])
        stats = {"automorphism": 0, "failures": 0, "mismatches": 0, "bad_witness": 0, "unconfirmed": 0}
        first = None
        A = build(fam, n, QQ).algebra
        for _ in range(samples):
            s = sample_midproof(fam, n, rng)
            v = verify_local_via_probes(fam, n, s.matrix)
            expect = equalities_hold(fam, n, s.values)
            if v:
                stats["automorphism"] += 1
                if not is_automorphism(A, s.matrix):
                    stats["unconfirmed"] += 1
            else:
                stats["failures"] += 1
                if not _recheck_local_failure(fam, n, s.matrix, v):
                    stats["bad_witness"] += 1
            if bool(v) != expect:
                stats["mismatches"] += 1
                if first is None:
                    first = {
                        "mode": s.mode,
                        "verdict": v.kind,
                        "column": v.index,
                        "values": {f"{nm}_{lb}": str(val) for (lb, nm), val in sorted(s.values.items())},
                    }
        fam_ok = stats["mismatches"] == stats["bad_witness"] == stats["unconfirmed"] == 0
        ok &= fam_ok
        detail[fam] = dict(stats, passed=fam_ok, first_mismatch=first)
    return ok, detail


# ---- 7, 8: 2-local oracles -----------------------------------------------

def random_patchwork(rng, family, n, p) -> PatchworkSpec:
    F = PrimeField(p)
    d = n + 1 if family == "r0" else n + 2
    P = p ** d
    default = random_params(family, rng, F)
    r = rng.random()
    if r < 0.1:
        codes = []
    elif r < 0.5:
        codes = [rng.randrange(1, P)]
    elif r < 0.8:
        codes = rng.sample(range(1, P), rng.randint(2, 5))
    else:
        codes = range(P)
    return PatchworkSpec(family, n, p, default, {c: random_params(family, rng, F) for c in codes})


def c7_twolocal(seed, count=500):
    p = 5
    F = PrimeField(p)
    A = build("r0", 2, F).algebra
    G = aut_group("r0", 2, F)
    aut_tables = {FunctionTable.from_linear_map(T) for T in G.maps}
    bad_aut = [i for i, T in enumerate(G.maps) if not is_2local(A, G, FunctionTable.from_linear_map(T))]
    rng = random.Random(seed + 7)
    stats = {"passed_2local": 0, "failed_2local": 0, "bad_witness": 0, "passing_not_aut": 0}
    failing = []
    for _ in range(count):
        D = make_patchwork(random_patchwork(rng, "r0", 2, p))
        v = is_2local(A, G, D)
        if v:
            stats["passed_2local"] += 1
            if D not in aut_tables:
                stats["passing_not_aut"] += 1
        else:
            stats["failed_2local"] += 1
            failing.append(D)
            if pair_has_common_automorphism(G.maps, D, *v.pair):
                stats["bad_witness"] += 1
    ok = not bad_aut and stats["bad_witness"] == 0 and stats["passing_not_aut"] == 0
    return ok, dict(stats, aut_tables=len(aut_tables), aut_tables_failing=bad_aut), failing


def c8_collapse(seed, failing):
    rng = random.Random(seed + 8)
    detail = {}
    ok = True
    F5 = PrimeField(5)
    wrong = 0
    for _ in range(50):
        P = random_params("r0", rng, F5)
        D = FunctionTable.from_linear_map(aut_family("r0", 2, P, F5))
        v = twolocal_collapse("r0", 2, 5, D)
        wrong += not (v and v.params == P)
    detail["r0_F5"] = {"tables": 50, "wrong": wrong}
    ok &= wrong == 0
    F7 = PrimeField(7)
    for fam in ("r1", "r2", "r3"):
        wrong = 0
        for _ in range(50):
            P = random_params(fam, rng, F7)
            T = aut_family(fam, 5, P, F7)
            v = twolocal_collapse(fam, 5, 7, lambda x, T=T: T(tuple(F7(c) for c in x)), seed=rng.randrange(2**31))
            wrong += not (v and v.params == P)
        detail[f"{fam}_F7"] = {"tables": 50, "wrong": wrong}
        ok &= wrong == 0
    missed = sum(1 for D in failing if twolocal_collapse("r0", 2, 5, D).kind != "anchor_failure")
    detail["mutated"] = {"tables": len(failing), "not_flagged": missed}
    ok &= missed == 0
    return ok, detail


# ---- 9: composition --------------------------------------------------------

def c9_composition(seed):
    rng = random.Random(seed + 9)
    bad = []
    for _ in range(100):
        n = rng.randint(2, 6)
        p1, p2 = random_params("r0", rng), random_params("r0", rng)
        lhs = compose(aut_family("r0", n, p1, QQ), aut_family("r0", n, p2, QQ))
        rhs = aut_family("r0", n, aut_compose_params_r0(p1, p2), QQ)
        if lhs != rhs:
            bad.append({"n": n, "p1": [str(x) for x in p1.values()], "p2": [str(x) for x in p2.values()]})
    return not bad, {"pairs": 100, "failures": bad}


def run_suite(seed=DEFAULT_SEED, workers=None, only=None, echo=None) -> list:
    """Run criteria 1..9 (or the numbers in ``only``); ``echo`` gets each line."""
    results = []
    failing = []

    def run(number, name, limit, fn, *args):
        if only and number not in only:
            return
        r = _timed(number, name, limit, fn, *args)
        results.append(r)
        if echo:
            echo(r.line())

    def c7():
        ok, detail, tables = c7_twolocal(seed)
        failing.extend(tables)
        return ok, detail

    def c8():
        if not failing:
            failing.extend(c7_twolocal(seed)[2])
        return c8_collapse(seed, failing)

    run(1, "Leibniz identity for every catalog family", 5, c1_identity)
    run(2, "series dimensions and nilradical shapes", 5, c2_structure)
    run(3, "random family parameters give automorphisms", 30, c3_soundness, seed)
    run(4, "brute-force Aut(R0(2)) over F_3, F_5 equals the family", 600, c4_bruteforce)
    run(5, "linear local maps on R0(2) over F_3, F_5 are automorphisms", 900, c5_local_oracle, workers)
    run(6, "probe collapse agrees with the proof equalities at n=5", 60, c6_probes, seed)
    run(7, "2-local tables on R0(2) over F_5 are automorphisms", 120, c7)
    run(8, "anchor collapse recovers parameters and flags mutations", 120, c8)
    run(9, "R0 parameter composition matches matrix products", 5, c9_composition, seed)
    return results
