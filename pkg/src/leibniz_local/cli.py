"""Command-line interface.

Exit status: 0 when every verdict passes, 1 on a mathematical failure (the
report carries a witness), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, algebra as alg, io
from .acceptance import DEFAULT_SEED, run_suite
from .automorphisms import (
    PARAM_NAMES,
    AutParams,
    aut_family,
    enumerate_aut_bruteforce,
    enumerate_aut_parametrized,
    is_automorphism,
)
from .catalog import FAMILIES, build
from .errors import AnchorFailure, LeibnizError, ParseError
from .locality.oracle import is_2local, is_local_automorphism_exhaustive, make_patchwork
from .locality.probes import verify_local_via_probes
from .locality.twolocal import twolocal_collapse
from .scalars import QQ, Fp, PrimeField, field_from_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Report:
    def __init__(self, argv, seed, timings=True):
        self.data = {
            "command": list(argv),
            "version": __version__,
            "seed": seed,
            "inputs": {},
            "verdicts": {},
            "witnesses": {},
        }
        if timings:
            self.data["timings"] = {}
        self.ok = True

    def input(self, path):
        self.data["inputs"][str(path)] = hashlib.sha256(Path(path).read_bytes()).hexdigest()

    def verdict(self, name, passed, value=None, witness=None):
        self.data["verdicts"][name] = value if value is not None else ("pass" if passed else "fail")
        if witness is not None:
            self.data["witnesses"][name] = witness
        self.ok &= bool(passed)

    def time(self, name, seconds):
        if "timings" in self.data:
            self.data["timings"][name] = round(seconds, 3)

    def emit(self, path=None):
        text = json.dumps(self.data, indent=2, default=_json_default) + "\n"
        if path:
            Path(path).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)


def _json_default(o):
    if isinstance(o, Fraction):
        return QQ.format(o)
    if isinstance(o, Fp):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _fmt_vec(v):
    return [str(QQ.format(c)) if isinstance(c, Fraction) else str(c) for c in v]


def _params_json(P, field):
    return {k: field.format(v) for k, v in P.as_dict().items()}


def _load_algebra(path, rep):
    rep.input(path)
    return io.algebra_from_json(io.load_json(path), where=str(path))


def _family_of(catalog, cmd):
    if not catalog or catalog.get("family") not in PARAM_NAMES:
        raise ParseError(f"{cmd} needs an algebra built by the catalog (with a 'catalog' block naming R0..R3)")
    return catalog["family"], int(catalog["n"])


def _reduce(A, field):
    """The same structure constants read modulo p."""
    return alg.Algebra.from_entries(A.dim, field, [(i, j, k, field(c)) for i, j, k, c in A.entries()], A.basis_names)


def _workers(args):
    if args.workers is not None:
        return args.workers
    env = os.environ.get("LEIBNIZ_WORKERS")
    return int(env) if env else (os.cpu_count() or 1)


# ---- subcommands -------------------------------------------------------

def cmd_build(args, rep):
    field = field_from_text(args.field)
    entry = build(args.family, args.n, field)
    io.dump_json(io.algebra_to_json(entry.algebra, entry.meta()), args.out)
    rep.verdict("build", True, witness={"written": args.out} if args.out else None)
    if not args.out:
        rep.data["algebra"] = io.algebra_to_json(entry.algebra, entry.meta())


def cmd_check(args, rep):
    A, _ = _load_algebra(args.algebra, rep)
    what = args.what
    if what in ("leibniz", "all"):
        t0 = time.perf_counter()
        v = alg.check_leibniz(A)
        rep.time("leibniz", time.perf_counter() - t0)
        w = None if v is None else {"triple": [A.basis_names[i] for i in v.triple], "lhs": _fmt_vec(v.lhs), "rhs": _fmt_vec(v.rhs)}
        rep.verdict("leibniz", v is None, "ok" if v is None else "violated", w)
    if what in ("series", "all"):
        rep.data["series"] = {
            "derived": list(alg.derived_series(A).dims),
            "lower_central": list(alg.lower_central_series(A).dims),
        }
    if what in ("predicates", "all"):
        sol, s = alg.is_solvable(A)
        nil, k = alg.is_nilpotent(A)
        anti = alg.antisymmetry_witness(A)
        rep.data["predicates"] = {
            "solvable": sol,
            "solvability_index": s,
            "nilpotent": nil,
            "nilpotency_index": k,
            "null_filiform": alg.is_null_filiform(A),
            "filiform": alg.is_filiform(A),
            "antisymmetric": anti is None,
            "antisymmetry_witness": None if anti is None else [A.basis_names[i] for i in anti],
        }


def _parse_params(text, family, field):
    parts = [s for s in text.split(",") if s.strip()]
    names = PARAM_NAMES[family]
    if len(parts) != len(names):
        raise ParseError(f"{family} takes {len(names)} parameters ({', '.join(names)}), got {len(parts)}", "--params")
    return AutParams(family, **{nm: field.parse(s) for nm, s in zip(names, parts)})


def cmd_aut_make(args, rep):
    field = field_from_text(args.field)
    P = _parse_params(args.params, args.family, field)
    T = aut_family(args.family, args.n, P, field)
    io.dump_json(io.map_to_json(T), args.out)
    rep.verdict("aut_make", True)
    if not args.out:
        rep.data["map"] = io.map_to_json(T)


def cmd_aut_verify(args, rep):
    A, _ = _load_algebra(args.algebra, rep)
    rep.input(args.map)
    T = io.map_from_json(io.load_json(args.map), A.field, where=str(args.map))
    if T.field != A.field:
        raise ParseError("map and algebra live over different fields", str(args.map))
    v = is_automorphism(A, T)
    w = None
    if v.kind == "not_homomorphic":
        w = {"pair": [A.basis_names[i] for i in v.pair], "failing_pairs": [[A.basis_names[i] for i in pr] for pr in v.failures]}
    rep.verdict("automorphism", bool(v), v.kind, w)


def cmd_aut_enumerate(args, rep):
    A, catalog = _load_algebra(args.algebra, rep)
    if not A.field.is_finite:
        raise ParseError("enumeration needs a finite field", "field")
    t0 = time.perf_counter()
    if args.method == "param":
        fam, n = _family_of(catalog, "aut enumerate --method param")
        S = enumerate_aut_parametrized(fam, n, A.field)
    else:
        S = enumerate_aut_bruteforce(A)
    rep.time("enumerate", time.perf_counter() - t0)
    rep.data["count"] = len(S)
    rep.verdict("enumerate", True, str(len(S)))
    if args.save:
        io.dump_json(io.map_set_to_json(S, A.field), args.save)


def _aut_for(A, catalog):
    if catalog and catalog.get("family") in PARAM_NAMES:
        return enumerate_aut_parametrized(catalog["family"], int(catalog["n"]), A.field)
    return enumerate_aut_bruteforce(A)


def cmd_local_check(args, rep):
    A, catalog = _load_algebra(args.algebra, rep)
    rep.input(args.map)
    T = io.map_from_json(io.load_json(args.map), A.field, where=str(args.map))
    if args.p is not None and not A.field.is_finite:
        F = PrimeField(args.p)
        A = _reduce(A, F)
        T = type(T)(tuple(tuple(F(c) for c in col) for col in T.cols), F)
    t0 = time.perf_counter()
    if args.mode == "probes":
        fam, n = _family_of(catalog, "local check --mode probes")
        v = verify_local_via_probes(fam, n, T)
        w = None
        if v.kind == "probe_failure":
            w = {"probe": v.probe.label, "step": v.probe.step}
        elif v.index is not None:
            w = {"column": A.basis_names[v.index]}
        if v.params is not None:
            rep.data["params"] = _params_json(v.params, T.field)
        rep.verdict("local", bool(v), v.kind, w)
    else:
        if not A.field.is_finite:
            raise ParseError("exhaustive mode needs a finite field (use --p)", "--mode")
        v = is_local_automorphism_exhaustive(A, _aut_for(A, catalog), T)
        rep.verdict("local", bool(v), "local" if v else "not_local", None if v else {"point": list(v.witness)})
    rep.time("local", time.perf_counter() - t0)


def cmd_twolocal_check(args, rep):
    A, catalog = _load_algebra(args.algebra, rep)
    rep.input(args.table)
    D = io.table_from_json(io.load_json(args.table), where=str(args.table))
    t0 = time.perf_counter()
    v = is_2local(A, _aut_for(A, catalog), D)
    rep.verdict("two_local", bool(v), "yes" if v else "no", None if v else {"pair": [list(v.pair[0]), list(v.pair[1])]})
    if args.collapse:
        fam, n = _family_of(catalog, "twolocal check --collapse")
        try:
            c = twolocal_collapse(fam, n, D.p, D)
        except AnchorFailure as exc:
            rep.verdict("collapse", False, "anchor_failure", {"point": list(exc.point), "anchor": exc.anchor})
        else:
            w = None if c else {"point": list(c.point), "anchor": c.anchor}
            rep.verdict("collapse", bool(c), c.kind, w)
            if c.params is not None:
                rep.data["params"] = _params_json(c.params, PrimeField(D.p))
    rep.time("two_local", time.perf_counter() - t0)


def cmd_twolocal_patchwork(args, rep):
    rep.input(args.spec)
    spec = io.patchwork_from_json(io.load_json(args.spec), where=str(args.spec))
    D = make_patchwork(spec)
    io.dump_json(io.table_to_json(D), args.out)
    rep.verdict("patchwork", True)


def cmd_acceptance(args, rep):
    if args.suite != "desk":
        raise ParseError(f"unknown suite {args.suite!r}", "--suite")
    only = {int(s) for s in args.only.split(",")} if args.only else None
    echo = (lambda line: print(line, file=sys.stderr)) if not args.quiet else None
    results = run_suite(seed=args.seed, workers=_workers(args), only=only, echo=echo)
    rep.data["criteria"] = [r.to_json() for r in results]
    for r in results:
        rep.verdict(f"criterion_{r.number}", r.passed)
        rep.time(f"criterion_{r.number}", r.seconds)


# ---- parser ------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="leibniz-local", description="Leibniz algebra automorphism and locality checks")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for randomized checks (default {DEFAULT_SEED})")
    ap.add_argument("--workers", type=int, default=None, help="worker processes (default: $LEIBNIZ_WORKERS or CPU count)")
    ap.add_argument("--report", default=None, help="write the JSON report here instead of stdout")
    ap.add_argument("--no-timings", action="store_true", help="omit timings so reports are byte-identical across runs")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="build a catalog algebra")
    b.add_argument("family", choices=FAMILIES)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--field", default="Q", help="Q or fp:P")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="Leibniz identity, series and predicates")
    c.add_argument("--algebra", required=True)
    c.add_argument("--what", choices=("leibniz", "series", "predicates", "all"), default="all")
    c.add_argument("--out", dest="report_out")
    c.set_defaults(func=cmd_check)

    a = sub.add_parser("aut", help="automorphisms").add_subparsers(dest="aut_cmd", required=True)
    m = a.add_parser("make")
    m.add_argument("family", choices=tuple(PARAM_NAMES))
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--field", default="Q")
    m.add_argument("--params", required=True, help="comma separated, e.g. 1,2 or 1/2,3,0")
    m.add_argument("--out")
    m.set_defaults(func=cmd_aut_make)
    v = a.add_parser("verify")
    v.add_argument("--algebra", required=True)
    v.add_argument("--map", required=True)
    v.add_argument("--out", dest="report_out")
    v.set_defaults(func=cmd_aut_verify)
    e = a.add_parser("enumerate")
    e.add_argument("--algebra", required=True)
    e.add_argument("--method", choices=("brute", "param"), default="brute")
    e.add_argument("--save", help="write the automorphism set as JSON")
    e.add_argument("--out", dest="report_out")
    e.set_defaults(func=cmd_aut_enumerate)

    lo = sub.add_parser("local", help="local automorphisms").add_subparsers(dest="local_cmd", required=True)
    lc = lo.add_parser("check")
    lc.add_argument("--algebra", required=True)
    lc.add_argument("--map", required=True)
    lc.add_argument("--mode", choices=("probes", "exhaustive"), required=True)
    lc.add_argument("--p", type=int, help="read a rational algebra and map modulo p")
    lc.add_argument("--out", dest="report_out")
    lc.set_defaults(func=cmd_local_check)

    tl = sub.add_parser("twolocal", help="2-local automorphisms").add_subparsers(dest="tl_cmd", required=True)
    tc = tl.add_parser("check")
    tc.add_argument("--algebra", required=True)
    tc.add_argument("--table", required=True)
    tc.add_argument("--collapse", action="store_true", help="also run the anchor collapse")
    tc.add_argument("--out", dest="report_out")
    tc.set_defaults(func=cmd_twolocal_check)
    tp = tl.add_parser("patchwork")
    tp.add_argument("--spec", required=True)
    tp.add_argument("--out", required=True)
    tp.set_defaults(func=cmd_twolocal_patchwork)

    ac = sub.add_parser("acceptance", help="run the acceptance battery")
    ac.add_argument("--suite", default="desk")
    ac.add_argument("--only", help="comma separated criterion numbers")
    ac.add_argument("--quiet", action="store_true")
    ac.add_argument("--out", dest="report_out")
    ac.set_defaults(func=cmd_acceptance)
    return ap


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.workers is not None and args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    rep = Report(argv, args.seed, timings=not args.no_timings)
    t0 = time.perf_counter()
    try:
        args.func(args, rep)
    except (LeibnizError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep.time("total", time.perf_counter() - t0)
    rep.emit(getattr(args, "report_out", None) or args.report)
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
