"""JSON formats for algebras, linear maps, parameter tuples and function tables.

Scalars are written in canonical text form ("3", "-1/2", residues "0".."p-1");
integers are accepted on input.  Every parse error names the JSON path of the
offending value.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import fpspace
from .algebra import Algebra
from .automorphisms import PARAM_NAMES, AutParams, LinearMap
from .errors import ParseError
from .locality.oracle import FunctionTable, PatchworkSpec
from .scalars import Field, PrimeField, field_from_json


def load_json(path):
    """Read a JSON file, turning decode errors into a positioned ParseError."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _need(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    if key not in obj:
        raise ParseError(f"missing key {key!r}", where)
    val = obj[key]
    if kind is not None and (not isinstance(val, kind) or isinstance(val, bool)):
        raise ParseError(f"expected {getattr(kind, '__name__', kind)}", f"{where}.{key}")
    return val


def _scalar(field: Field, val, where):
    try:
        return field.parse(val)
    except ParseError as exc:
        raise ParseError(exc.message, where) from None


def _field(obj, where):
    try:
        return field_from_json(obj)
    except ParseError as exc:
        raise ParseError(exc.message, where) from None
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


# ---- algebras -----------------------------------------------------------

def algebra_to_json(A: Algebra, catalog: dict = None) -> dict:
    out = {
        "dim": A.dim,
        "field": A.field.to_json(),
        "basis": list(A.basis_names),
        "table": [{"i": i, "j": j, "k": k, "c": A.field.format(c)} for i, j, k, c in A.entries()],
    }
    if catalog is not None:
        out["catalog"] = catalog
    return out


def algebra_from_json(obj, where="$"):
    """Returns ``(algebra, catalog block or None)``."""
    dim = _need(obj, "dim", where, int)
    if dim < 1:
        raise ParseError("dim must be positive", f"{where}.dim")
    field = _field(_need(obj, "field", where), f"{where}.field")
    names = obj.get("basis")
    if names is not None and (not isinstance(names, list) or len(names) != dim or not all(isinstance(s, str) for s in names)):
        raise ParseError(f"basis must list {dim} names", f"{where}.basis")
    table = _need(obj, "table", where, list)
    entries = []
    for pos, ent in enumerate(table):
        w = f"{where}.table[{pos}]"
        idx = []
        for key in "ijk":
            v = _need(ent, key, w, int)
            if not 0 <= v < dim:
                raise ParseError(f"index {v} outside 0..{dim - 1}", f"{w}.{key}")
            idx.append(v)
        entries.append((*idx, _scalar(field, _need(ent, "c", w), f"{w}.c")))
    return Algebra.from_entries(dim, field, entries, names), obj.get("catalog")


# ---- linear maps and parameters -----------------------------------------

def map_to_json(T: LinearMap) -> dict:
    return {"dim": T.dim, "field": T.field.to_json(), "cols": [[T.field.format(x) for x in c] for c in T.cols]}


def map_from_json(obj, field: Field = None, where="$") -> LinearMap:
    if "field" in obj:
        field = _field(obj["field"], f"{where}.field")
    if field is None:
        raise ParseError("no field given for the map", where)
    dim = _need(obj, "dim", where, int)
    cols = _need(obj, "cols", where, list)
    if len(cols) != dim:
        raise ParseError(f"expected {dim} columns, got {len(cols)}", f"{where}.cols")
    out = []
    for j, col in enumerate(cols):
        if not isinstance(col, list) or len(col) != dim:
            raise ParseError(f"column must have {dim} entries", f"{where}.cols[{j}]")
        out.append(tuple(_scalar(field, x, f"{where}.cols[{j}][{r}]") for r, x in enumerate(col)))
    return LinearMap(tuple(out), field)


def params_to_json(P: AutParams, field: Field) -> dict:
    return {"family": P.family, **{k: field.format(v) for k, v in P.as_dict().items()}}


def params_from_json(obj, field: Field, family=None, where="$") -> AutParams:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    family = (obj.get("family") or family or "").lower()
    if family not in PARAM_NAMES:
        raise ParseError(f"unknown family {family!r}", f"{where}.family")
    vals = {nm: _scalar(field, _need(obj, nm, where), f"{where}.{nm}") for nm in PARAM_NAMES[family]}
    return AutParams(family, **vals)


def map_set_to_json(maps, field: Field) -> dict:
    return {"field": field.to_json(), "maps": [map_to_json(T)["cols"] for T in sorted(maps, key=_sort_key)]}


def _sort_key(T: LinearMap):
    return [str(x) for c in T.cols for x in c] if not T.field.is_finite else list(T.as_ints())


# ---- function tables ----------------------------------------------------

def table_to_json(D: FunctionTable) -> dict:
    pts = fpspace.points(D.p, D.dim)
    return {
        "p": D.p,
        "dim": D.dim,
        "entries": [[x.tolist(), list(fpspace.decode(c, D.p, D.dim))] for x, c in zip(pts, D.codes)],
    }


def table_from_json(obj, where="$") -> FunctionTable:
    p = _need(obj, "p", where, int)
    try:
        PrimeField(p)
    except ValueError as exc:
        raise ParseError(str(exc), f"{where}.p") from None
    dim = _need(obj, "dim", where, int)
    entries = _need(obj, "entries", where, list)
    total = p ** dim
    if len(entries) != total:
        raise ParseError(f"expected {total} entries, got {len(entries)}", f"{where}.entries")
    codes = [None] * total
    for pos, ent in enumerate(entries):
        w = f"{where}.entries[{pos}]"
        if not isinstance(ent, list) or len(ent) != 2:
            raise ParseError("entry must be [x, f(x)]", w)
        x, fx = (_residues(v, p, dim, f"{w}[{s}]") for s, v in enumerate(ent))
        cx = fpspace.encode(x, p)
        if cx != pos:
            raise ParseError("points must be listed in lexicographic order", f"{w}[0]")
        codes[cx] = int(fpspace.encode(fx, p))
    return FunctionTable(p, dim, tuple(codes))


def _residues(v, p, dim, where):
    if not isinstance(v, list) or len(v) != dim:
        raise ParseError(f"expected {dim} coordinates", where)
    for r, c in enumerate(v):
        if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < p:
            raise ParseError(f"coordinate must be a residue 0..{p - 1}", f"{where}[{r}]")
    return v


# ---- patchwork specs ----------------------------------------------------

def patchwork_to_json(spec: PatchworkSpec) -> dict:
    F = PrimeField(spec.p)
    d = _dim_of(spec)
    return {
        "family": spec.family,
        "n": spec.n,
        "p": spec.p,
        "default": params_to_json(spec.default, F),
        "overrides": [
            {"point": list(fpspace.decode(code, spec.p, d)), "params": params_to_json(P, F)}
            for code, P in sorted(spec.overrides.items())
        ],
    }


def _dim_of(spec):
    return spec.n + 1 if spec.family == "r0" else spec.n + 2


def patchwork_from_json(obj, where="$") -> PatchworkSpec:
    family = _need(obj, "family", where, str).lower()
    if family not in PARAM_NAMES:
        raise ParseError(f"unknown family {family!r}", f"{where}.family")
    n = _need(obj, "n", where, int)
    p = _need(obj, "p", where, int)
    try:
        F = PrimeField(p)
    except ValueError as exc:
        raise ParseError(str(exc), f"{where}.p") from None
    default = params_from_json(_need(obj, "default", where), F, family, f"{where}.default")
    d = n + 1 if family == "r0" else n + 2
    overrides = {}
    for pos, ov in enumerate(obj.get("overrides", [])):
        w = f"{where}.overrides[{pos}]"
        x = _residues(_need(ov, "point", w), p, d, f"{w}.point")
        overrides[int(fpspace.encode(x, p))] = params_from_json(_need(ov, "params", w), F, family, f"{w}.params")
    return PatchworkSpec(family, n, p, default, overrides)
