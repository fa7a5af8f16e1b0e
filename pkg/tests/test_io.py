import json

import pytest
from hypothesis import given, strategies as st

from leibniz_local import io
from leibniz_local.automorphisms import AutParams, aut_family
from leibniz_local.catalog import build
from leibniz_local.errors import ParseError
from leibniz_local.locality import FunctionTable, PatchworkSpec
from leibniz_local.scalars import QQ, PrimeField

F5 = PrimeField(5)


@pytest.mark.parametrize("fam,n,field", [("r0", 4, QQ), ("r1", 5, QQ), ("r3", 5, PrimeField(7)), ("nf", 3, F5)])
def test_algebra_round_trip(fam, n, field):
    e = build(fam, n, field)
    obj = json.loads(io.dump_json(io.algebra_to_json(e.algebra, e.meta())))
    A, cat = io.algebra_from_json(obj)
    assert A == e.algebra
    assert cat["family"] == e.meta()["family"]


@given(st.fractions(), st.fractions().filter(bool), st.integers(2, 6))
def test_map_round_trip(a, b, n):
    T = aut_family("r0", n, (a, b), QQ)
    assert io.map_from_json(json.loads(io.dump_json(io.map_to_json(T)))) == T


def test_params_round_trip():
    P = AutParams("r2", 1, -2, 3, 0)
    assert io.params_from_json(io.params_to_json(P, QQ), QQ) == P


def test_table_round_trip():
    D = FunctionTable.from_linear_map(aut_family("r0", 2, (3, 2), F5))
    assert io.table_from_json(io.table_to_json(D)) == D


def test_patchwork_round_trip():
    spec = PatchworkSpec("r0", 2, 5, AutParams("r0", 0, 1), {5: AutParams("r0", 1, 2)})
    back = io.patchwork_from_json(io.patchwork_to_json(spec))
    assert back.overrides == spec.overrides and back.default == spec.default


def where(fn, *args):
    with pytest.raises(ParseError) as exc:
        fn(*args)
    return exc.value.where


def test_algebra_errors_name_paths():
    good = io.algebra_to_json(build("r0", 2, QQ).algebra)
    bad = json.loads(json.dumps(good))
    bad["table"][0]["k"] = 9
    assert where(io.algebra_from_json, bad) == "$.table[0].k"
    bad = json.loads(json.dumps(good))
    bad["table"][1]["c"] = "1/0"
    assert where(io.algebra_from_json, bad) == "$.table[1].c"
    bad = dict(good)
    del bad["dim"]
    assert where(io.algebra_from_json, bad) == "$"


def test_table_errors():
    obj = io.table_to_json(FunctionTable.from_linear_map(aut_family("r0", 2, (0, 1), F5)))
    obj["entries"][3][1][2] = 7
    assert where(io.table_from_json, obj) == "$.entries[3][1][2]"
    obj = io.table_to_json(FunctionTable.from_linear_map(aut_family("r0", 2, (0, 1), F5)))
    obj["entries"][0], obj["entries"][1] = obj["entries"][1], obj["entries"][0]
    assert where(io.table_from_json, obj) == "$.entries[0][0]"
    assert where(io.table_from_json, {"p": 4, "dim": 1, "entries": []}) == "$.p"


def test_load_json_reports_position(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"dim": 3,\n  "field": }')
    assert where(io.load_json, f) == f"{f}:2:12"
