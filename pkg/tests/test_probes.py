import random
from fractions import Fraction

import pytest

from leibniz_local.automorphisms import LinearMap, aut_family, aut_group, aut_r0, is_automorphism
from leibniz_local.catalog import build
from leibniz_local.errors import NTooSmallForProbes
from leibniz_local.locality import (
    build_midproof,
    equalities_hold,
    fit_at_point,
    is_local_automorphism_exhaustive,
    probe_set,
    sample_midproof,
    verify_local_via_probes,
)
from leibniz_local.locality.midproof import column_params
from leibniz_local.scalars import QQ, PrimeField


def test_r0_probe_set_n5():
    assert probe_set("r0", 5).labels() == ["e0+e2", "e0+e3", "e0+e4", "e1+e3", "e1+e4", "e2+e4", "e1+e5"]


def test_r1_probe_set_n5():
    assert probe_set("r1", 5).labels() == ["e2+x", "e3+x", "e4+x", "e1+e2+e4", "e1+e2+e5", "e1+e3+e5"]


@pytest.mark.parametrize("fam", ["r2", "r3"])
def test_r2_probe_set_n5(fam):
    assert probe_set(fam, 5).labels() == ["e1+e4", "e1+e5", "e3+e5", "x+e4"]


def test_probe_sets_need_n5():
    for fam in ("r0", "r1", "r2", "r3"):
        with pytest.raises(NTooSmallForProbes):
            probe_set(fam, 4)


def test_automorphism_is_recognised():
    v = verify_local_via_probes("r0", 5, aut_r0(5, (2, 3), QQ))
    assert v.kind == "automorphism"
    assert v.params.values() == (2, 3)


@pytest.mark.parametrize("fam,vals", [("r1", (2, -1, 3)), ("r2", (3, -2, 5, 7)), ("r3", (1, 0, 2))])
def test_family_automorphisms_pass(fam, vals):
    T = aut_family(fam, 6, vals, QQ)
    v = verify_local_via_probes(fam, 6, T)
    assert v and v.params.values() == tuple(Fraction(x) for x in vals)


def uniform(fam, n, override=None):
    vals = {(lb, nm): Fraction(1) for lb, ps in column_params(fam, n).items() for nm in ps}
    vals.update(override or {})
    return vals


def test_r0_mismatched_betas_fail_at_first_linking_probe():
    vals = {k: Fraction(0) if k[1] == "alpha" else Fraction(1) for k in uniform("r0", 5)}
    vals[("e2", "beta")] = Fraction(2)
    v = verify_local_via_probes("r0", 5, build_midproof("r0", 5, vals))
    assert v.kind == "probe_failure"
    assert v.probe.label == "e2+e4"
    assert not equalities_hold("r0", 5, vals)


def test_r1_gamma_mismatch_fails_at_e2_plus_x():
    vals = uniform("r1", 5)
    vals[("e2", "gamma")] = Fraction(3)
    v = verify_local_via_probes("r1", 5, build_midproof("r1", 5, vals))
    assert v.kind == "probe_failure" and v.probe.label == "e2+x"


def test_column_orbit_failure():
    T = aut_r0(5, (1, 1), QQ)
    cols = list(T.cols)
    cols[3] = (QQ(0),) * 6
    v = verify_local_via_probes("r0", 5, LinearMap(tuple(cols), QQ))
    assert v.kind == "column_orbit_failure" and v.index == 3


@pytest.mark.parametrize("fam,n", [("r0", 5), ("r1", 5), ("r0", 6), ("r1", 6), ("r2", 6), ("r3", 6)])
def test_verdict_matches_equalities(fam, n):
    rng = random.Random(hash((fam, n)) % 10**6)
    A = build(fam, n, QQ).algebra
    for _ in range(60):
        s = sample_midproof(fam, n, rng)
        v = verify_local_via_probes(fam, n, s.matrix)
        assert bool(v) == equalities_hold(fam, n, s.values)
        if v:
            assert is_automorphism(A, s.matrix)
        if v.kind == "probe_failure":
            x = v.probe.vector(A.dim, QQ)
            assert fit_at_point(fam, n, x, s.matrix(x), QQ).empty


@pytest.mark.parametrize("fam", ["r2", "r3"])
def test_beta_e3_is_not_pinned_at_n5(fam):
    # every stated equality holds yet the matrix is not an automorphism
    vals = uniform(fam, 5, {("e3", "beta"): Fraction(2)})
    assert equalities_hold(fam, 5, vals)
    T = build_midproof(fam, 5, vals)
    assert not is_automorphism(build(fam, 5, QQ).algebra, T)
    v = verify_local_via_probes(fam, 5, T)
    assert v.kind == "collapse_failure" and v.index == 2


@pytest.mark.parametrize("fam", ["r2", "r3"])
def test_beta_e3_gap_matrix_is_not_local(fam):
    F = PrimeField(7)
    vals = {k: 1 for k in uniform(fam, 5)}
    vals[("e3", "beta")] = 2
    T = build_midproof(fam, 5, vals, F)
    for pr in probe_set(fam, 5):
        s = pr.vector(7, F)
        assert not fit_at_point(fam, 5, s, T(s), F).empty
    x = tuple(F(c) for c in (1, 0, 1, 0, 0, 0, 0))
    assert fit_at_point(fam, 5, x, T(x), F).empty


@pytest.mark.parametrize("fam", ["r2", "r3"])
def test_beta_e3_is_pinned_at_n6(fam):
    vals = uniform(fam, 6, {("e3", "beta"): Fraction(2)})
    assert not equalities_hold(fam, 6, vals)
    v = verify_local_via_probes(fam, 6, build_midproof(fam, 6, vals))
    assert v.kind == "probe_failure" and v.probe.label == "e3+e5"


def test_probe_route_agrees_with_exhaustive_oracle_over_f7():
    F = PrimeField(7)
    A = build("r0", 5, F).algebra
    G = aut_group("r0", 5, F)
    rng = random.Random(5)
    slots = [(lb, nm) for lb, ps in column_params("r0", 5).items() for nm in ps]
    for trial in range(6):
        base = {"alpha": rng.randrange(7), "beta": rng.randrange(1, 7)}
        vals = {s: base[s[1]] for s in slots}
        if trial % 2:
            s = rng.choice(slots)
            vals[s] = rng.choice([v for v in range(1 if s[1] == "beta" else 0, 7) if v != vals[s]])
        T = build_midproof("r0", 5, vals, F)
        assert bool(verify_local_via_probes("r0", 5, T)) == bool(is_local_automorphism_exhaustive(A, G, T))
