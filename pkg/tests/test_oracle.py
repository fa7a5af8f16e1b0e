import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from leibniz_local import fpspace
from leibniz_local.automorphisms import AutParams, LinearMap, aut_family, aut_group, enumerate_aut_bruteforce
from leibniz_local.catalog import build
from leibniz_local.errors import InvalidParams
from leibniz_local.locality import (
    FunctionTable,
    OrbitIndex,
    PatchworkSpec,
    all_local_linear_maps,
    is_2local,
    is_local_automorphism_exhaustive,
    make_patchwork,
    pair_has_common_automorphism,
)
from leibniz_local.scalars import PrimeField

F5 = PrimeField(5)
F3 = PrimeField(3)


@pytest.fixture(scope="module")
def r0_f5():
    return build("r0", 2, F5).algebra, aut_group("r0", 2, F5)


def test_points_and_codes():
    pts = fpspace.points(3, 2)
    assert pts.tolist()[:4] == [[0, 0], [0, 1], [0, 2], [1, 0]]
    assert list(fpspace.encode(pts, 3)) == list(range(9))
    assert fpspace.decode(5, 3, 2) == (1, 2)


def test_orbit_index(r0_f5):
    A, G = r0_f5
    idx = OrbitIndex.build(G, 5, 3)
    assert list(idx.orbit(0)) == [0]
    e1 = fpspace.encode([0, 1, 0], 5)
    orb = idx.orbit(e1)
    assert len(orb) == 20 and 0 not in orb
    # orbits of a group partition the space
    assert all(idx.member[y, x] for x in range(125) for y in idx.orbit(x))


def test_automorphisms_are_local(r0_f5):
    A, G = r0_f5
    idx = OrbitIndex.build(G, 5, 3)
    for T in G.maps:
        assert is_local_automorphism_exhaustive(A, G, T, idx)
        assert is_local_automorphism_exhaustive(A, G, T)


def test_zero_map_is_not_local(r0_f5):
    A, G = r0_f5
    v = is_local_automorphism_exhaustive(A, G, LinearMap.zero(3, F5))
    assert not v
    assert v.witness == (0, 0, 1)


def test_local_scan_over_f3():
    A = build("r0", 2, F3).algebra
    brute = enumerate_aut_bruteforce(A)
    assert all_local_linear_maps(A, brute, workers=1) == brute
    assert all_local_linear_maps(A, brute, workers=2) == brute


def test_local_scan_catches_nonlocal_orbit_maps():
    # on the abelian plane every nonzero point has the same orbit, so all of GL_2 is local
    from leibniz_local.algebra import abelian

    A = abelian(2, F3)
    aut = enumerate_aut_bruteforce(A)
    assert all_local_linear_maps(A, aut, workers=1) == aut


def two_local_oracle(G, D):
    """First failing pair by plain loops over points and maps."""
    pts = [tuple(int(c) for c in x) for x in fpspace.points(G.field.p, G.dim)]
    imgs = [[tuple(int(c) for c in T(tuple(G.field(c) for c in x))) for x in pts] for T in G.maps]
    target = [D(x) for x in pts]
    for i, j in itertools.product(range(len(pts)), repeat=2):
        if not any(img[i] == target[i] and img[j] == target[j] for img in imgs):
            return pts[i], pts[j]
    return None


def test_aut_tables_are_2local(r0_f5):
    A, G = r0_f5
    for T in G.maps:
        assert is_2local(A, G, FunctionTable.from_linear_map(T))


def test_patchwork_example(r0_f5):
    A, G = r0_f5
    e2 = fpspace.encode([0, 0, 1], 5)
    D = make_patchwork(PatchworkSpec("r0", 2, 5, AutParams("r0", 0, 1), {e2: AutParams("r0", 0, 2)}))
    assert D((0, 0, 1)) == (0, 0, 4)
    v = is_2local(A, G, D)
    assert not v
    assert v.pair == ((0, 0, 1), (0, 0, 2))
    assert not pair_has_common_automorphism(G.maps, D, *v.pair)
    assert not pair_has_common_automorphism(G.maps, D, (0, 1, 0), (0, 0, 1))


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_is_2local_matches_loop_oracle(seed):
    rng = random.Random(seed)
    G = aut_group("r0", 2, F3)
    A = build("r0", 2, F3).algebra
    default = rng.choice(G.params)
    over = {rng.randrange(27): rng.choice(G.params) for _ in range(rng.randint(0, 3))}
    D = make_patchwork(PatchworkSpec("r0", 2, 3, default, over))
    v = is_2local(A, G, D)
    expect = two_local_oracle(G, D)
    assert (v.pair if not v else None) == expect


def test_make_patchwork_properties(r0_f5):
    A, G = r0_f5
    P = AutParams("r0", 2, 3)
    constant = make_patchwork(PatchworkSpec("r0", 2, 5, P, {}))
    assert constant == FunctionTable.from_linear_map(aut_family("r0", 2, P, F5))
    rng = random.Random(0)
    tables = {FunctionTable.from_linear_map(T) for T in G.maps}
    for _ in range(20):
        over = {c: rng.choice(G.params) for c in rng.sample(range(125), 4)}
        D = make_patchwork(PatchworkSpec("r0", 2, 5, rng.choice(G.params), over))
        assert D((0, 0, 0)) == (0, 0, 0)
        if D in tables:
            assert is_2local(A, G, D)


def test_patchwork_rejects_bad_params():
    with pytest.raises(InvalidParams):
        make_patchwork(PatchworkSpec("r0", 2, 5, AutParams("r0", 1, 0), {}))


def test_function_table_helpers():
    T = aut_family("r0", 2, (1, 2), F5)
    D = FunctionTable.from_linear_map(T)
    assert D == FunctionTable.from_callable(lambda x: T(tuple(F5(c) for c in x)), 5, 3)
    assert D.is_linear_map(T)
    assert D((0, 1, 0)) == tuple(int(c) for c in T((F5(0), F5(1), F5(0))))
    with pytest.raises(ValueError):
        FunctionTable(5, 3, (0,) * 10)
