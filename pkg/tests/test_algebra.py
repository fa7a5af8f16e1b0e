import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from leibniz_local import algebra as alg
from leibniz_local.catalog import build
from leibniz_local.errors import DimensionMismatch, NotNilpotent
from leibniz_local.scalars import QQ


def leibniz_tensor_ok(dim, entries):
    """Leibniz identity on structure constants via numpy contractions."""
    c = np.zeros((dim, dim, dim), dtype=object)
    c[...] = Fraction(0)
    for i, j, k, v in entries:
        c[i, j, k] += Fraction(v)
    bad = []
    for i, j, k in itertools.product(range(dim), repeat=3):
        lhs = sum(c[i, j, m] * c[m, k, :] for m in range(dim))
        rhs = sum(c[i, k, m] * c[m, j, :] for m in range(dim)) + sum(c[j, k, m] * c[i, m, :] for m in range(dim))
        if any(a != b for a, b in zip(lhs, rhs)):
            bad.append((i, j, k))
    return bad


entry = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2))


@settings(max_examples=80)
@given(st.lists(entry, max_size=4))
def test_check_leibniz_matches_tensor_oracle(entries):
    A = alg.Algebra.from_entries(3, QQ, entries)
    bad = leibniz_tensor_ok(3, entries)
    v = alg.check_leibniz(A)
    if bad:
        assert v is not None and v.triple == bad[0]
        assert v.lhs != v.rhs
    else:
        assert v is None


def test_violation_example():
    # [e0,e0] = e1 and [e1,e0] = e0 is not Leibniz
    entries = [(0, 0, 1, 1), (1, 0, 0, 1)]
    v = alg.check_leibniz(alg.Algebra.from_entries(2, QQ, entries))
    assert v is not None and v.triple == leibniz_tensor_ok(2, entries)[0]


vec = st.lists(st.integers(-3, 3), min_size=7, max_size=7)


@settings(max_examples=40)
@given(vec, vec, vec, st.integers(-3, 3))
def test_bracket_bilinear(x, y, z, a):
    A = build("r1", 5, QQ).algebra
    x, y, z = (A.vector(v) for v in (x, y, z))
    assert alg.bracket(A, alg.add(x, alg.scale(a, y)), z) == alg.add(alg.bracket(A, x, z), alg.scale(a, alg.bracket(A, y, z)))
    assert alg.bracket(A, z, alg.add(x, y)) == alg.add(alg.bracket(A, z, x), alg.bracket(A, z, y))


def test_entries_sum_duplicates_and_drop_zeros():
    A = alg.Algebra.from_entries(2, QQ, [(0, 0, 1, 1), (0, 0, 1, 2), (1, 1, 0, 1), (1, 1, 0, -1)])
    assert A.entries() == [(0, 0, 1, 3)]
    with pytest.raises(DimensionMismatch):
        alg.Algebra.from_entries(2, QQ, [(0, 0, 2, 1)])


def test_r0_2_series():
    A = build("r0", 2, QQ).algebra
    assert alg.derived_series(A).dims == (3, 2, 1, 0)
    assert alg.lower_central_series(A).dims == (3, 2)
    assert alg.is_solvable(A) == (True, 4)
    assert alg.is_nilpotent(A) == (False, None)


def test_derived_terms_are_the_expected_spans():
    A = build("r0", 2, QQ).algebra
    terms = alg.derived_series(A).terms
    assert terms[1] == alg.Subspace.coordinate([1, 2], 3, QQ)
    assert terms[2] == alg.Subspace.coordinate([2], 3, QQ)


@pytest.mark.parametrize("n", range(1, 7))
def test_null_filiform_nf(n):
    A = build("nf", n, QQ).algebra
    assert alg.is_null_filiform(A)
    assert alg.lower_central_series(A).dims == tuple(range(n, -1, -1))
    assert alg.is_nilpotent(A) == (True, n + 1)


def test_abelian():
    A = alg.abelian(3, QQ)
    assert alg.lower_central_series(A).dims == (3, 0)
    assert alg.is_antisymmetric(A)
    assert not alg.is_null_filiform(A)


def test_antisymmetry():
    A = build("r0", 2, QQ).algebra
    assert not alg.is_antisymmetric(A)
    assert alg.antisymmetry_witness(A) == (0, 2)
    lie = alg.Algebra.from_entries(2, QQ, [(0, 1, 1, 1), (1, 0, 1, -1)])
    assert alg.is_antisymmetric(lie) and alg.antisymmetry_witness(lie) is None


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), max_size=4),
       st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), max_size=4))
def test_subspace_algebra(us, vs):
    U = alg.Subspace.span(us, 4, QQ)
    V = alg.Subspace.span(vs, 4, QQ)
    W = U.plus(V, QQ)
    assert U.is_subspace_of(W) and V.is_subspace_of(W)
    assert W.rank <= U.rank + V.rank
    for u in us:
        assert U.contains(tuple(QQ(c) for c in u))
    assert alg.Subspace.span(list(U.basis), 4, QQ) == U


def test_subspace_coordinates():
    U = alg.Subspace.span([[1, 1, 0], [0, 1, 1]], 3, QQ)
    assert U.coordinates((QQ(1), QQ(2), QQ(1))) is not None
    assert U.coordinates((QQ(1), QQ(0), QQ(0))) is None
    assert alg.Subspace.zero(3).coordinates((0, 0, 0)) == []


def test_restrict_requires_closure():
    A = build("r0", 3, QQ).algebra
    with pytest.raises(DimensionMismatch):
        alg.restrict(A, alg.Subspace.coordinate([1], 4, QQ))  # [e1,e1] = e2


def test_restrict_nilradical_of_r0_is_nf():
    e = build("r0", 4, QQ)
    N = alg.restrict(e.algebra, e.nilradical)
    assert alg.same_table(N, build("nf", 4, QQ).algebra)


def test_associated_graded_example():
    # non-graded filtration of NF(3): [e1,e1] = e2 + e3, [e2,e1] = e3
    A = alg.Algebra.from_entries(3, QQ, [(0, 0, 1, 1), (0, 0, 2, 1), (1, 0, 2, 1)])
    assert alg.check_leibniz(A) is None
    g, layers = alg.associated_graded(A)
    assert layers == [1, 1, 1]
    assert g.entries() == build("nf", 3, QQ).algebra.entries()
    assert alg.is_null_filiform(g)


def test_associated_graded_requires_nilpotent():
    with pytest.raises(NotNilpotent):
        alg.associated_graded(build("r0", 2, QQ).algebra)


@pytest.mark.parametrize("fam", ["r1", "r2", "r3"])
def test_graded_nilradical_dims(fam):
    e = build(fam, 6, QQ)
    N = alg.restrict(e.algebra, e.nilradical)
    g, layers = alg.associated_graded(N)
    assert layers == [2, 1, 1, 1, 1]
    assert alg.lower_central_series(g).dims == alg.lower_central_series(N).dims
