import itertools
import math
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from leibniz_local import linalg
from leibniz_local.scalars import QQ, PrimeField


def perm_det(m):
    """Leibniz expansion, used as an independent oracle."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * math.prod(m[i][perm[i]] for i in range(n))
    return total


fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=60)
@given(st.integers(min_value=1, max_value=4).flatmap(lambda n: st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_permutation_expansion(m):
    assert linalg.det(m, QQ) == perm_det(m)


@settings(max_examples=60)
@given(st.sampled_from([3, 5, 7]), st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_mod_p_matches_expansion(p, m):
    F = PrimeField(p)
    assert linalg.det([[F(x) for x in r] for r in m], F) == perm_det(m) % p


@settings(max_examples=60)
@given(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=0, max_size=5))
def test_rref_is_canonical(rows):
    basis, piv = linalg.rref(rows, QQ)
    again, piv2 = linalg.rref(list(basis), QQ)
    assert (again, piv2) == (basis, piv)
    for row, c in zip(basis, piv):
        assert row[c] == 1
        assert all(other[c] == 0 for other in basis if other is not row)
    assert linalg.rank(rows, QQ) == len(basis)


def test_det_known_values():
    assert linalg.det([[Fraction(1, 2), 1], [3, 4]], QQ) == -1
    assert linalg.det([[0, 1], [1, 0]], QQ) == -1
    assert linalg.det([[1, 2], [2, 4]], QQ) == 0


def test_matmul_identity():
    m = [[QQ(1), QQ(2)], [QQ(3), QQ(4)]]
    I = linalg.identity(2, QQ)
    assert [list(r) for r in linalg.matmul(I, m)] == m
    assert list(linalg.matvec(m, [QQ(1), QQ(0)])) == [1, 3]
    assert [list(r) for r in linalg.transpose(m)] == [[1, 3], [2, 4]]
