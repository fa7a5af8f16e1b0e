from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_local.errors import DivisionByZero, FactorialNotInvertible, NotPrime, ParseError
from leibniz_local.scalars import QQ, Fp, PrimeField, field_from_json, field_from_text, is_prime

PRIMES = [2, 3, 5, 7, 11, 13]


def test_is_prime_small():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_not_prime():
    with pytest.raises(NotPrime):
        PrimeField(9)


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_fp_field_axioms(p, a, b, c):
    F = PrimeField(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert x - x == 0
    assert int(x + y) == (a + b) % p
    if y:
        assert (x / y) * y == x
        assert y ** -1 * y == 1


@given(st.sampled_from(PRIMES), st.integers(min_value=1))
def test_fermat(p, a):
    x = PrimeField(p)(a)
    if x:
        assert x ** (p - 1) == 1


def test_fp_division_by_zero():
    F = PrimeField(5)
    with pytest.raises(DivisionByZero):
        F(3) / F(0)
    with pytest.raises(ZeroDivisionError):
        F.inv(F(10))


def test_fp_fraction_coercion():
    F = PrimeField(7)
    assert F(Fraction(1, 2)) == 4
    with pytest.raises(DivisionByZero):
        F(Fraction(1, 7))


def test_factorial_limits():
    F = PrimeField(5)
    assert F.factorial(4) == 24 % 5
    with pytest.raises(FactorialNotInvertible):
        F.factorial(5)
    assert QQ.factorial(6) == 720


def test_mixing_moduli_rejected():
    with pytest.raises(ValueError):
        Fp(1, 3) + Fp(1, 5)


@given(st.fractions())
def test_rational_text_roundtrip(q):
    assert QQ.parse(QQ.format(q)) == q


def test_rational_format_canonical():
    assert QQ.format(Fraction(4, 2)) == "2"
    assert QQ.format(Fraction(-6, 4)) == "-3/2"


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", "", None])
def test_rational_parse_errors(bad):
    with pytest.raises(ParseError):
        QQ.parse(bad)


def test_residue_parse_must_be_canonical():
    F = PrimeField(5)
    assert F.parse("4") == 4
    with pytest.raises(ParseError):
        F.parse("5")
    with pytest.raises(ParseError):
        F.parse(-1)


@given(st.fractions(max_denominator=50), st.integers(min_value=1, max_value=6))
def test_rational_roots_match_powers(r, k):
    c = r ** k
    roots = QQ.nth_roots(c, k)
    assert r in roots
    assert all(x ** k == c for x in roots)


@given(st.integers(min_value=2, max_value=10**6), st.integers(min_value=2, max_value=5))
def test_rational_roots_absent_for_non_powers(m, k):
    roots = QQ.nth_roots(m, k)
    brute = [r for r in range(1, int(round(m ** (1 / k))) + 2) if r ** k == m]
    assert sorted(abs(x) for x in roots if x > 0) == brute


def test_rational_root_signs():
    assert QQ.nth_roots(Fraction(4, 9), 2) == [Fraction(-2, 3), Fraction(2, 3)]
    assert QQ.nth_roots(-8, 3) == [-2]
    assert QQ.nth_roots(-4, 2) == []
    assert QQ.nth_roots(0, 4) == [0]


@given(st.sampled_from(PRIMES), st.integers(min_value=0, max_value=12), st.integers(min_value=1, max_value=5))
def test_fp_roots_bruteforce(p, c, k):
    F = PrimeField(p)
    assert F.nth_roots(c, k) == [F(r) for r in range(p) if pow(r, k, p) == c % p]


def test_field_text_and_json():
    assert field_from_text("Q") is QQ
    assert field_from_text("fp:7") == PrimeField(7)
    assert field_from_json({"Fp": 5}) == PrimeField(5)
    assert field_from_json("Q") is QQ
    for bad in ("fp:8", "R", "fp:"):
        with pytest.raises(ParseError):
            field_from_text(bad)
    with pytest.raises(ParseError):
        field_from_json({"Fp": "5"})
