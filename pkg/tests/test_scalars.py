from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from resline.scalars import (
    Fp,
    RatFunc,
    as_fraction,
    binary_digit_sum,
    double_factorial,
    falling_factorial,
    format_rational,
    is_prime,
    p_adic_valuation,
    partition_count,
    rat_binomial,
)

from conftest import rationals

primes = st.sampled_from([2, 3, 5, 7, 11, 13])


def test_as_fraction_parses_strings_and_ints():
    assert as_fraction("-1/2") == Fraction(-1, 2)
    assert as_fraction(3) == Fraction(3)
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(6, 3)) == "2"


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@given(primes, st.integers(), st.integers(), st.integers())
def test_fp_field_axioms(p, a, b, c):
    x, y, z = Fp(a, p), Fp(b, p), Fp(c, p)
    assert (x + y) * z == x * z + y * z
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


def test_fp_from_fraction_and_text():
    assert Fp.from_fraction(Fraction(1, 2), 7) == 4
    assert str(Fp(-1, 5)) == "4 mod 5"
    with pytest.raises(ZeroDivisionError):
        Fp.from_fraction(Fraction(1, 3), 3)


@given(primes, st.lists(st.integers(0, 6), min_size=1, max_size=4),
       st.lists(st.integers(0, 6), min_size=1, max_size=4))
def test_ratfunc_field_axioms(p, num, den):
    a = RatFunc(num, (1,), p)
    b = RatFunc(den, (1,), p)
    c = RatFunc.gen(p)
    assert (a + b) * c == a * c + b * c
    if b:
        assert (a / b) * b == a
        assert b * b.inverse() == 1


def test_ratfunc_powers_of_generator():
    c = RatFunc.gen(3)
    assert str(c ** 4) == "c^4"
    assert c ** 2 * c ** -2 == 1


@given(rationals(), st.integers(1, 8))
def test_binomial_recurrence(alpha, j):
    assert rat_binomial(alpha, j) == rat_binomial(alpha - 1, j) + rat_binomial(alpha - 1, j - 1)


@given(st.integers(0, 30), st.integers(0, 30))
def test_binomial_matches_integer_binomial(n, j):
    assert rat_binomial(n, j) == comb(n, j)


def test_falling_factorial_and_double_factorial():
    assert falling_factorial(Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(-1, 2) * Fraction(-3, 2)
    assert [double_factorial(n) for n in range(-1, 8)] == [1, 1, 1, 2, 3, 8, 15, 48, 105]


def test_binary_digit_sum():
    assert [binary_digit_sum(k) for k in (1, 2, 3, 7, 8, 10)] == [1, 1, 2, 3, 1, 2]
    with pytest.raises(ValueError):
        binary_digit_sum(0)


def test_p_adic_valuation():
    assert p_adic_valuation(12, 2) == 2
    assert p_adic_valuation(-27, 3) == 3
    assert p_adic_valuation(5, 3) == 0


def test_partition_counts():
    assert [partition_count(n) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    # partitions of 6 with at most 2 parts: 6, 5+1, 4+2, 3+3
    assert partition_count(6, 2) == 4
    assert partition_count(0, 0) == 1 and partition_count(3, 0) == 0
