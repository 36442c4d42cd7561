from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from resline.scalars import Fp
from resline.series import (
    PrecisionError,
    TruncatedSeries,
    pow_rational,
    residue,
    series_compose,
)

from conftest import rationals

PREC = 10


def laurent(min_ord=-2, max_ord=2):
    return st.builds(
        lambda o, cs: TruncatedSeries.from_list(cs, prec=o + PREC, ord=o),
        st.integers(min_ord, max_ord),
        st.lists(rationals(), min_size=PREC, max_size=PREC),
    )


def units():
    return st.lists(rationals(), min_size=PREC - 1, max_size=PREC - 1).map(
        lambda cs: TruncatedSeries.from_list([1] + cs, prec=PREC))


def substitutions():
    """Series t + a_2 t^2 + ... known to O(t^PREC)."""
    return st.lists(rationals(), min_size=PREC - 2, max_size=PREC - 2).map(
        lambda cs: TruncatedSeries.from_list([1] + cs, prec=PREC, ord=1))


def test_text_form():
    s = TruncatedSeries.from_terms({-1: 2, 1: -1, 2: Fraction(1, 2)}, 4)
    assert str(s) == "t^-1*(2 - t^2 + 1/2*t^3) + O(t^4)"
    assert str(TruncatedSeries.from_terms({}, 3)) == "O(t^3)"


def test_precision_is_explicit():
    s = TruncatedSeries.from_list([1, 2, 3])
    assert s.prec == 3
    with pytest.raises(PrecisionError):
        s.coefficient(3)
    assert (s * s).prec == 3
    assert (s.shift(-2) * s).prec == 1


@given(laurent(), laurent(), laurent())
def test_multiplication_is_associative_and_commutative(a, b, c):
    assert (a * b).agrees(b * a)
    assert ((a * b) * c).agrees(a * (b * c))


@given(laurent())
def test_inverse(a):
    if not a.is_zero():
        prod = a * a.inverse()
        assert prod.agrees(TruncatedSeries.one(prod.prec))


def test_composition_examples():
    t2 = TruncatedSeries.from_terms({2: 1}, 8)
    g = TruncatedSeries.from_terms({1: 1, 2: 1}, 8)
    assert series_compose(t2, g).agrees(TruncatedSeries.from_terms({2: 1, 3: 2, 4: 1}, 9))
    inv = series_compose(TruncatedSeries.from_terms({-1: 1}, 6), g)
    assert (inv * g).agrees(TruncatedSeries.one(6))


@given(laurent(min_ord=0), substitutions(), substitutions())
def test_composition_is_associative(f, g, h):
    left = series_compose(series_compose(f, g), h)
    right = series_compose(f, series_compose(g, h))
    assert left.agrees(right)


@given(units(), rationals(), rationals())
def test_rational_powers_add(f, a, b):
    assert (pow_rational(f, a) * pow_rational(f, b)).agrees(pow_rational(f, a + b))


def test_square_root():
    f = TruncatedSeries.from_list([1, 1], prec=10)
    r = pow_rational(f, Fraction(1, 2))
    assert (r * r).agrees(f)
    assert r.coefficient(2) == Fraction(-1, 8)
    with pytest.raises(ValueError):
        pow_rational(TruncatedSeries.from_list([2, 1], prec=4), Fraction(1, 2))
    with pytest.raises(ValueError):
        pow_rational(TruncatedSeries.from_terms({1: 1}, 4), Fraction(1, 2))


def test_residue_examples():
    f = TruncatedSeries.from_terms({-2: 3, -1: 5, 0: 7}, 3)
    assert residue(f) == 5
    h = TruncatedSeries.from_terms({3: 2, 4: 1, 5: 1}, 12)
    assert residue(h.derivative() * h.inverse()) == 3
    with pytest.raises(PrecisionError):
        residue(TruncatedSeries.from_terms({-3: 1}, -1))


@given(laurent(min_ord=-3, max_ord=-1), substitutions())
def test_residue_of_differential_is_invariant(phi, g):
    # phi(t) dt -> phi(g) g' dt
    moved = series_compose(phi, g) * g.derivative()
    if moved.prec > -1 and phi.prec > -1:
        assert residue(moved) == residue(phi)


def test_series_over_prime_field():
    p = 3
    f = TruncatedSeries.from_list([Fp(1, p), Fp(1, p)], prec=10)
    cube = f ** 3
    assert cube.terms() == {0: Fp(1, p), 3: Fp(1, p)}


@given(st.lists(rationals(), min_size=16, max_size=16), st.lists(rationals(), min_size=15, max_size=15),
       st.integers(-2, 2), st.sampled_from([Fraction(1, 2), Fraction(-1, 3), Fraction(2, 5)]))
def test_claimed_precision_survives_more_input_precision(fc, gc, o, alpha):
    """Results from truncated inputs agree with results from longer inputs on the claimed range."""
    f_long = TruncatedSeries.from_list(fc, ord=o, prec=o + 16)
    g_long = TruncatedSeries.from_list([1] + gc, ord=1, prec=17)
    u_long = TruncatedSeries.from_list([1] + gc, prec=16)
    f, g, u = f_long.truncate(o + 8), g_long.truncate(9), u_long.truncate(8)
    pairs = [
        (f * u, f_long * u_long),
        (series_compose(f, g), series_compose(f_long, g_long)),
        (pow_rational(u, alpha), pow_rational(u_long, alpha)),
        (u.inverse(), u_long.inverse()),
        (f.derivative(), f_long.derivative()),
    ]
    if not f.is_zero():
        pairs.append((f.inverse(), f_long.inverse()))
    for short, long in pairs:
        assert short.prec <= long.prec
        assert all(short.coefficient(e) == long.coefficient(e) for e in range(min(short.ord, long.ord), short.prec))


@given(units(), units(), substitutions())
def test_composition_is_multiplicative(f, g, h):
    assert series_compose(f * g, h).agrees(series_compose(f, h) * series_compose(g, h))


@given(laurent())
def test_exact_forms_have_no_residue(f):
    if f.prec > 0:
        assert residue(f.derivative()) == 0
