import math
import random

import pytest
from hypothesis import given, strategies as st

from resline.charp import (
    PadicDigits,
    charp_invariants,
    counterexample_series,
    exact_multinomial,
    lucas_multinomial,
    restricted_invariance_check,
    series_corpus,
    substitute,
    substitute_mod_p,
    width,
    width_invariance_test,
)
from resline.scalars import Fp, RatFunc
from resline.series import TruncatedSeries, series_compose


def series(terms, p, prec=20):
    return TruncatedSeries.from_terms({e: Fp(c, p) for e, c in terms.items()}, prec)


# -- digits and multinomials -----------------------------------------------------------


@given(st.integers(-10 ** 6, 10 ** 6), st.sampled_from([2, 3, 5, 7]))
def test_digits_round_trip(k, p):
    d = PadicDigits.from_int(k, p)
    assert d.to_int() == k
    assert d.tail == (0 if k >= 0 else p - 1)


def test_lucas_examples():
    assert lucas_multinomial(4, [2, 2], 3) == (0, False)
    assert exact_multinomial(4, [2, 2]) == 6
    for q in range(40):
        assert lucas_multinomial(-1, [q], 2) == (1, True)
    assert lucas_multinomial(123, [0, 0], 5) == (1, True)


@given(st.integers(0, 10 ** 6), st.lists(st.integers(0, 300), min_size=1, max_size=4),
       st.sampled_from([2, 3, 5, 7]))
def test_lucas_matches_exact(k, qs, p):
    exact = math.comb(k, sum(qs)) * math.factorial(sum(qs))
    for q in qs:
        exact //= math.factorial(q)
    residue, nonzero = lucas_multinomial(k, qs, p)
    assert residue == exact % p
    assert nonzero == (exact % p != 0)


@given(st.integers(-10 ** 4, -1), st.lists(st.integers(0, 60), min_size=1, max_size=3),
       st.sampled_from([2, 3, 5]))
def test_negative_k(k, qs, p):
    assert lucas_multinomial(k, qs, p)[0] == exact_multinomial(k, qs) % p
    # adding p^B with p^B beyond the digits of the parts does not change the residue
    B = max(len(PadicDigits.from_int(q, p).digits) for q in qs) + 1
    assert lucas_multinomial(k, qs, p) == lucas_multinomial(k + p ** B, qs, p)


def test_nonzero_residue_forces_valuations():
    # a nonzero residue needs every part to be at least as divisible by p as k
    rng = random.Random(5)
    for _ in range(300):
        p = rng.choice([2, 3, 5])
        k = rng.randint(1, 5000)
        qs = [rng.randint(1, 200) for _ in range(2)]
        if lucas_multinomial(k, qs, p)[1]:
            vk = next(v for v in range(20) if k % p ** (v + 1))
            assert all(q % p ** vk == 0 for q in qs)


# -- invariants --------------------------------------------------------------------------


def test_invariant_examples():
    inv = charp_invariants(series({2: 1, 3: 1}, 2))
    assert (inv.ord0, inv.md, inv.ord_md) == (2, 0, 3)
    inv = charp_invariants(series({4: 1, 8: 1}, 2))
    assert (inv.md, inv.ord_md) == (2, 4)
    inv = charp_invariants(series({0: 5, 1: 1}, 3))
    assert (inv.ord0, inv.md, inv.ord_md) == (1, 0, 1)


def test_constant_series_is_flagged():
    inv = charp_invariants(series({0: 1}, 3))
    assert inv.md == math.inf and not inv.certified
    assert width(series({0: 1}, 3)) == 0


def test_width_examples():
    assert width(series({2: 1, 3: 1}, 2)) == 1
    assert width(series({3: 1}, 2)) == 0
    assert width(series({4: 1, 6: 1, 7: 1}, 2)) == 1
    # candidates m=3: floor((10-3)/(3-1)) = 3 and m=9: floor((10-9)/(9-1)) = 0
    assert width(series({9: 1, 3: 2, 10: 1}, 3, prec=30)) == 3


def test_substitution_agrees_with_generic_composition():
    p = 3
    h = series({-2: 1, 1: 2, 3: 1, 4: 1}, p, prec=12)
    g = [2, 1, 0, 2]
    G = TruncatedSeries.from_terms({i + 1: Fp(c, p) for i, c in enumerate(g)}, 14)
    assert substitute(h, g).agrees(series_compose(h, G), 12)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_invariants_are_stable(p):
    for i, h in enumerate(series_corpus(p, 8, seed=17)):
        report = width_invariance_test(h, 25, seed=i)
        assert report.passed, str(report)


def test_documented_example_is_stable():
    h = series({2: 1, 3: 1}, 2)
    assert width_invariance_test(h, 50, seed=1).passed
    assert width_invariance_test(h, 0, seed=1).passed


def test_raw_coefficients_are_detected_as_non_invariant():
    probe = {"x5": lambda terms, prec, p: terms.get(5, 0)}
    report = width_invariance_test(series({2: 1, 3: 1}, 2), 50, seed=1, probes=probe)
    assert not report.passed
    probe = {"x2": lambda terms, prec, p: terms.get(2, 0)}
    report = width_invariance_test(series({1: 1, 2: 1}, 3), 50, seed=1, probes=probe)
    assert not report.passed


def test_corpus_is_reproducible_and_varied():
    a = series_corpus(3, 30, seed=4)
    assert [str(h) for h in a] == [str(h) for h in series_corpus(3, 30, seed=4)]
    assert len({charp_invariants(h).md for h in a}) > 1
    assert any(h.ord < 0 for h in a)


def test_substitution_rejects_non_invertible_linear_term():
    with pytest.raises(ValueError):
        substitute_mod_p({1: 1}, 5, [0, 1], 3)


# -- series over F_p(c) -----------------------------------------------------------------


def test_counterexample_p2():
    h = counterexample_series(2, 20)
    c = RatFunc.gen(2)
    assert h.terms() == {2: c ** 0, 4: c, 8: c ** 3, 16: c ** 7}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_counterexample_identity(p):
    N = p ** 3 + 1
    h = counterexample_series(p, N)
    c = RatFunc.gen(p)
    lhs = h - h ** p * c
    assert lhs.terms() == {p: RatFunc.const(1, p)}
    assert h.coefficient(p ** 3) == c ** (1 + p)


def test_counterexample_needs_precision():
    with pytest.raises(ValueError):
        counterexample_series(3, 8)


# -- restricted algebras --------------------------------------------------------------------


@pytest.mark.parametrize("m,n,p", [(0, 4, 7), (0, 6, 11), (1, 4, 11), (1, 6, 11), (0, 8, 13)])
def test_restricted_invariance(m, n, p):
    assert restricted_invariance_check(m, n, p).passed


def test_restricted_invariance_rejects_bad_parameters():
    with pytest.raises(ValueError):
        restricted_invariance_check(0, 4, 2)
    with pytest.raises(ValueError):
        restricted_invariance_check(0, 6, 7)
    with pytest.raises(ValueError):
        restricted_invariance_check(1, 3, 11)
