import pytest

from resline.multipoly import MultiPoly, weighted_checks
from resline.qft import closed_form, qft_recursion, theorem10_check, u


def test_first_polynomials():
    P2, P3, P4 = qft_recursion(4)
    assert P2 == u(2) - u(1) ** 2
    assert P3 == u(3) - u(1) * u(2) * 3 + u(1) ** 3 * 2
    assert P4 == MultiPoly.parse("-5*u1^4 + 10*u1^2*u2 - 4*u1*u3 - 2*u2^2 + u4", "u")


def test_closed_form_small_cases():
    assert closed_form(2) == u(2) - u(1) ** 2
    assert closed_form(3) == u(3) - u(1) * u(2) * 3 + u(1) ** 3 * 2


@pytest.mark.parametrize("k", range(2, 11))
def test_recursion_matches_closed_form(k):
    assert theorem10_check(k).passed


def test_weights():
    for k, P in enumerate(qft_recursion(10), start=2):
        assert weighted_checks(P, None, k).passed


def test_bad_input():
    with pytest.raises(ValueError):
        qft_recursion(1)
