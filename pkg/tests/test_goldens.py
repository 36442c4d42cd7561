from fractions import Fraction

import pytest

from resline.goldens import golden_check, golden_general, golden_half, interpolated_family
from resline.pmk import PmkSpec, pmk_partition


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("m", range(6))
def test_half_family(m, k):
    assert pmk_partition(PmkSpec(m, k, -2)) == golden_half(m, k)


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(1, 2), Fraction(-3)])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_general_family(lam, k):
    for m in range(6):
        assert pmk_partition(PmkSpec(m, k, lam)) == golden_general(m, k, lam)


def test_general_family_specializes_to_half_family():
    for m in range(5):
        for k in range(1, 5):
            assert golden_general(m, k, -2) == golden_half(m, k)


def test_interpolation_reproduces_unseen_values():
    family = interpolated_family(2, 3, [Fraction(n) for n in (1, -1, 2, -2)])
    lam = Fraction(7, 11)
    assert family(lam) == pmk_partition(PmkSpec(2, 3, lam))


def test_golden_report():
    assert golden_check(max_m=3).passed


def test_tabulation_limits():
    with pytest.raises(ValueError):
        golden_half(0, 5)
    with pytest.raises(ValueError):
        golden_general(0, 2, 0)
