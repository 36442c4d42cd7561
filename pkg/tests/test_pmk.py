from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from resline.multipoly import MultiPoly, x
from resline.pmk import (
    LieTruncation,
    PmkSpec,
    a_matrix,
    center_generators,
    center_invariants_check,
    cross_construction_check,
    lie_action,
    pde_residual,
    pmk_determinant,
    pmk_generating,
    pmk_gradient,
    pmk_partition,
    pmk_properties,
    pmk_square_root,
    resonant_divisibility,
    term_count_expected,
    to_l_variables,
)
from resline.scalars import partition_count

from conftest import lambdas
from oracles import pmk_by_sympy, to_sympy

F = Fraction
P02 = "1/2*x0*x2 - 1/8*x1^2"


def l(i):
    return MultiPoly.var(i, "l")


def test_spec_validation():
    with pytest.raises(ValueError, match="lambda must be nonzero"):
        PmkSpec(0, 1, 0)
    with pytest.raises(ValueError):
        PmkSpec(-1, 1, 1)
    assert PmkSpec(0, 3, F(-1, 2)).resonance == 2
    assert PmkSpec(0, 3, F(1, 2)).resonance is None


@pytest.mark.parametrize("build", [pmk_generating, pmk_partition, pmk_determinant])
def test_p02_all_constructions(build):
    assert str(build(PmkSpec(0, 2, -2))) == P02


def test_p13_half():
    expected = (x(0) ** 2 * x(4) * 8 - x(0) * (x(1) * x(3) * 2 + x(2) ** 2) * 2
                + x(1) ** 2 * x(2) * 3) * F(1, 16)
    spec = PmkSpec(1, 3, -2)
    assert pmk_generating(spec) == expected
    assert pmk_determinant(spec, route="one_form") == expected


@given(lambdas())
def test_linear_case(lam):
    assert pmk_generating(PmkSpec(1, 1, lam)) == x(2) * (-1 / lam)


def test_p03_half():
    expected = (x(0) ** 2 * x(3) * 8 - x(0) * x(1) * x(2) * 4 + x(1) ** 3) * F(1, 16)
    assert pmk_partition(PmkSpec(0, 3, -2)) == expected


@given(lambdas())
def test_p22_general(lam):
    expected = x(0) * x(4) * (-1 / lam) + x(1) * x(3) * ((lam + 1) / lam ** 2)
    assert pmk_partition(PmkSpec(2, 2, lam)) == expected


@given(lambdas())
def test_p32_by_closed_determinant(lam):
    expected = x(0) * x(5) * (-1 / lam) + x(1) * x(4) * ((lam + 1) / lam ** 2)
    assert pmk_determinant(PmkSpec(3, 2, lam), route="x") == expected


def test_single_term_at_resonance():
    assert pmk_partition(PmkSpec(0, 2, -1)) == x(0) * x(2)


@pytest.mark.parametrize("route", ["x", "x_prime", "one_form"])
def test_determinant_routes_agree_where_defined(route):
    for m in range(4):
        for k in range(1, 5):
            if route == "x" and m < k - 1 or route == "x_prime" and m != 0:
                continue
            spec = PmkSpec(m, k, F(3, 2))
            assert pmk_determinant(spec, route=route) == pmk_partition(spec), (m, k)


def test_a_matrix_shape_and_entries():
    A = a_matrix(3, F(-2))
    assert A.shape == (2, 3)
    # first row (2 lam x0, (2 lam + 1) x1, 2 (lam + 1) x2)
    assert A[0, 0] == x(0) * -4 and A[0, 1] == x(1) * -3 and A[0, 2] == x(2) * -2
    assert A[1, 0] == 0 and A[1, 1] == x(0) * -2 and A[1, 2] == x(1) * -1


@pytest.mark.parametrize("m,k,lam", [(0, 2, -2), (1, 3, F(1, 2)), (2, 3, 3), (0, 4, F(-1, 3)), (1, 2, -1)])
def test_generating_function_matches_sympy_oracle(m, k, lam):
    expected, xs = pmk_by_sympy(m, k, lam)
    assert to_sympy(pmk_generating(PmkSpec(m, k, lam)), xs) == expected


@given(st.integers(0, 3), st.integers(1, 5), lambdas())
def test_cross_construction_property(m, k, lam):
    assert cross_construction_check(PmkSpec(m, k, lam)).passed


@given(st.integers(0, 3), st.integers(1, 5), lambdas())
def test_gradient_and_pde(m, k, lam):
    spec = PmkSpec(m, k, lam)
    P = pmk_partition(spec)
    for i in range(1, k + 1):
        assert pmk_gradient(spec, i) == P.diff(m + i)
    assert all(r.is_zero() for r in pde_residual(P, spec))


def test_gradient_examples():
    assert pmk_gradient(PmkSpec(0, 1, F(2, 3)), 1) == MultiPoly.const(F(-3, 2))
    assert pmk_gradient(PmkSpec(1, 3, -2), 3) == x(0) ** 2 * F(1, 2)
    lam = F(5, 7)
    assert pmk_gradient(PmkSpec(3, 2, lam), 2) == x(0) * (-1 / lam)
    with pytest.raises(ValueError):
        pmk_gradient(PmkSpec(0, 2, 1), 3)


def test_pde_residual_examples():
    spec = PmkSpec(0, 2, -2)
    assert all(r.is_zero() for r in pde_residual(pmk_partition(spec), spec))
    assert not all(r.is_zero() for r in pde_residual(x(1) ** 2, spec))
    assert all(r.is_zero() for r in pde_residual(MultiPoly.const(3), spec))


def test_square_root_identification():
    for m in range(3):
        for k in range(1, 5):
            assert pmk_square_root(m, k) == pmk_partition(PmkSpec(m, k, -2))


def test_resonant_divisibility_examples():
    assert resonant_divisibility(0, 2, 1) == x(2)
    assert resonant_divisibility(1, 2, 1) == x(3)
    Q = resonant_divisibility(0, 3, 2)
    assert Q * x(0) == pmk_partition(PmkSpec(0, 3, F(-1, 2)))
    assert Q.total_degree() == 2
    with pytest.raises(ValueError):
        resonant_divisibility(0, 2, 2)


def test_property_report_examples():
    r = pmk_properties(PmkSpec(0, 2, -2))
    assert r.passed and len(r.checks) == 5
    assert pmk_partition(PmkSpec(0, 2, -2)).evaluate([1, 1, 1]) == F(3, 8)
    assert pmk_properties(PmkSpec(0, 3, -2)).passed
    assert term_count_expected(PmkSpec(3, 4, -2)) == 7
    assert len(pmk_partition(PmkSpec(3, 4, -2))) == 7


def test_resonant_term_count_for_large_m():
    # -1/lam = 1: the sum reduces to the single term x0^(k-1) x_(m+k)
    P = pmk_partition(PmkSpec(1, 2, -1))
    assert P == x(0) * x(3)
    assert term_count_expected(PmkSpec(1, 2, -1)) == 1
    # counting with n allowed parts instead of n-1 would predict 2
    assert partition_count(0, 1) + partition_count(1, 1) == 2


@pytest.mark.parametrize("k", range(1, 9))
def test_closed_forms_at_half(k):
    for m in (0, k - 1, k + 2):
        assert pmk_properties(PmkSpec(m, k, -2)).passed


# -- Lie algebra ---------------------------------------------------------------


def test_truncation_is_a_lie_algebra():
    for m, n, p in [(0, 6, None), (1, 9, None), (0, 8, 7), (2, 11, None)]:
        assert LieTruncation(m, n, p).jacobi_defects() == []


def test_brackets():
    trunc = LieTruncation(1, 5)
    assert trunc.bracket(1, 2) == (1, 3)
    assert trunc.bracket(2, 1) == (-1, 3)
    assert trunc.bracket(2, 3) is None
    assert list(trunc.basis) == [1, 2, 3, 4]


def test_quadratic_invariant_of_small_algebra():
    trunc = LieTruncation(1, 5)
    P = l(4) * l(2) * F(1, 2) - l(3) ** 2 * F(1, 8)
    assert all(lie_action(trunc, i, P).is_zero() for i in trunc.basis)
    assert to_l_variables(pmk_partition(PmkSpec(0, 2, -2)), 4) == P


def test_top_element_is_central():
    for m, n in [(1, 5), (2, 8), (0, 7)]:
        trunc = LieTruncation(m, n)
        top = l(n - 1)
        for i in trunc.basis:
            if i != 0:
                assert lie_action(trunc, i, top).is_zero()


def test_grading_element_does_not_kill_top():
    # l_0 acts by the grading, so l_(n-1) is only central in L_(m, n) for m >= 1
    trunc = LieTruncation(0, 4)
    assert not lie_action(trunc, 0, l(3)).is_zero()


def test_small_actions():
    trunc = LieTruncation(0, 3)
    for P in (l(1), l(2), l(1) * l(2)):
        assert lie_action(trunc, 1, P).is_zero()
    with pytest.raises(ValueError):
        lie_action(trunc, 5, l(1))


@pytest.mark.parametrize("m,n", [(1, 4), (1, 6), (0, 2), (0, 4), (2, 7), (3, 10)])
def test_center_generators_are_annihilated(m, n):
    report = center_invariants_check(m, n)
    assert report.passed, str(report)


def test_center_generator_list():
    names = [name for name, _ in center_generators(1, 6)]
    assert names == ["l6", "l5", "P12(l6..l3)"]
    _, P11 = center_generators(1, 4)[-1]
    assert P11 == l(2) * F(1, 2)
