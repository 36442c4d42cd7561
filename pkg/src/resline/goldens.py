"""Hand-transcribed invariant polynomials for k <= 4, used as golden values.

``golden_half(m, k)`` gives the lam = -2 family with its integer-scaled
forms, ``golden_general(m, k, lam)`` the family for arbitrary nonzero lam.
Both are written out term by term, independently of the constructions in
:mod:`resline.pmk`.
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly
from .pmk import PmkSpec, pmk_partition
from .report import Report
from .scalars import as_fraction

GOLDEN_K = (1, 2, 3, 4)


def _x(i: int) -> MultiPoly:
    return MultiPoly.var(i)


def golden_half(m: int, k: int) -> MultiPoly:
    x = _x
    a = m  # x_(m+j) is x(a + j)
    if k == 1:
        return x(a + 1) * Fraction(1, 2)
    if k == 2:
        if m == 0:
            return (x(0) * x(2) * 4 - x(1) ** 2) * Fraction(1, 8)
        return (x(0) * x(a + 2) * 2 - x(1) * x(a + 1)) * Fraction(1, 4)
    if k == 3:
        if m == 0:
            return (x(0) ** 2 * x(3) * 8 - x(0) * x(1) * x(2) * 4 + x(1) ** 3) * Fraction(1, 16)
        if m == 1:
            return (x(0) ** 2 * x(4) * 8 - x(0) * (x(1) * x(3) * 2 + x(2) ** 2) * 2
                    + x(1) ** 2 * x(2) * 3) * Fraction(1, 16)
        return (x(0) ** 2 * x(a + 3) * 8 - x(0) * (x(1) * x(a + 2) + x(2) * x(a + 1)) * 4
                + x(1) ** 2 * x(a + 1) * 3) * Fraction(1, 16)
    if k == 4:
        if m == 0:
            return (x(0) ** 3 * x(4) * 64 - x(0) ** 2 * (x(1) * x(3) * 2 + x(2) ** 2) * 16
                    + x(0) * x(1) ** 2 * x(2) * 24 - x(1) ** 4 * 5) * Fraction(1, 128)
        if m == 1:
            return (x(0) ** 3 * x(5) * 16 - x(0) ** 2 * (x(1) * x(4) + x(2) * x(3)) * 8
                    + x(0) * (x(1) ** 2 * x(3) + x(1) * x(2) ** 2) * 6
                    - x(1) ** 3 * x(2) * 5) * Fraction(1, 32)
        if m == 2:
            return (x(0) ** 3 * x(6) * 16
                    - x(0) ** 2 * (x(1) * x(5) * 2 + x(2) * x(4) * 2 + x(3) ** 2) * 4
                    + x(0) * (x(1) ** 2 * x(4) + x(1) * x(2) * x(3) * 2) * 6
                    - x(1) ** 3 * x(3) * 5) * Fraction(1, 32)
        return (x(0) ** 3 * x(a + 4) * 16
                - x(0) ** 2 * (x(1) * x(a + 3) + x(2) * x(a + 2) + x(3) * x(a + 1)) * 8
                + x(0) * (x(1) ** 2 * x(a + 2) + x(1) * x(2) * x(a + 1) * 2) * 6
                - x(1) ** 3 * x(a + 1) * 5) * Fraction(1, 32)
    raise ValueError("golden polynomials are tabulated for k <= 4")


def golden_general(m: int, k: int, lam) -> MultiPoly:
    lam = as_fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    x = _x
    a = m
    c1 = -1 / lam
    c2 = (lam + 1) / lam ** 2
    c3 = (lam + 1) * (2 * lam + 1) / lam ** 3
    c4 = (lam + 1) * (2 * lam + 1) * (3 * lam + 1) / lam ** 4
    if k == 1:
        return x(a + 1) * c1
    if k == 2:
        if m == 0:
            return x(0) * x(2) * c1 + x(1) ** 2 * (c2 / 2)
        return x(0) * x(a + 2) * c1 + x(1) * x(a + 1) * c2
    if k == 3:
        if m == 0:
            return x(0) ** 2 * x(3) * c1 + x(0) * x(1) * x(2) * c2 - x(1) ** 3 * (c3 / 6)
        if m == 1:
            return (x(0) ** 2 * x(4) * c1 + x(0) * (x(1) * x(3) * 2 + x(2) ** 2) * (c2 / 2)
                    - x(1) ** 2 * x(2) * (c3 / 2))
        return (x(0) ** 2 * x(a + 3) * c1 + x(0) * (x(1) * x(a + 2) + x(2) * x(a + 1)) * c2
                - x(1) ** 2 * x(a + 1) * (c3 / 2))
    if k == 4:
        if m == 0:
            return (x(0) ** 3 * x(4) * c1 + x(0) ** 2 * (x(1) * x(3) * 2 + x(2) ** 2) * (c2 / 2)
                    - x(0) * x(1) ** 2 * x(2) * (c3 / 2) + x(1) ** 4 * (c4 / 24))
        if m == 1:
            return (x(0) ** 3 * x(5) * c1 + x(0) ** 2 * (x(1) * x(4) + x(2) * x(3)) * c2
                    - x(0) * (x(1) ** 2 * x(3) + x(1) * x(2) ** 2) * (c3 / 2)
                    + x(1) ** 3 * x(2) * (c4 / 6))
        if m == 2:
            return (x(0) ** 3 * x(6) * c1
                    + x(0) ** 2 * (x(1) * x(5) * 2 + x(2) * x(4) * 2 + x(3) ** 2) * (c2 / 2)
                    - x(0) * (x(1) ** 2 * x(4) + x(1) * x(2) * x(3) * 2) * (c3 / 2)
                    + x(1) ** 3 * x(3) * (c4 / 6))
        return (x(0) ** 3 * x(a + 4) * c1
                + x(0) ** 2 * (x(1) * x(a + 3) + x(2) * x(a + 2) + x(3) * x(a + 1)) * c2
                - x(0) * (x(1) ** 2 * x(a + 2) + x(1) * x(2) * x(a + 1) * 2) * (c3 / 2)
                + x(1) ** 3 * x(a + 1) * (c4 / 6))
    raise ValueError("golden polynomials are tabulated for k <= 4")


def _lagrange_coefficients(points: list[Fraction], target: Fraction) -> list[Fraction]:
    out = []
    for i, si in enumerate(points):
        w = Fraction(1)
        for j, sj in enumerate(points):
            if j != i:
                w *= (target - sj) / (si - sj)
        out.append(w)
    return out


def interpolated_family(m: int, k: int, inverse_lams: list[Fraction]):
    """Function ``lam -> P_mk`` interpolated in 1/lam from computed samples.

    Every coefficient of P_mk is a polynomial of degree <= k in 1/lam, so
    k+1 samples determine the family.
    """
    samples = [pmk_partition(PmkSpec(m, k, 1 / s)) for s in inverse_lams]

    def at(lam) -> MultiPoly:
        weights = _lagrange_coefficients(inverse_lams, 1 / as_fraction(lam))
        total = MultiPoly()
        for w, P in zip(weights, samples):
            total = total + P.scale(w)
        return total

    return at


INTERPOLATION_NODES = [Fraction(n) for n in (1, -1, 2, -2, 3)]
PROBE_LAMS = [Fraction(1), Fraction(1, 2), Fraction(-3), Fraction(-2), Fraction(2, 7), Fraction(-5, 3)]


def golden_check(max_m: int = 4) -> Report:
    report = Report("tabulated polynomials")
    for k in GOLDEN_K:
        for m in range(max_m + 1):
            P = pmk_partition(PmkSpec(m, k, -2))
            report.add(f"lam=-2 m={m} k={k}", P == golden_half(m, k), str(P))
            for lam in (Fraction(1), Fraction(1, 2), Fraction(-3)):
                P = pmk_partition(PmkSpec(m, k, lam))
                report.add(f"lam={lam} m={m} k={k}", P == golden_general(m, k, lam), str(P))
            # both sides have degree <= k in 1/lam: agreement at k+1 nodes is an identity
            nodes = INTERPOLATION_NODES[: k + 1]
            family = interpolated_family(m, k, nodes)
            agree = all(family(1 / s) == golden_general(m, k, 1 / s) for s in nodes)
            predicts = all(family(lam) == pmk_partition(PmkSpec(m, k, lam)) for lam in PROBE_LAMS)
            report.add(f"symbolic in lam m={m} k={k}", agree and predicts)
    return report
