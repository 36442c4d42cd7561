"""A recursion for polynomials P_k(u_1, ..., u_k) and their closed form.

Starting from ``P_2 = u_2 - u_1^2``,

    P_(k+1) = ( sum_i ((i+2) u_(i+1) - 2 u_1 u_i) dP_k/du_i
                - 2k u_1 P_k - sum_(i=2)^(k-1) P_i P_(k+1-i) ) / (k+2)

for k >= 2.  The result coincides with ``P_0k`` at ``-1/lam = 1-k``,
evaluated at ``x_0 = 1, x_i = u_i`` and divided by ``1-k``.
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly
from .pmk import PmkSpec, pmk_partition
from .report import Report


def u(i: int) -> MultiPoly:
    return MultiPoly.var(i, "u")


def qft_recursion(kmax: int) -> list[MultiPoly]:
    """``[P_2, ..., P_kmax]`` in variables u_1.. (variable index = subscript)."""
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    polys = {2: u(2) - u(1) ** 2}
    for k in range(2, kmax):
        Pk = polys[k]
        acc = Pk * u(1) * (-2 * k)
        for i in range(1, k + 1):
            d = Pk.diff(i)
            if not d.is_zero():
                acc = acc + (u(i + 1) * (i + 2) - u(1) * u(i) * 2) * d
        for i in range(2, k):
            acc = acc - polys[i] * polys[k + 1 - i]
        polys[k + 1] = acc.scale(Fraction(1, k + 2))
    return [polys[k] for k in range(2, kmax + 1)]


def closed_form(k: int) -> MultiPoly:
    """``P_0k`` at ``lam = 1/(k-1)`` with x_0 = 1, x_i -> u_i, divided by 1-k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    P = pmk_partition(PmkSpec(0, k, Fraction(1, k - 1)))
    out = MultiPoly(vars="u")
    for exps, c in P.terms.items():
        out = out + MultiPoly({(0,) + tuple(exps[1:]): c}, "u")
    return out.scale(Fraction(1, 1 - k))


def theorem10_check(k: int, recursion: list[MultiPoly] | None = None) -> Report:
    recursion = recursion or qft_recursion(k)
    Pk = recursion[k - 2]
    expected = closed_form(k)
    report = Report(f"recursion vs closed form, k={k}")
    diff = Pk - expected
    report.add(f"P_{k} matches", diff.is_zero(), "" if diff.is_zero() else f"difference {diff}")
    return report
