"""Independent reference computations built on sympy.

Used to produce and re-derive the frozen expected values in the tests.
"""

import sympy as sp


def pmk_by_sympy(m, k, lam):
    """Coefficient of z^(m+k) in S^alpha - S_m^alpha, divided by x0^m."""
    lam = sp.Rational(lam)
    alpha = -1 / lam
    xs = sp.symbols(f"x0:{m + k + 1}")
    z = sp.Symbol("z")
    N = m + k
    S = 1 + sum(xs[i] * xs[0] ** (i - 1) * z ** i for i in range(1, N + 1))
    Sm = 1 + sum(xs[i] * xs[0] ** (i - 1) * z ** i for i in range(1, m + 1))
    diff = sp.series(S ** alpha, z, 0, N + 1).removeO() - sp.series(Sm ** alpha, z, 0, N + 1).removeO()
    coeff = sp.expand(diff).coeff(z, N)
    return sp.expand(sp.cancel(coeff / xs[0] ** m)), xs


def to_sympy(P, xs):
    total = 0
    for exps, c in P.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for i, e in enumerate(exps):
            term *= xs[i] ** e
        total += term
    return sp.expand(total)


def fractional_residue_by_sympy(lam, k, coeffs):
    t = sp.Symbol("t")
    lam = sp.Rational(lam)
    x0 = sp.Rational(coeffs[0])
    h = sum(sp.Rational(c) * t ** i for i, c in enumerate(coeffs)) / x0
    root = sp.series(h ** (-1 / lam), t, 0, k + 1).removeO()
    return sp.expand(root).coeff(t, k) * x0 ** k


def act_by_sympy(lam, mu, coeffs, g_coeffs, prec):
    """Pullback h(g) (g/t)^mu g'^(-lam), expanded to O(t^prec)."""
    t = sp.Symbol("t")
    h = sum(sp.Rational(c) * t ** i for i, c in enumerate(coeffs))
    g = sum(sp.Rational(c) * t ** (i + 1) for i, c in enumerate(g_coeffs))
    expr = h.subs(t, g) * sp.expand(g / t) ** sp.Rational(mu) * sp.diff(g, t) ** (-sp.Rational(lam))
    ser = sp.series(expr, t, 0, prec).removeO()
    return [sp.expand(ser).coeff(t, i) for i in range(prec)]
