"""The invariant polynomials P_mk^(-1/lambda) and the checks built on them.

Three constructions are provided and must agree exactly:

* :func:`pmk_generating` extracts a coefficient of ``S(z)^alpha`` where
  ``S(z) = 1 + sum_i x_i x0^(i-1) z^i`` and ``alpha = -1/lambda``;
* :func:`pmk_partition` sums falling-factorial multinomials over partitions;
* :func:`pmk_determinant` expands determinants of the matrix ``A`` built by
  :func:`a_matrix`, integrating an exact one-form where no closed
  determinant is available.

The lambda = -2 case is also obtained by :func:`pmk_square_root`, which
takes square roots of ``S(z)`` by the quadratic recurrence rather than the
binomial series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm

from .multipoly import (
    MultiPoly,
    PolyMatrix,
    PolyOneForm,
    det_poly,
    enumerate_partitions,
    multinomial_general,
    potential_of_exact_one_form,
    weighted_checks,
    x,
)
from .report import Report
from .scalars import (
    Fp,
    as_fraction,
    binary_digit_sum,
    double_factorial,
    partition_count,
    rat_binomial,
)
from .series import TruncatedSeries


@dataclass(frozen=True)
class PmkSpec:
    m: int
    k: int
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", as_fraction(self.lam))
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")

    @property
    def alpha(self) -> Fraction:
        """The exponent -1/lambda."""
        return -1 / self.lam

    @property
    def resonance(self) -> int | None:
        """n when -1/lambda is a positive integer n, else None."""
        a = self.alpha
        if a.denominator == 1 and a > 0:
            return int(a)
        return None


# ---------------------------------------------------------------------------
# Construction 1: the generating function


def _u_series(N: int, cutoff: int | None) -> TruncatedSeries:
    """``S(z) - 1`` (or its truncation at z^cutoff) to precision z^(N+1)."""
    top = N if cutoff is None else min(N, cutoff)
    coeffs = [0] + [x(i) * x(0) ** (i - 1) for i in range(1, top + 1)]
    return TruncatedSeries.from_list(coeffs, prec=N + 1)


@lru_cache(maxsize=None)
def _power_coefficients(N: int, cutoff: int | None) -> tuple[MultiPoly, ...]:
    """``[z^N] u^j`` for j = 0..N; independent of lambda, hence cached."""
    u = _u_series(N, cutoff)
    out = [MultiPoly({})]
    power = None
    for _ in range(1, N + 1):
        power = u if power is None else power * u
        c = power.coefficient(N) if power.prec > N else MultiPoly({})
        out.append(c if isinstance(c, MultiPoly) else MultiPoly({}))
    return tuple(out)


@lru_cache(maxsize=None)
def pmk_generating(spec: PmkSpec) -> MultiPoly:
    N = spec.m + spec.k
    full = _power_coefficients(N, None)
    head = _power_coefficients(N, spec.m)
    total = MultiPoly({})
    for j in range(1, N + 1):
        b = rat_binomial(spec.alpha, j)
        if b:
            total = total + (full[j] - head[j]).scale(b)
    return total.divide_monomial((spec.m,))


# ---------------------------------------------------------------------------
# Construction 2: partitions


@lru_cache(maxsize=None)
def pmk_partition(spec: PmkSpec) -> MultiPoly:
    m, k = spec.m, spec.k
    terms = {}
    for part in enumerate_partitions(m + k, m):
        mult = part.multiplicities
        c = multinomial_general(spec.alpha, mult)
        if c == 0:
            continue
        exps = [0] * (m + k + 1)
        exps[0] = k - part.length
        for i, p in mult.items():
            exps[i] += p
        terms[tuple(exps)] = c
    return MultiPoly(terms)


# ---------------------------------------------------------------------------
# Construction 3: determinants


def a_matrix(k: int, lam) -> PolyMatrix:
    """The (k-1) x k matrix whose rows annihilate the gradient of P_mk.

    Row s (1-based) has ``(a*lam + j - s + 1) x_(j-s+1)`` in column j >= s-1,
    with ``a = k - s``; entries left of the band are zero.
    """
    lam = as_fraction(lam)
    rows = []
    for s in range(1, k):
        a = k - s
        row = []
        for j in range(k):
            d = j - (s - 1)
            row.append(x(d).scale(a * lam + d) if d >= 0 else MultiPoly({}))
        rows.append(row)
    return PolyMatrix(rows) if rows else PolyMatrix([])


def _minor_coefficients(k: int, lam) -> list[MultiPoly]:
    """``(-1)^(i+1) det A_i`` for i = 1..k, A_i being A without column i."""
    A = a_matrix(k, lam)
    if k == 1:
        return [MultiPoly.const(1)]
    out = []
    for i in range(1, k + 1):
        d = det_poly(A.delete_column(i - 1))
        out.append(d if i % 2 else -d)
    return out


def _gradient_prefactor(spec: PmkSpec) -> Fraction:
    return Fraction(1) / (factorial(spec.k - 1) * (-spec.lam) ** spec.k)


def pmk_determinant(spec: PmkSpec, route: str | None = None) -> MultiPoly:
    """P_mk from determinants of A.

    ``route`` selects ``"x"`` (valid for m >= k-1), ``"x_prime"`` (m = 0) or
    ``"one_form"`` (any m); by default the closed determinant is used where
    one exists and the one-form is integrated otherwise.
    """
    m, k, lam = spec.m, spec.k, spec.lam
    if route is None:
        route = "x" if m >= k - 1 else "x_prime" if m == 0 else "one_form"
    A = a_matrix(k, lam)
    if route == "x":
        if m < k - 1:
            raise ValueError("the x-row determinant needs m >= k-1")
        top = [x(m + i) for i in range(1, k + 1)]
        return det_poly(A.with_top_row(top)).scale(_gradient_prefactor(spec))
    if route == "x_prime":
        if m != 0:
            raise ValueError("the x'-row determinant is only for m = 0")
        top = [x(i).scale(i) for i in range(1, k + 1)]
        pref = Fraction(1) / (factorial(k) * (-lam) ** k)
        return det_poly(A.with_top_row(top)).scale(pref)
    if route == "one_form":
        # expanding det(dx over A) along the dx row gives these coefficients
        omega = PolyOneForm(
            (m + i, c) for i, c in enumerate(_minor_coefficients(k, lam), start=1))
        return potential_of_exact_one_form(omega).scale(_gradient_prefactor(spec))
    raise ValueError(f"unknown route {route!r}")


def pmk_gradient(spec: PmkSpec, i: int) -> MultiPoly:
    """Claimed value of dP_mk/dx_(m+i) from the column-deleted minors of A."""
    if not 1 <= i <= spec.k:
        raise ValueError(f"i must lie in [1, {spec.k}]")
    return _minor_coefficients(spec.k, spec.lam)[i - 1].scale(_gradient_prefactor(spec))


def pde_residual(P: MultiPoly, spec: PmkSpec) -> list[MultiPoly]:
    """``sum_i a_ji dP/dx_(m+i)`` for every row j of A."""
    A = a_matrix(spec.k, spec.lam)
    grads = [P.diff(spec.m + i) for i in range(1, spec.k + 1)]
    out = []
    for row in A.rows:
        acc = MultiPoly({})
        for a, g in zip(row, grads):
            if not a.is_zero() and not g.is_zero():
                acc = acc + a * g
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# lambda = -2 by square roots


def _sqrt_unit(coeffs: list[MultiPoly]) -> list[MultiPoly]:
    """Square root of 1 + c1 z + c2 z^2 + ... by Q_n = (S_n - sum Q_i Q_(n-i)) / 2."""
    q = [MultiPoly.const(1)]
    half = Fraction(1, 2)
    for n in range(1, len(coeffs)):
        acc = coeffs[n]
        for i in range(1, n):
            acc = acc - q[i] * q[n - i]
        q.append(acc.scale(half))
    return q


@lru_cache(maxsize=None)
def pmk_square_root(m: int, k: int) -> MultiPoly:
    """P_mk defined as the coefficient of z^k in (sqrt S - sqrt S_m) / (x0^m z^m)."""
    N = m + k
    S = [MultiPoly.const(1)] + [x(i) * x(0) ** (i - 1) for i in range(1, N + 1)]
    Sm = [c if i <= m else MultiPoly({}) for i, c in enumerate(S)]
    diff = _sqrt_unit(S)[N] - _sqrt_unit(Sm)[N]
    return diff.divide_monomial((m,))


def resonant_divisibility(m: int, k: int, n: int) -> MultiPoly:
    """P_mk^(n) / x0^(k-n), where -1/lambda = n < k; raises if not exact."""
    if not 1 <= n < k:
        raise ValueError("need a positive integer n < k")
    P = pmk_partition(PmkSpec(m, k, Fraction(-1, n)))
    return P.divide_monomial((k - n,))


# ---------------------------------------------------------------------------
# Lie algebra action


@dataclass(frozen=True)
class LieTruncation:
    """The quotient L_m / L_n with basis l_m .. l_(n-1).

    ``p`` adds the restricted truncation l_(i+j) = 0 for i+j >= p-1 and
    reduces structure constants mod p.
    """

    m: int
    n: int
    p: int | None = None

    def __post_init__(self):
        if self.m < 0 or self.n <= self.m:
            raise ValueError("need 0 <= m < n")

    @property
    def basis(self) -> range:
        return range(self.m, self.n)

    def bracket(self, i: int, j: int):
        """``[l_i, l_j]`` as ``(coefficient, index)``, or None when it vanishes."""
        s = i + j
        if s >= self.n or (self.p is not None and s >= self.p - 1):
            return None
        c = j - i
        if self.p is not None:
            c %= self.p
        if c == 0:
            return None
        return (c, s)

    def jacobi_defects(self) -> list[tuple[int, int, int]]:
        """Index triples where the Jacobi identity fails (should be empty)."""
        def br(u: dict, v: dict) -> dict:
            out: dict = {}
            for a, ca in u.items():
                for b, cb in v.items():
                    r = self.bracket(a, b)
                    if r:
                        out[r[1]] = out.get(r[1], 0) + ca * cb * r[0]
            if self.p is not None:
                out = {k: v % self.p for k, v in out.items()}
            return {k: v for k, v in out.items() if v}

        bad = []
        for a in self.basis:
            for b in self.basis:
                for c in self.basis:
                    total: dict = {}
                    for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
                        for key, val in br({u: 1}, br({v: 1}, {w: 1})).items():
                            total[key] = total.get(key, 0) + val
                    if self.p is not None:
                        total = {k: v % self.p for k, v in total.items()}
                    if any(total.values()):
                        bad.append((a, b, c))
        return bad


def lie_action(trunc: LieTruncation, i: int, P: MultiPoly) -> MultiPoly:
    """``T(l_i) P = sum_j [l_i, l_j] dP/dl_j``."""
    if i not in trunc.basis:
        raise ValueError(f"l_{i} is not a basis element of L_({trunc.m},{trunc.n})")
    outside = [v for v in P.variables() if v not in trunc.basis]
    if outside:
        raise ValueError(f"polynomial uses l_{outside[0]} outside the truncation")
    result = MultiPoly({}, "l")
    for j in sorted(P.variables()):
        br = trunc.bracket(i, j)
        if br is None:
            continue
        c, s = br
        result = result + (MultiPoly.var(s, "l") * P.diff(j)).scale(c)
    return result


def to_l_variables(P: MultiPoly, n: int) -> MultiPoly:
    """Substitute x_i = l_(n-i)."""
    return P.rename(lambda i: n - i, vars="l")


def center_generators(m: int, n: int, p: int | None = None) -> list[tuple[str, MultiPoly]]:
    """Central generators for L_(m+1, n+1): l_n .. l_(n-m), plus P_mk when n is even."""
    gens = [(f"l{n - j}", MultiPoly.var(n - j, "l")) for j in range(m + 1)]
    if n % 2 == 0:
        k = n // 2 - m
        P = to_l_variables(pmk_partition(PmkSpec(m, k, -2)), n)
        if p is not None:
            P = P.map_coeffs(lambda c: Fp.from_fraction(c, p))
        gens.append((f"P{m}{k}(l{n}..l{n // 2})", P))
    return gens


def center_invariants_check(m: int, n: int, p: int | None = None) -> Report:
    if n < 2 * m + 2:
        raise ValueError("need n >= 2m+2")
    trunc = LieTruncation(m + 1, n + 1, p)
    title = f"center of U({m + 1},{n + 1})" + (f" mod {p}" if p else "")
    report = Report(title)
    for name, G in center_generators(m, n, p):
        if p is not None and name.startswith("l"):
            G = G.map_coeffs(lambda c: Fp.from_fraction(c, p))
        nonzero = [i for i in trunc.basis if not lie_action(trunc, i, G).is_zero()]
        report.add(f"T(l_i) {name} = 0", not nonzero,
                   f"fails for l_{nonzero[0]}" if nonzero else "")
    return report


# ---------------------------------------------------------------------------
# Closed-form properties


def term_count_expected(spec: PmkSpec) -> int | None:
    """Number of nonzero terms predicted for m = 0 or m >= k-1, else None."""
    m, k = spec.m, spec.k
    n = spec.resonance
    resonant = n is not None and n < k
    if m == 0:
        return partition_count(k, n if resonant else None)
    if m >= k - 1:
        # the largest part uses one of the n allowed parts
        return sum(partition_count(i, n - 1 if resonant else None) for i in range(k))
    return None


def all_ones_expected(spec: PmkSpec) -> Fraction | None:
    m, k, lam = spec.m, spec.k, spec.lam
    if m == 0:
        return (-1) ** k * rat_binomial(1 / lam, k)
    if m >= k - 1:
        return Fraction((-1) ** k) / lam * rat_binomial(1 / lam, k - 1)
    return None


def denominator_lcm_expected(spec: PmkSpec) -> int | None:
    """LCM of coefficient denominators, known in closed form for lambda = -2."""
    if spec.lam != -2:
        return None
    k = spec.k
    if spec.m == 0:
        return 2 ** (2 * k - binary_digit_sum(k))
    if k == 1:
        return 2
    return 2 ** (2 * k - binary_digit_sum(k - 1) - 1)


def pmk_properties(spec: PmkSpec) -> Report:
    P = pmk_partition(spec)
    m, k = spec.m, spec.k
    report = Report(f"properties of P_{m}{k} at lambda={spec.lam}")
    w = weighted_checks(P, k, m + k)
    report.add("homogeneous of degree k, weight m+k", w.passed,
               "; ".join(f"{e}: {why}" for e, why in w.failures[:3]))

    ones = P.evaluate([Fraction(1)] * (m + k + 1))
    expected = all_ones_expected(spec)
    if expected is not None:
        report.add("value at all-ones", ones == expected, f"got {ones}, expected {expected}")
        if spec.lam == -2:
            if m == 0:
                df = Fraction(double_factorial(2 * k - 1), double_factorial(2 * k))
            else:
                df = Fraction(double_factorial(2 * k - 3), double_factorial(2 * k - 2) * 2)
            report.add("value at all-ones (double factorials)", ones == df, f"got {ones}, expected {df}")

    lcm_expected = denominator_lcm_expected(spec)
    if lcm_expected is not None:
        got = lcm(*(Fraction(c).denominator for c in P.terms.values()))
        report.add("denominator lcm", got == lcm_expected, f"got {got}, expected {lcm_expected}")

    count = term_count_expected(spec)
    if count is not None:
        report.add("nonzero term count", len(P) == count, f"got {len(P)}, expected {count}")
    return report


def cross_construction_check(spec: PmkSpec) -> Report:
    report = Report(f"P_{spec.m}{spec.k} constructions at lambda={spec.lam}")
    base = pmk_partition(spec)
    report.add("generating == partition", pmk_generating(spec) == base)
    report.add("determinant == partition", pmk_determinant(spec) == base)
    return report
