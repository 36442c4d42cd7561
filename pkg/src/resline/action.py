"""Automorphisms of the formal line acting on tensor fields.

A :class:`TensorField` with parameters ``(lam, mu)`` and coefficients
``x_0, x_1, ...`` stands for ``h(t) t^mu (dt)^(-lam)`` with
``h = sum x_k t^k``.  An :class:`Automorphism` ``g`` acts by substitution,

    h(t) t^mu (dt)^(-lam)  ->  h(g) (g/t)^mu g'^(-lam) t^mu (dt)^(-lam),

which is a right action: ``act(g.compose(h), T) == act(h, act(g, T))``.
Only automorphisms tangent to the identity (``g = t + ...``) are used, so
the rational powers of ``g/t`` and ``g'`` never leave the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import as_fraction, format_rational, format_scalar
from .series import (
    DEFAULT_PRECISION,
    PrecisionError,
    TruncatedSeries,
    pow_rational,
    residue,
    series_compose,
)


@dataclass(frozen=True)
class TensorField:
    lam: Fraction
    mu: Fraction
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", as_fraction(self.lam))
        object.__setattr__(self, "mu", as_fraction(self.mu))
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def as_series(self) -> TruncatedSeries:
        return TruncatedSeries.from_list(list(self.coeffs), prec=len(self.coeffs))

    def to_json(self) -> dict:
        return {
            "lambda": format_rational(self.lam),
            "mu": format_rational(self.mu),
            "coeffs": [format_scalar(c) for c in self.coeffs],
        }


class Automorphism:
    """``g(t) = t + sum_(i > level) g_i t^i``, known to ``O(t^prec)``."""

    __slots__ = ("series", "level")

    def __init__(self, series: TruncatedSeries, level: int = 1):
        if level < 1:
            raise ValueError("only automorphisms tangent to the identity are supported")
        if series.ord != 1 or series.coefficient(1) != 1:
            raise ValueError("automorphism must start with t")
        for i in range(2, min(level, series.prec - 1) + 1):
            if series.coefficient(i) != 0:
                raise ValueError(f"coefficient of t^{i} must vanish at level {level}")
        self.series = series
        self.level = level

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, prec: int | None = None, level: int | None = None):
        """From ``[g_1, g_2, ...]`` (coefficients of t, t^2, ...)."""
        terms = {i + 1: c for i, c in enumerate(coeffs)}
        if prec is None:
            prec = len(coeffs) + 1
        s = TruncatedSeries.from_terms(terms, prec)
        if level is None:
            level = 1
            while level + 1 < prec and s.coefficient(level + 1) == 0:
                level += 1
        return cls(s, level)

    @classmethod
    def identity(cls, prec: int = DEFAULT_PRECISION, level: int | None = None):
        return cls(TruncatedSeries.from_terms({1: 1}, prec), level or max(prec - 1, 1))

    @property
    def prec(self) -> int:
        return self.series.prec

    def coefficients(self) -> list:
        return [self.series.coefficient(i) for i in range(1, self.prec)]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self(other(t))``."""
        return Automorphism(series_compose(self.series, other.series), min(self.level, other.level))

    def inverse(self) -> "Automorphism":
        """Compositional inverse, found by killing one order at a time."""
        prec = self.prec
        h = TruncatedSeries.from_terms({1: 1}, prec)
        for j in range(2, prec):
            err = series_compose(self.series, h).coefficient(j)
            if err != 0:
                h = h - TruncatedSeries.monomial(j, prec, err)
        return Automorphism(h, self.level)

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.coefficients()[1:])

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.series == other.series

    def __repr__(self):
        return f"Automorphism({self.series}, level={self.level})"

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "prec": self.prec,
            "coeffs": [format_scalar(c) for c in self.coefficients()],
        }


def random_automorphism(n: int, depth: int, seed: int, prec: int = DEFAULT_PRECISION) -> Automorphism:
    """Seeded element of G_n with integer coefficients g_i in [-3, 3] for n < i <= depth."""
    if n < 1 or depth <= n:
        raise ValueError("need n >= 1 and depth > n")
    rng = random.Random(seed)
    terms = {1: 1}
    for i in range(n + 1, depth + 1):
        terms[i] = rng.randint(-3, 3)
    return Automorphism(TruncatedSeries.from_terms(terms, prec), n)


def act(g: Automorphism, T: TensorField) -> TensorField:
    G = g.series
    h = T.as_series()
    moved = series_compose(h, G)
    factor = pow_rational(G.shift(-1), T.mu) * pow_rational(G.derivative(), -T.lam)
    out = moved * factor
    prec = min(out.prec, T.precision)
    if prec <= 0:
        raise PrecisionError("automorphism precision exhausted")
    return TensorField(T.lam, T.mu, out.dense(0, prec))


def fractional_residue(T: TensorField, k: int):
    """``x0^k res((h/x0)^(-1/lam) t^(-k-1) dt)`` for a field with mu = (k+1) lam."""
    if T.lam == 0:
        raise ValueError("lambda must be nonzero")
    if T.mu != (k + 1) * T.lam:
        raise ValueError(f"fractional residue of order {k} needs mu = {(k + 1) * T.lam}")
    if T.precision <= k:
        raise PrecisionError(f"need coefficients x_0..x_{k}")
    x0 = T.coeffs[0]
    if x0 == 0:
        raise ValueError("x0 must be nonzero")
    unit = T.as_series().scale(Fraction(1) / x0)
    root = pow_rational(unit, -1 / T.lam)
    return residue(root.shift(-k - 1)) * x0 ** k


def pairing(T: TensorField, S: TensorField):
    """Residue of the product field, defined when lam + lam' = -1."""
    if T.lam + S.lam != -1:
        raise ValueError("pairing needs lambda + lambda' = -1")
    shift = T.mu + S.mu
    if shift.denominator != 1 or shift >= 0:
        raise ValueError("pairing needs mu + mu' to be a negative integer")
    product = (T.as_series() * S.as_series()).shift(int(shift))
    return residue(product)


# ---------------------------------------------------------------------------
# Normal forms


def resonant_k(lam, mu, m: int) -> int | None:
    """The positive integer k with mu = (m+k+1) lam, if any."""
    lam, mu = as_fraction(lam), as_fraction(mu)
    if lam == 0:
        return None
    r = mu / lam - m - 1
    if r.denominator == 1 and r >= 1:
        return int(r)
    return None


def orbit_info(lam, mu, m: int) -> dict:
    lam, mu = as_fraction(lam), as_fraction(mu)
    k = resonant_k(lam, mu, m)
    return {
        "resonant_k": k,
        "resonant_index": None if k is None else m + k,
        "exceptional": lam == 0 and mu.denominator == 1 and mu <= 0,
        "trivial": lam == 0 and mu == 0,
    }


def normal_form(T: TensorField, m: int) -> tuple[TensorField, Automorphism]:
    """Canonical representative of the G_(m+1)-orbit of T and a witness g.

    Coefficients x_(m+1), x_(m+2), ... are eliminated in order using
    ``g = t + c t^(j+1)``, which shifts x_j by ``c (mu - (j+1) lam) x0`` and
    leaves x_0..x_(j-1) alone.  The resonant index, if any, is kept.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if not T.coeffs or T.coeffs[0] == 0:
        raise ValueError("normal form needs x0 != 0")
    x0 = T.coeffs[0]
    N = T.precision
    witness = Automorphism.identity(N + 1, level=m + 1)
    current = T
    for j in range(m + 1, N):
        factor = T.mu - (j + 1) * T.lam
        if factor == 0 or current.coeffs[j] == 0:
            continue
        c = -current.coeffs[j] / (x0 * factor)
        g = Automorphism(TruncatedSeries.from_terms({1: 1, j + 1: c}, N + 1), j)
        current = act(g, current)
        if current.coeffs[j] != 0:
            raise ArithmeticError(f"elimination of x_{j} failed")
        witness = witness.compose(g)
    witness = Automorphism(witness.series, m + 1)
    return current, witness
