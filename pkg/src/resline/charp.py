"""Formal series in positive characteristic.

Invariants ord0, md, ord_md and the width of a Laurent series over F_p,
digit-wise multinomial congruences, a series over F_p(c) with no polynomial
normal form, and the mod-p version of the center check for truncated Lie
algebras.

Series over F_p are handled internally as ``({exponent: int}, prec)`` pairs
with coefficients reduced mod p; :class:`TruncatedSeries` over
:class:`~resline.scalars.Fp` is the public format.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .pmk import center_invariants_check
from .report import Report
from .scalars import Fp, RatFunc, is_prime, p_adic_valuation
from .series import TruncatedSeries

INFINITY = math.inf


# ---------------------------------------------------------------------------
# p-adic digits


@dataclass(frozen=True)
class PadicDigits:
    """Base-p digits, least significant first, followed by a repeating tail digit.

    Nonnegative integers have tail 0 and negative integers tail p-1.
    """

    p: int
    digits: tuple
    tail: int = 0

    def __post_init__(self):
        if not all(0 <= d < self.p for d in self.digits) or not 0 <= self.tail < self.p:
            raise ValueError("digits must lie in [0, p)")

    @classmethod
    def from_int(cls, k: int, p: int, width: int = 0) -> "PadicDigits":
        """Digits of k, at least ``width`` of them, plus enough to reach the tail."""
        tail = 0 if k >= 0 else p - 1
        digits = []
        while k not in (0, -1) or len(digits) < width:
            k, d = divmod(k, p)
            digits.append(d)
        return cls(p, tuple(digits), tail)

    def digit(self, i: int) -> int:
        return self.digits[i] if i < len(self.digits) else self.tail

    def to_int(self) -> int:
        if self.tail not in (0, self.p - 1):
            raise ValueError("only eventually 0 or p-1 tails are integers")
        value = sum(d * self.p ** i for i, d in enumerate(self.digits))
        if self.tail:
            value -= self.p ** len(self.digits)
        return value


def _digit_multinomial(k: int, qs: Sequence[int]) -> int:
    rest = k - sum(qs)
    if rest < 0:
        return 0
    out = math.factorial(k) // math.factorial(rest)
    for q in qs:
        out //= math.factorial(q)
    return out


def lucas_multinomial(k: int, qs: Sequence[int], p: int) -> tuple[int, bool]:
    """``k(k-1)...(k-q+1) / (q_1! q_2! ...)`` mod p via base-p digits, q = sum(qs)."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if any(q < 0 for q in qs):
        raise ValueError("parts must be nonnegative")
    q_digits = [PadicDigits.from_int(q, p) for q in qs]
    width = max([len(d.digits) for d in q_digits] + [1])
    kd = PadicDigits.from_int(k, p, width)
    residue = 1
    for i in range(width):
        residue = residue * _digit_multinomial(kd.digit(i), [d.digit(i) for d in q_digits]) % p
    return residue, residue != 0


def exact_multinomial(k: int, qs: Sequence[int]) -> int:
    """Integer ``k(k-1)...(k-q+1) / (q_1! q_2! ...)`` for any integer k."""
    q = sum(qs)
    num = 1
    for i in range(q):
        num *= k - i
    den = 1
    for part in qs:
        den *= math.factorial(part)
    return num // den


# ---------------------------------------------------------------------------
# Invariants of series over F_p


@dataclass(frozen=True)
class CharPInvariants:
    ord0: int | float
    md: int | float
    ord_md: int | float
    certified: bool

    def as_tuple(self) -> tuple:
        return (self.ord0, self.md, self.ord_md)


def _nonzero_terms(h: TruncatedSeries) -> dict[int, object]:
    return {e: c for e, c in h.terms().items() if c != 0}


def _series_prime(h: TruncatedSeries) -> int:
    for c in h.coeffs:
        if isinstance(c, (Fp, RatFunc)):
            return c.p
    raise ValueError("cannot infer p from the coefficients; pass p explicitly")


def _invariants(terms: Mapping[int, object], prec: int, p: int) -> CharPInvariants:
    moving = sorted(e for e in terms if e != 0)
    if not moving:
        return CharPInvariants(INFINITY, INFINITY, INFINITY, False)
    ord0 = moving[0]
    md = min(p_adic_valuation(e, p) for e in moving)
    ord_md = next(e for e in moving if p_adic_valuation(e, p) == md)
    return CharPInvariants(ord0, md, ord_md, True)


def _width(terms: Mapping[int, object], prec: int, p: int) -> int:
    inv = _invariants(terms, prec, p)
    if not inv.certified or inv.ord_md <= inv.ord0:
        return 0
    top = inv.ord_md
    top_scale = p ** inv.md
    best = None
    for m in terms:
        if m == 0 or m >= top:
            continue
        den = p ** p_adic_valuation(m, p) - top_scale
        if den <= 0:
            raise ArithmeticError(f"width denominator {den} at exponent {m} is not positive")
        value = (top - m) // den
        best = value if best is None else max(best, value)
    if best is None:
        raise ArithmeticError("no width candidates although ord_md > ord0")
    return best


def charp_invariants(h: TruncatedSeries, p: int | None = None) -> CharPInvariants:
    """ord0, md and ord_md of h; ``certified`` is False when h is constant to precision."""
    p = p or _series_prime(h)
    return _invariants(_nonzero_terms(h), h.prec, p)


def width(h: TruncatedSeries, p: int | None = None) -> int:
    p = p or _series_prime(h)
    return _width(_nonzero_terms(h), h.prec, p)


# ---------------------------------------------------------------------------
# Fast substitution over F_p


def _mul_trunc(a: list[int], b: Mapping[int, int] | list[int], n: int, p: int) -> list[int]:
    out = [0] * n
    items = b.items() if isinstance(b, Mapping) else enumerate(b)
    items = [(j, v) for j, v in items if v and j < n]
    for i, x in enumerate(a[:n]):
        if x:
            for j, v in items:
                if i + j >= n:
                    break
                out[i + j] = (out[i + j] + x * v) % p
    return out


def _inverse_unit(u: Mapping[int, int], n: int, p: int) -> list[int]:
    inv0 = pow(u[0], -1, p)
    b = [inv0]
    for k in range(1, n):
        s = sum(u.get(i, 0) * b[k - i] for i in range(1, k + 1))
        b.append(-s * inv0 % p)
    return b


def substitute_mod_p(terms: Mapping[int, int], prec: int, g: Sequence[int], p: int) -> dict[int, int]:
    """``h(g(t))`` for ``g = g[0] t + g[1] t^2 + ...`` with ``g[0]`` invertible mod p.

    g is an exact polynomial, so the result is known to the same precision.
    """
    if not terms:
        return {}
    c = g[0] % p
    if c == 0:
        raise ValueError("g must have an invertible linear coefficient")
    cinv = pow(c, -1, p)
    u = {i: v * cinv % p for i, v in enumerate(g) if v % p}
    lo = min(terms)
    n = prec - lo
    if lo < 0:
        power = _inverse_unit(u, n, p)
        step = power
        for _ in range(-lo - 1):
            power = _mul_trunc(power, step, n, p)
    else:
        power = [1] + [0] * (n - 1)
        for _ in range(lo):
            power = _mul_trunc(power, u, n, p)
    out = [0] * n
    hi = max(terms)
    for e in range(lo, hi + 1):
        if e == 0:
            power = [1] + [0] * (n - 1)
        x = terms.get(e, 0)
        if x:
            factor = x * pow(c, e, p) % p
            off = e - lo
            for i in range(n - off):
                if power[i]:
                    out[off + i] = (out[off + i] + factor * power[i]) % p
        if e < hi:
            power = _mul_trunc(power, u, n - (e + 1 - lo), p) + [0] * (e + 1 - lo)
    return {lo + i: v for i, v in enumerate(out) if v}


def random_substitution(rng: random.Random, p: int, depth: int = 6, scale: bool = True) -> list[int]:
    """Coefficients of a random ``c t + g_2 t^2 + ... + g_depth t^depth`` over F_p."""
    c = rng.randrange(1, p) if scale else 1
    return [c] + [rng.randrange(p) for _ in range(depth - 1)]


def _to_int_terms(h: TruncatedSeries, p: int) -> dict[int, int]:
    out = {}
    for e, c in h.terms().items():
        v = c.value if isinstance(c, Fp) else int(c) % p
        if v:
            out[e] = v
    return out


def _from_int_terms(terms: Mapping[int, int], prec: int, p: int) -> TruncatedSeries:
    return TruncatedSeries.from_terms({e: Fp(v, p) for e, v in terms.items()}, prec)


def substitute(h: TruncatedSeries, g: Sequence[int], p: int | None = None) -> TruncatedSeries:
    p = p or _series_prime(h)
    return _from_int_terms(substitute_mod_p(_to_int_terms(h, p), h.prec, g, p), h.prec, p)


Probe = Callable[[Mapping[int, int], int, int], object]

DEFAULT_PROBES: dict[str, Probe] = {
    "ord0": lambda terms, prec, p: _invariants(terms, prec, p).ord0,
    "md": lambda terms, prec, p: _invariants(terms, prec, p).md,
    "ord_md": lambda terms, prec, p: _invariants(terms, prec, p).ord_md,
    "width": _width,
}


def width_invariance_test(h: TruncatedSeries, trials: int, seed: int, p: int | None = None,
                          probes: Mapping[str, Probe] | None = None,
                          scale: bool = True, depth: int = 6) -> Report:
    """Apply seeded substitutions ``t -> c t + ...`` and compare the probes before and after."""
    p = p or _series_prime(h)
    probes = DEFAULT_PROBES if probes is None else probes
    terms = _to_int_terms(h, p)
    before = {name: f(terms, h.prec, p) for name, f in probes.items()}
    rng = random.Random(seed)
    first_bad: dict[str, str] = {}
    for trial in range(trials):
        g = random_substitution(rng, p, depth, scale)
        moved = substitute_mod_p(terms, h.prec, g, p)
        for name, f in probes.items():
            if name not in first_bad:
                after = f(moved, h.prec, p)
                if after != before[name]:
                    first_bad[name] = f"trial {trial}, g={g}: {before[name]} -> {after}"
    report = Report(f"substitution invariance over F_{p}, {trials} trials")
    for name in probes:
        report.add(f"{name} stable", name not in first_bad, first_bad.get(name, f"value {before[name]}"))
    return report


def series_corpus(p: int, count: int, seed: int, prec: int = 30) -> list[TruncatedSeries]:
    """Seeded sparse Laurent series over F_p with varied ord0, md and ord_md."""
    rng = random.Random(seed)
    levels = [d for d in range(3) if p ** d <= 9]
    corpus = []
    while len(corpus) < count:
        d = rng.choice(levels)
        step = p ** d
        lo = rng.choice([-2, -1, 1, 1, 2, 3]) * step
        candidates = [e for e in range(lo, prec) if e % step == 0 and e != 0]
        terms = {e: rng.randrange(1, p) for e in candidates if rng.random() < 0.35}
        exact = [e for e in candidates if p_adic_valuation(e, p) == d]
        if not exact:
            continue
        terms[rng.choice(exact)] = rng.randrange(1, p)
        if rng.random() < 0.5:
            terms[0] = rng.randrange(p)
        corpus.append(_from_int_terms({e: v for e, v in terms.items() if v}, prec, p))
    return corpus


# ---------------------------------------------------------------------------
# Series over F_p(c)


def counterexample_series(p: int, N: int) -> TruncatedSeries:
    """``h = sum_(i>=1) c^((p^(i-1)-1)/(p-1)) t^(p^i)`` over F_p(c), the solution of h - c h^p = t^p."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if N < p * p:
        raise ValueError("need N >= p^2")
    c = RatFunc.gen(p)
    terms = {}
    i = 1
    while p ** i < N:
        terms[p ** i] = c ** ((p ** (i - 1) - 1) // (p - 1))
        i += 1
    h = TruncatedSeries.from_terms(terms, N)
    lhs = h - h ** p * c
    rhs = TruncatedSeries.from_terms({p: RatFunc.const(1, p)}, N)
    if not lhs.agrees(rhs) or lhs.prec < N:
        raise ArithmeticError("h - c h^p = t^p fails")
    return h


# ---------------------------------------------------------------------------
# Restricted Lie algebras


def restricted_invariance_check(m: int, n: int, p: int) -> Report:
    """Mod-p center generators of the truncated algebra are annihilated."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if p == 2:
        raise ValueError("p = 2 is not supported: the invariants have even denominators")
    if m < 0 or not 2 * m + 2 <= n <= p - 2:
        raise ValueError("need 2m+2 <= n <= p-2")
    return center_invariants_check(m, n, p)
