"""Truncated Laurent series with explicit precision.

``TruncatedSeries(ord, prec, coeffs)`` stores the coefficients of
``t^ord, ..., t^(prec-1)``; everything from ``t^prec`` on is unknown.  The
constructor strips leading zeros so that ``coeffs[0]`` is nonzero, except for
a series that vanishes to its precision, which is stored with ``ord == prec``
and no coefficients.

Coefficients can live in any exact ring that interoperates with ``int``:
Fractions, :class:`~resline.scalars.Fp`, :class:`~resline.scalars.RatFunc`
or :class:`~resline.multipoly.MultiPoly`.  Division is only needed by
:meth:`TruncatedSeries.inverse`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .scalars import format_scalar, rat_binomial

DEFAULT_PRECISION = 24


class PrecisionError(ValueError):
    pass


class TruncatedSeries:
    __slots__ = ("ord", "prec", "coeffs")

    def __init__(self, ord: int, prec: int, coeffs: Sequence):
        coeffs = list(coeffs)[: max(prec - ord, 0)]
        coeffs += [0] * (prec - ord - len(coeffs))
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        coeffs = coeffs[start:]
        ord += start
        if not coeffs:
            ord = prec
        self.ord = ord
        self.prec = prec
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_list(cls, coeffs: Sequence, prec: int | None = None, ord: int = 0):
        if prec is None:
            prec = ord + len(coeffs)
        coeffs = list(coeffs) + [0] * max(0, prec - ord - len(coeffs))
        return cls(ord, prec, coeffs)

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], prec: int):
        """Build from ``{exponent: coefficient}``; exponents >= prec are dropped."""
        live = {e: c for e, c in terms.items() if e < prec}
        if not live:
            return cls(prec, prec, [])
        lo = min(live)
        return cls(lo, prec, [live.get(e, 0) for e in range(lo, prec)])

    @classmethod
    def monomial(cls, e: int, prec: int, c=1):
        return cls.from_terms({e: c}, prec)

    @classmethod
    def one(cls, prec: int, one=1):
        return cls(0, prec, [one])

    # -- access ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, e: int):
        if e >= self.prec:
            raise PrecisionError(f"t^{e} lies beyond precision O(t^{self.prec})")
        if e < self.ord:
            return 0
        return self.coeffs[e - self.ord]

    __getitem__ = coefficient

    def leading_coefficient(self):
        if not self.coeffs:
            raise PrecisionError("series vanishes to its precision")
        return self.coeffs[0]

    def relative_precision(self) -> int:
        return self.prec - self.ord

    def terms(self) -> dict[int, object]:
        return {self.ord + i: c for i, c in enumerate(self.coeffs) if c != 0}

    def dense(self, start: int, stop: int) -> list:
        """Coefficients of t^start .. t^(stop-1); stop must not exceed prec."""
        return [self.coefficient(e) for e in range(start, stop)]

    def truncate(self, prec: int) -> "TruncatedSeries":
        if prec >= self.prec:
            return self
        return TruncatedSeries(self.ord, prec, self.coeffs)

    def shift(self, d: int) -> "TruncatedSeries":
        """Multiply by t^d."""
        return TruncatedSeries(self.ord + d, self.prec + d, self.coeffs)

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries(0, self.prec, [other]) if self.prec > 0 else TruncatedSeries(self.prec, self.prec, [])
        prec = min(self.prec, other.prec)
        lo = min(self.ord, other.ord, prec)
        out = [0] * (prec - lo)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.ord + i - lo
                if e < len(out):
                    out[e] = out[e] + c
        return TruncatedSeries(lo, prec, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ord, self.prec, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.ord, self.prec, [a * c for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        ord_ = self.ord + other.ord
        prec = min(self.ord + other.prec, other.ord + self.prec)
        n = prec - ord_
        if n <= 0:
            return TruncatedSeries(prec, prec, [])
        out = [0] * n
        b = other.coeffs
        for i, a in enumerate(self.coeffs[:n]):
            if a == 0:
                continue
            for j in range(min(len(b), n - i)):
                bj = b[j]
                if bj == 0:
                    continue
                out[i + j] = out[i + j] + a * bj
        return TruncatedSeries(ord_, prec, out)

    def __rmul__(self, other):
        return self.scale(other)

    def inverse(self) -> "TruncatedSeries":
        if not self.coeffs:
            raise ZeroDivisionError("series vanishes to its precision")
        a = self.coeffs
        n = len(a)
        inv0 = 1 / a[0] if not isinstance(a[0], int) else Fraction(1, a[0])
        b = [inv0]
        for k in range(1, n):
            s = 0
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i] != 0:
                    s = s + a[i] * b[k - i]
            b.append(-(s * inv0))
        return TruncatedSeries(-self.ord, -self.ord + n, b)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self.scale(1 / other if not isinstance(other, int) else Fraction(1, other))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return pow_rational(self, n)
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return TruncatedSeries(0, self.relative_precision(), [1])
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.ord - 1, self.prec - 1,
            [c * (self.ord + i) for i, c in enumerate(self.coeffs)],
        )

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.ord, self.prec) == (other.ord, other.prec) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.ord, self.prec, len(self.coeffs)))

    def agrees(self, other: "TruncatedSeries", prec: int | None = None) -> bool:
        """Equality of coefficients below the shared (or given) precision."""
        top = min(self.prec, other.prec)
        if prec is not None:
            top = min(top, prec)
        lo = min(self.ord, other.ord)
        return all(self.coefficient(e) == other.coefficient(e) for e in range(lo, top))

    # -- text ----------------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return f"O(t^{self.prec})"
        body = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            s = format_scalar(c)
            if " " in s and not s.startswith("("):
                s = f"({s})"
            if i == 0:
                body.append(s)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                body.append(mono if s == "1" else f"-{mono}" if s == "-1" else f"{s}*{mono}")
        inner = " + ".join(body).replace("+ -", "- ")
        head = "" if self.ord == 0 else f"t^{self.ord}*"
        return f"{head}({inner}) + O(t^{self.prec})"

    def __repr__(self):
        return f"TruncatedSeries({self.ord}, {self.prec}, {self.coeffs!r})"

    def to_json(self) -> dict:
        return {"ord": self.ord, "prec": self.prec, "coeffs": [format_scalar(c) for c in self.coeffs]}


# ---------------------------------------------------------------------------


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f(g(t))`` for ``ord(g) >= 1``, to the largest precision both inputs justify."""
    if g.is_zero() or g.ord <= 0:
        raise ValueError("composition needs ord(g) >= 1")
    e, rel = g.ord, g.relative_precision()
    prec = f.prec * e
    moving = [k for k in f.terms() if k != 0]
    if moving:
        prec = min(prec, min(moving) * e + rel)
    if f.is_zero():
        return TruncatedSeries(prec, prec, [])
    lo = f.ord * e
    out = [0] * max(prec - lo, 0)
    # negative powers consume precision of g, so keep a little extra
    g = g.truncate(prec + (1 - f.ord) * e if f.ord < 0 else prec)
    current = TruncatedSeries(0, prec, [1]) if f.ord == 0 else (g ** f.ord).truncate(prec)
    for i, c in enumerate(f.coeffs):
        if c != 0:
            if current.prec < prec:
                raise PrecisionError("internal precision bookkeeping failed")
            for j, v in enumerate(current.coeffs):
                idx = current.ord + j - lo
                if v != 0 and idx < len(out):
                    out[idx] = out[idx] + c * v
        if i + 1 < len(f.coeffs):
            if f.ord + i + 1 == 0:
                current = TruncatedSeries(0, prec, [1])
            else:
                current = (current * g).truncate(prec)
    return TruncatedSeries(lo, prec, out)


def pow_rational(f: TruncatedSeries, alpha) -> TruncatedSeries:
    """``f^alpha`` for rational alpha via the binomial series.

    With ``f = c t^d (1 + u)`` this is ``c^alpha t^(d alpha) sum_j C(alpha, j) u^j``.
    ``d*alpha`` must be an integer, and for non-integral alpha the leading
    coefficient must be exactly 1.
    """
    alpha = Fraction(alpha)
    if f.is_zero():
        raise PrecisionError("cannot raise a series that vanishes to precision")
    d = f.ord
    if (d * alpha).denominator != 1:
        raise ValueError(f"t^{d} raised to {alpha} is not a Laurent monomial")
    c = f.coeffs[0]
    if alpha.denominator == 1:
        return f ** int(alpha)
    if c != 1:
        raise ValueError("fractional power needs leading coefficient 1")
    rel = f.relative_precision()
    unit = f.shift(-d)
    u = unit - 1
    total = [0] * rel
    total[0] = 1
    power = None
    for j in range(1, rel):
        power = u if power is None else (power * u).truncate(rel)
        if power.is_zero():
            break
        b = rat_binomial(alpha, j)
        for i, v in enumerate(power.coeffs):
            idx = power.ord + i
            if idx < rel and v != 0:
                total[idx] = total[idx] + v * b
    shift = int(d * alpha)
    return TruncatedSeries(shift, shift + rel, total)


def residue(f: TruncatedSeries):
    """Coefficient of ``t^-1``."""
    if f.prec <= -1:
        raise PrecisionError(f"residue needs precision beyond t^-1, have O(t^{f.prec})")
    return f.coefficient(-1)
