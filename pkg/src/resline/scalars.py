"""Exact coefficient fields and small number-theoretic helpers.

Rationals are plain :class:`fractions.Fraction`.  Two further fields are
provided for positive characteristic work: the prime field ``F_p``
(:class:`Fp`) and the rational function field ``F_p(c)`` (:class:`RatFunc`).
Both interoperate with Python ints, which act as the image of ``Z``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or "a/b" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(c) -> str:
    if isinstance(c, (int, Fraction)):
        return format_rational(c)
    return str(c)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Prime field


class Fp:
    """Element of the prime field ``Z/pZ``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    @classmethod
    def from_fraction(cls, q, p: int) -> "Fp":
        q = Fraction(q)
        if q.denominator % p == 0:
            raise ZeroDivisionError(f"denominator of {q} is not invertible mod {p}")
        return cls(q.numerator * pow(q.denominator, -1, p), p)

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return Fp.from_fraction(other, self.p).value
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value * v, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * Fp(v, self.p).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(v, self.p) * self.inverse()

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return (self.value - v) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return f"{self.value} mod {self.p}"


# ---------------------------------------------------------------------------
# Dense univariate polynomials over F_p, lowest degree first.


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                 for i in range(n))


def _pneg(a, p):
    return tuple((-x) % p for x in a)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(v % p for v in out)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = list(_trim(a))
    return _trim(q), _trim(a)


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(x * inv % p for x in a)
    return a


class RatFunc:
    """Element of ``F_p(c)``: a reduced fraction ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den", "p")

    def __init__(self, num, den=(1,), p: int = 2):
        num = _trim(x % p for x in num)
        den = _trim(x % p for x in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den, self.p = (), (1,), p
            return
        g = _pgcd(num, den, p)
        if len(g) > 1:
            num = _pdivmod(num, g, p)[0]
            den = _pdivmod(den, g, p)[0]
        lead = pow(den[-1], -1, p)
        self.num = tuple(x * lead % p for x in num)
        self.den = tuple(x * lead % p for x in den)
        self.p = p

    @classmethod
    def gen(cls, p: int) -> "RatFunc":
        """The transcendental generator ``c``."""
        return cls((0, 1), (1,), p)

    @classmethod
    def const(cls, v, p: int) -> "RatFunc":
        if isinstance(v, Fp):
            v = v.value
        return cls((v % p,), (1,), p)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise ValueError("mixing fields of different characteristic")
            return other
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing fields of different characteristic")
            return RatFunc.const(other.value, self.p)
        if isinstance(other, int):
            return RatFunc.const(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        num = _padd(_pmul(self.num, o.den, p), _pmul(o.num, self.den, p), p)
        return RatFunc(num, _pmul(self.den, o.den, p), p)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num, self.p), self.den, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        return RatFunc(_pmul(self.num, o.num, p), _pmul(self.den, o.den, p), p)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("division by zero in F_p(c)")
        return RatFunc(self.den, self.num, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = RatFunc.const(1, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den, self.p))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den}, p={self.p})"

    def __str__(self):
        n = _poly_str(self.num)
        if self.den == (1,):
            return n
        return f"({n})/({_poly_str(self.den)})"


def _poly_str(a) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = "c" if i == 1 else f"c^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Combinatorial helpers


def falling_factorial(alpha, j: int):
    r = Fraction(1) if not isinstance(alpha, int) else 1
    for i in range(j):
        r *= alpha - i
    return r


def rat_binomial(alpha, j: int) -> Fraction:
    """Generalized binomial coefficient ``alpha(alpha-1)...(alpha-j+1)/j!``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return Fraction(falling_factorial(Fraction(alpha), j)) / factorial(j)


def double_factorial(n: int) -> int:
    if n < -1:
        raise ValueError("double factorial needs n >= -1")
    r = 1
    while n > 1:
        r *= n
        n -= 2
    return r


def binary_digit_sum(k: int) -> int:
    if k < 1:
        raise ValueError("k must be positive")
    return bin(k).count("1")


def p_adic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def partition_count(n: int, max_length: int | None = None) -> int:
    """Number of partitions of n, optionally with at most ``max_length`` parts.

    Counting partitions with at most L parts is the same as counting
    partitions with parts of size at most L (conjugation), which is the
    coin-change recurrence used here.
    """
    if n < 0:
        return 0
    largest = n if max_length is None else max_length
    table = [1] + [0] * n
    for part in range(1, min(largest, n) + 1):
        for s in range(part, n + 1):
            table[s] += table[s - part]
    return table[n]
