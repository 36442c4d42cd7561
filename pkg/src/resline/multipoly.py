"""Sparse multivariate polynomials, partitions, and polynomial determinants.

A :class:`MultiPoly` maps exponent vectors to nonzero coefficients.  Exponent
vectors are tuples indexed by variable number with trailing zeros stripped,
so ``x0*x2`` is ``(1, 0, 1)`` and the constant monomial is ``()``.
Coefficients are normally Fractions, but any exact scalar supporting ring
operations and comparison with ``0`` works (the restricted checks use
:class:`~resline.scalars.Fp`).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .scalars import falling_factorial, format_scalar


def _strip(exps) -> tuple:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _add_exps(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


class MultiPoly:
    __slots__ = ("terms", "vars")

    def __init__(self, terms: Mapping[tuple, object] | None = None, vars: str = "x"):
        self.vars = vars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c == 0:
                    continue
                key = _strip(exps)
                if key in clean:
                    s = clean[key] + c
                    if s == 0:
                        del clean[key]
                    else:
                        clean[key] = s
                else:
                    clean[key] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict, vars: str) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.vars = vars
        return obj

    @classmethod
    def var(cls, i: int, vars: str = "x") -> "MultiPoly":
        return cls._raw({(0,) * i + (1,): Fraction(1)}, vars)

    @classmethod
    def const(cls, c, vars: str = "x") -> "MultiPoly":
        return cls({(): c}, vars)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def nvars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def coefficient(self, exps) -> object:
        return self.terms.get(_strip(exps), 0)

    def constant_term(self):
        return self.terms.get((), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    # -- arithmetic --------------------------------------------------------

    def _wrap(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "__add__"):
            return MultiPoly.const(other, self.vars)
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly._raw(terms, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "MultiPoly":
        if c == 0:
            return MultiPoly._raw({}, self.vars)
        return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, self.vars)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly._raw({e: c for e, c in terms.items() if c != 0}, self.vars)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return NotImplemented
        return self.scale(Fraction(1) / other if isinstance(other, int) else 1 / other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {(): other}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and substitution ------------------------------------------

    def diff(self, i: int) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            if i < len(e) and e[i]:
                new = list(e)
                new[i] -= 1
                terms[_strip(new)] = c * e[i]
        return MultiPoly._raw(terms, self.vars)

    def integrate(self, i: int) -> "MultiPoly":
        """Antiderivative in variable i with zero integration constant."""
        terms = {}
        for e, c in self.terms.items():
            new = list(e) + [0] * max(0, i + 1 - len(e))
            new[i] += 1
            terms[tuple(new)] = c * Fraction(1, new[i])
        return MultiPoly._raw(terms, self.vars)

    def gradient(self, indices: Iterable[int]) -> "PolyOneForm":
        return PolyOneForm([(i, self.diff(i)) for i in indices])

    def evaluate(self, values: Sequence | Mapping):
        """Evaluate at a point; ``values[i]`` is the value of variable i."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, x in enumerate(e):
                if x:
                    term = term * values[i] ** x
            total = total + term
        return total

    def rename(self, mapping, vars: str | None = None) -> "MultiPoly":
        """Relabel variables: variable i becomes variable ``mapping(i)``."""
        fn = mapping if callable(mapping) else mapping.__getitem__
        terms = {}
        for e, c in self.terms.items():
            size = 0
            moved = {}
            for i, x in enumerate(e):
                if x:
                    j = fn(i)
                    moved[j] = moved.get(j, 0) + x
                    size = max(size, j + 1)
            new = [0] * size
            for j, x in moved.items():
                new[j] = x
            key = tuple(new)
            terms[key] = terms.get(key, 0) + c
        return MultiPoly({k: v for k, v in terms.items()}, vars or self.vars)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly({e: fn(c) for e, c in self.terms.items()}, self.vars)

    def divide_monomial(self, exps) -> "MultiPoly":
        """Exact division by a monomial; raises if any term is not divisible."""
        exps = _strip(exps)
        terms = {}
        for e, c in self.terms.items():
            if len(e) < len(exps) and any(exps[len(e):]):
                raise ArithmeticError(f"monomial {exps} does not divide {e}")
            new = list(e)
            for i, x in enumerate(exps):
                new[i] -= x
                if new[i] < 0:
                    raise ArithmeticError(f"monomial {exps} does not divide {e}")
            terms[_strip(new)] = c
        return MultiPoly._raw(terms, self.vars)

    # -- serialization -----------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in graded lexicographic order, descending, variable 0 first."""
        width = self.nvars()

        def key(item):
            e = item[0]
            return (sum(e), e + (0,) * (width - len(e)))

        return sorted(self.terms.items(), key=key, reverse=True)

    def monomial_str(self, e) -> str:
        parts = []
        for i, x in enumerate(e):
            if x == 1:
                parts.append(f"{self.vars}{i}")
            elif x > 1:
                parts.append(f"{self.vars}{i}^{x}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for n, (e, c) in enumerate(self.sorted_terms()):
            negative = isinstance(c, (int, Fraction)) and c < 0
            mag = -c if negative else c
            mono = self.monomial_str(e)
            if not mono:
                body = format_scalar(mag)
            elif mag == 1 and isinstance(mag, (int, Fraction)):
                body = mono
            else:
                body = f"{format_scalar(mag)}*{mono}"
            if n == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={self.vars!r})"

    def to_json(self) -> dict:
        width = self.nvars()
        return {
            "vars": self.vars,
            "terms": [
                {"coeff": format_scalar(c), "exps": list(e + (0,) * (width - len(e)))}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        return cls(
            {tuple(t["exps"]): Fraction(t["coeff"]) for t in data["terms"]},
            data.get("vars", "x"),
        )

    @classmethod
    def parse(cls, text: str, vars: str = "x") -> "MultiPoly":
        """Parse the canonical text form, e.g. ``"1/2*x0*x2 - 1/8*x1^2"``."""
        text = text.strip()
        if text == "0":
            return cls({}, vars)
        tokens = re.findall(r"[+-]|[^+\-\s][^+-]*", text.replace(" ", ""))
        terms: dict = {}
        sign = 1
        var_re = re.compile(rf"^{re.escape(vars)}(\d+)(?:\^(\d+))?$")
        for tok in tokens:
            if tok in "+-":
                sign = -1 if tok == "-" else 1
                continue
            coeff = Fraction(sign)
            exps: dict[int, int] = {}
            for factor in tok.split("*"):
                m = var_re.match(factor)
                if m:
                    idx = int(m.group(1))
                    exps[idx] = exps.get(idx, 0) + int(m.group(2) or 1)
                else:
                    coeff *= Fraction(factor)
            size = max(exps, default=-1) + 1
            key = tuple(exps.get(i, 0) for i in range(size))
            terms[key] = terms.get(key, 0) + coeff
            sign = 1
        return cls(terms, vars)


def x(i: int) -> MultiPoly:
    return MultiPoly.var(i, "x")


# ---------------------------------------------------------------------------
# Partitions and multinomials


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0


def _partitions(n: int, cap: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(weight: int, min_largest_exclusive: int = 0) -> list[Partition]:
    """Partitions of ``weight`` whose largest part exceeds ``min_largest_exclusive``.

    Order is reverse lexicographic on the parts, e.g. ``(3), (2, 1), (1, 1, 1)``.
    """
    if weight < 1:
        raise ValueError("weight must be positive")
    out = []
    for first in range(weight, min_largest_exclusive, -1):
        for rest in _partitions(weight - first, first):
            out.append(Partition((first,) + rest))
    return out


def multinomial_general(alpha, multiplicities) -> Fraction:
    """``alpha(alpha-1)...(alpha-l+1) / (p1! p2! ...)`` where ``l = sum(p_i)``.

    ``multiplicities`` is either a mapping ``{i: p_i}`` or a sequence whose
    j-th entry is ``p_{j+1}``.
    """
    values = multiplicities.values() if isinstance(multiplicities, Mapping) else multiplicities
    values = list(values)
    if any(v < 0 for v in values):
        raise ValueError("multiplicities must be nonnegative")
    denom = 1
    for v in values:
        denom *= factorial(v)
    return Fraction(falling_factorial(Fraction(alpha), sum(values))) / denom


# ---------------------------------------------------------------------------
# Matrices of polynomials


class PolyMatrix:
    def __init__(self, rows: Sequence[Sequence[MultiPoly]]):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def delete_column(self, j: int) -> "PolyMatrix":
        return PolyMatrix([r[:j] + r[j + 1:] for r in self.rows])

    def with_top_row(self, row: Sequence[MultiPoly]) -> "PolyMatrix":
        return PolyMatrix([list(row)] + self.rows)


def _as_poly(v) -> MultiPoly:
    return v if isinstance(v, MultiPoly) else MultiPoly.const(v)


def det_poly(M: PolyMatrix | Sequence[Sequence]) -> MultiPoly:
    """Determinant by cofactor expansion along the sparsest remaining row."""
    rows = M.rows if isinstance(M, PolyMatrix) else [list(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError(f"det_poly needs a square matrix, got {n}x{len(rows[0]) if rows else 0}")
    if n == 0:
        return MultiPoly.const(1)
    rows = [[_as_poly(v) for v in r] for r in rows]
    memo: dict = {}

    def det(row_ids: tuple, col_ids: tuple) -> MultiPoly:
        if len(row_ids) == 1:
            return rows[row_ids[0]][col_ids[0]]
        key = (row_ids, col_ids)
        if key in memo:
            return memo[key]
        pivot = min(row_ids, key=lambda r: sum(len(rows[r][c]) for c in col_ids))
        rest = tuple(r for r in row_ids if r != pivot)
        sign_base = row_ids.index(pivot)
        total = MultiPoly({}, rows[0][0].vars)
        for pos, c in enumerate(col_ids):
            entry = rows[pivot][c]
            if entry.is_zero():
                continue
            minor = det(rest, col_ids[:pos] + col_ids[pos + 1:])
            term = entry * minor
            total = total - term if (sign_base + pos) % 2 else total + term
        memo[key] = total
        return total

    return det(tuple(range(n)), tuple(range(n)))


# ---------------------------------------------------------------------------
# One-forms


class PolyOneForm:
    """``sum_i c_i dx_i`` over distinct variable indices."""

    def __init__(self, components: Iterable[tuple[int, MultiPoly]]):
        self.components = [(i, _as_poly(c)) for i, c in components]
        idx = [i for i, _ in self.components]
        if len(set(idx)) != len(idx):
            raise ValueError("one-form variable indices must be distinct")

    def coefficient(self, i: int) -> MultiPoly:
        for j, c in self.components:
            if j == i:
                return c
        return MultiPoly({})

    def closedness_defect(self):
        """First pair (i, j) with d c_i/dx_j != d c_j/dx_i, or None."""
        for a, (i, ci) in enumerate(self.components):
            for j, cj in self.components[a + 1:]:
                if ci.diff(j) != cj.diff(i):
                    return (i, j)
        return None


class NotClosedError(ValueError):
    pass


def potential_of_exact_one_form(omega: PolyOneForm) -> MultiPoly:
    """P with dP = omega, no monomial free of the listed variables."""
    bad = omega.closedness_defect()
    if bad is not None:
        raise NotClosedError(f"one-form is not closed: d/dx{bad[1]} c{bad[0]} != d/dx{bad[0]} c{bad[1]}")
    vars_ = omega.components[0][1].vars if omega.components else "x"
    result = MultiPoly({}, vars_)
    for i, c in omega.components:
        remainder = c - result.diff(i)
        result = result + remainder.integrate(i)
    for i, c in omega.components:
        if result.diff(i) != c:
            raise NotClosedError(f"reconstruction failed in variable {i}")
    return result


@dataclass
class WeightReport:
    passed: bool
    failures: list[tuple[tuple, str]]


def weighted_checks(P: MultiPoly, degree: int | None, weight: int | None) -> WeightReport:
    """Check homogeneity of a degree and isobaric weight (variable i has weight i)."""
    failures = []
    for e in P.terms:
        deg = sum(e)
        w = sum(i * x for i, x in enumerate(e))
        if degree is not None and deg != degree:
            failures.append((e, f"degree {deg} != {degree}"))
        elif weight is not None and w != weight:
            failures.append((e, f"weight {w} != {weight}"))
    return WeightReport(not failures, failures)
