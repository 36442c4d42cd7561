"""Verification suites, one per acceptance criterion.

Each suite is a list of independent tasks ``(function, args)`` returning a
:class:`Report`; :func:`run_suite` runs them (optionally in worker processes)
and merges the reports in task order, so output never depends on scheduling.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable

from . import charp
from .action import (
    TensorField,
    act,
    fractional_residue,
    normal_form,
    random_automorphism,
    resonant_k,
)
from .goldens import golden_check
from .multipoly import MultiPoly
from .pmk import (
    LieTruncation,
    PmkSpec,
    center_invariants_check,
    cross_construction_check,
    lie_action,
    pde_residual,
    pmk_generating,
    pmk_gradient,
    pmk_partition,
    pmk_properties,
    pmk_square_root,
    resonant_divisibility,
)
from .qft import qft_recursion, theorem10_check
from .report import Report

F = Fraction
CROSS_LAMBDAS = [F(-2), F(-1, 2), F(1, 2), F(3), F(-1, 3), F(5), F(-1)]


def _random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = F(rng.randint(-9, 9), rng.randint(1, 6))
        if q or not nonzero:
            return q


# -- 1 ----------------------------------------------------------------------


def _cross(lam: Fraction) -> Report:
    report = Report(f"constructions agree, lambda={lam}")
    for m in range(5):
        for k in range(1, 7):
            report.extend(cross_construction_check(PmkSpec(m, k, lam)), f"m={m} k={k}: ")
    return report


def tasks_cross_construction():
    return [(_cross, (lam,)) for lam in CROSS_LAMBDAS]


# -- 2 ----------------------------------------------------------------------


def tasks_golden():
    return [(golden_check, ())]


# -- 3 ----------------------------------------------------------------------


def _closed_forms(k: int) -> Report:
    report = Report(f"closed forms, k={k}")
    lams = [F(-2), F(1, 2), F(3), F(-1, 3), F(2, 5)]
    lams += [F(-1, n) for n in range(1, k)]  # resonant values -1/lambda = n < k
    for lam in dict.fromkeys(lams):
        for m in sorted({0, 1, max(k - 2, 0), k - 1, k, k + 1}):
            report.extend(pmk_properties(PmkSpec(m, k, lam)), f"m={m} lambda={lam}: ")
    return report


def tasks_closed_forms():
    return [(_closed_forms, (k,)) for k in range(1, 11)]


# -- 4 ----------------------------------------------------------------------


def _pde(lam: Fraction) -> Report:
    report = Report(f"differential equations, lambda={lam}")
    for m in range(5):
        for k in range(1, 7):
            spec = PmkSpec(m, k, lam)
            P = pmk_partition(spec)
            ok = all(r.is_zero() for r in pde_residual(P, spec))
            grads = all(pmk_gradient(spec, i) == P.diff(m + i) for i in range(1, k + 1))
            report.add(f"m={m} k={k} residual vanishes", ok)
            report.add(f"m={m} k={k} gradient from minors", grads)
    return report


def _lie(n: int) -> Report:
    report = Report(f"center generators, n={n}")
    for m in range(0, (n - 2) // 2 + 1):
        report.extend(center_invariants_check(m, n), f"m={m}: ")
    return report


def _caution() -> Report:
    l = lambda i: MultiPoly.var(i, "l")  # noqa: E731
    P = l(4) * l(2) * F(1, 2) - l(3) ** 2 * F(1, 8)
    trunc = LieTruncation(1, 5)
    report = Report("quadratic invariant of L(1,5)")
    for i in trunc.basis:
        report.add(f"T(l_{i}) annihilates 1/2 l4 l2 - 1/8 l3^2", lie_action(trunc, i, P).is_zero())
    return report


def tasks_pde_lie():
    tasks = [(_pde, (lam,)) for lam in CROSS_LAMBDAS]
    tasks += [(_lie, (n,)) for n in range(2, 13)]
    tasks.append((_caution, ()))
    return tasks


# -- 5 ----------------------------------------------------------------------

ACTION_LAMBDAS = [F(-2), F(1, 2), F(-1, 3)]
ACTION_PREC = 24
ACTION_TRIALS = 100


def _random_field(rng, lam, mu, prec) -> TensorField:
    coeffs = [_random_rational(rng, nonzero=True)] + [_random_rational(rng) for _ in range(prec - 1)]
    return TensorField(lam, mu, coeffs)


def _group_action(lam: Fraction, m: int, seed: int = 0) -> Report:
    """Resonant fields keep P_mk under 100 random g; off-resonance some g moves it."""
    report = Report(f"G_{m + 1} action, lambda={lam}")
    rng = random.Random(f"{seed}/{lam}/{m}")
    gs = [random_automorphism(m + 1, 10, seed * 1000 + 37 * m + s, ACTION_PREC)
          for s in range(ACTION_TRIALS)]
    for k in range(1, 5):
        P = pmk_partition(PmkSpec(m, k, lam))
        mu = (m + k + 1) * lam
        T = _random_field(rng, lam, mu, ACTION_PREC)
        head_fixed, inv_fixed = True, True
        for g in gs:
            T2 = act(g, T)
            head_fixed &= T2.coeffs[: m + 1] == T.coeffs[: m + 1]
            inv_fixed &= P.evaluate(T2.coeffs) == P.evaluate(T.coeffs)
        report.add(f"k={k} resonant: x_0..x_{m} fixed", head_fixed)
        report.add(f"k={k} resonant: P_{m}{k} fixed", inv_fixed)

        off = mu + F(1, 2)
        assert resonant_k(lam, off, m) != k
        T = _random_field(rng, lam, off, ACTION_PREC)
        before = P.evaluate(T.coeffs)
        moved = next((i for i, g in enumerate(gs) if P.evaluate(act(g, T).coeffs) != before), None)
        report.add(f"k={k} off resonance: P_{m}{k} moved", moved is not None,
                   f"by g #{moved}" if moved is not None else "no g moved it")
    return report


def _divisibility() -> Report:
    report = Report("division by powers of x0 at integer -1/lambda")
    for m in range(4):
        for k in range(2, 6):
            for n in range(1, k):
                try:
                    Q = resonant_divisibility(m, k, n)
                    ok = Q * MultiPoly.var(0) ** (k - n) == pmk_partition(PmkSpec(m, k, F(-1, n)))
                except ArithmeticError as exc:
                    ok = False
                report.add(f"m={m} k={k} n={n}", ok)
    return report


def tasks_group_action():
    tasks = [(_group_action, (lam, m)) for lam in ACTION_LAMBDAS for m in range(4)]
    tasks.append((_divisibility, ()))
    return tasks


# -- 6 ----------------------------------------------------------------------

RESIDUE_LAMBDAS = [F(-2), F(1, 2), F(3), F(-1, 3), F(-3, 2), F(1)]


def _fractional_residue(k: int, samples: int = 50, seed: int = 0) -> Report:
    report = Report(f"fractional residue, k={k}")
    rng = random.Random(f"fres/{seed}/{k}")
    bad = []
    for s in range(samples):
        lam = RESIDUE_LAMBDAS[s % len(RESIDUE_LAMBDAS)]
        T = _random_field(rng, lam, (k + 1) * lam, k + 1)
        got = fractional_residue(T, k)
        expected = pmk_partition(PmkSpec(0, k, lam)).evaluate(T.coeffs)
        if got != expected:
            bad.append(f"sample {s}: {got} != {expected}")
    report.add(f"{samples} samples match P_0{k}", not bad, bad[0] if bad else "")
    return report


def tasks_fractional_residue():
    return [(_fractional_residue, (k,)) for k in range(1, 7)]


# -- 7 ----------------------------------------------------------------------

NORMAL_FORM_CASES = [
    (F(1), F(1, 3), 0), (F(-2), F(-6), 0), (F(1, 2), F(5, 2), 1), (F(-1, 3), F(-5, 3), 2),
    (F(3), F(7, 2), 1), (F(-2), F(-10), 1), (F(0), F(2), 0), (F(0), F(-1), 1),
    (F(2, 3), F(4), 2), (F(-1), F(1, 5), 3),
]


def _normal_form(seed: int) -> Report:
    lam, mu, m = NORMAL_FORM_CASES[seed % len(NORMAL_FORM_CASES)]
    rng = random.Random(f"nf/{seed}")
    T = _random_field(rng, lam, mu, 14)
    out, w = normal_form(T, m)
    k = resonant_k(lam, mu, m)
    tag = f"seed {seed} (lambda={lam}, mu={mu}, m={m}, resonance k={k})"
    report = Report(f"normal form, {tag}")
    report.add("witness maps input to output", act(w, T) == out)
    again, w2 = normal_form(out, m)
    report.add("idempotent", again == out and w2.is_identity())
    report.add("witness lies in G_(m+1)", w.level >= m + 1 and all(
        c == 0 for c in w.coefficients()[1: m + 1]))
    report.add("x_0..x_m preserved", out.coeffs[: m + 1] == T.coeffs[: m + 1])
    keep = {m + k} if k is not None else set()
    stray = [j for j in range(m + 1, out.precision) if out.coeffs[j] != 0 and j not in keep]
    report.add("canonical shape", not stray, f"nonzero x_{stray[0]}" if stray else "")
    if k is not None:
        P = pmk_partition(PmkSpec(m, k, lam))
        report.add(f"P_{m}{k} preserved", P.evaluate(out.coeffs) == P.evaluate(T.coeffs))
    return report


def tasks_normal_form():
    return [(_normal_form, (seed,)) for seed in range(50)]


# -- 8 ----------------------------------------------------------------------


def _sqrt_identification(m: int) -> Report:
    report = Report(f"square-root extraction, m={m}")
    for k in range(1, 7):
        root = pmk_square_root(m, k)
        spec = PmkSpec(m, k, -2)
        report.add(f"k={k} matches partition sum", root == pmk_partition(spec))
        report.add(f"k={k} matches binomial series", root == pmk_generating(spec))
    return report


def tasks_sqrt_identification():
    return [(_sqrt_identification, (m,)) for m in range(5)]


# -- 9 ----------------------------------------------------------------------


def _charp_invariance(p: int, trials: int = 100, count: int = 30) -> Report:
    report = Report(f"substitution invariants over F_{p}")
    for i, h in enumerate(charp.series_corpus(p, count, seed=p)):
        r = charp.width_invariance_test(h, trials, seed=1000 * p + i)
        report.extend(r, f"series {i}: ")
    return report


def _lucas(cases: int = 1000, seed: int = 0) -> Report:
    rng = random.Random(f"lucas/{seed}")
    bad = []
    for c in range(cases):
        p = rng.choice([2, 3, 5, 7])
        k = rng.randint(0, 10 ** 6)
        qs = [rng.randint(0, 1000) for _ in range(rng.randint(1, 4))]
        residue, nonzero = charp.lucas_multinomial(k, qs, p)
        exact = charp.exact_multinomial(k, qs) % p
        if residue != exact or nonzero != (exact != 0):
            bad.append(f"case {c}: k={k} qs={qs} p={p}")
    report = Report("digit-wise multinomial congruences")
    report.add(f"{cases} cases match exact multinomials", not bad, bad[0] if bad else "")
    return report


def _counterexample() -> Report:
    report = Report("series over F_p(c) without polynomial normal form")
    for p in (2, 3):
        try:
            charp.counterexample_series(p, p ** 4)
            ok = True
        except ArithmeticError:
            ok = False
        report.add(f"h - c h^p = t^p to O(t^{p ** 4}), p={p}", ok)
    return report


def _restricted() -> Report:
    report = Report("mod-p center generators")
    for m, n, p in [(0, 4, 7), (0, 6, 11), (1, 4, 11)]:
        report.extend(charp.restricted_invariance_check(m, n, p), f"(m={m}, n={n}, p={p}): ")
    return report


def tasks_charp():
    tasks = [(_charp_invariance, (p,)) for p in (2, 3, 5)]
    tasks += [(_lucas, ()), (_counterexample, ()), (_restricted, ())]
    return tasks


# -- 10 ---------------------------------------------------------------------


def _qft(kmax: int = 10) -> Report:
    report = Report("recursion vs closed form")
    polys = qft_recursion(kmax)
    for k in range(2, kmax + 1):
        report.extend(theorem10_check(k, polys))
    return report


def tasks_qft():
    return [(_qft, ())]


# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[[], list]] = {
    "cross-construction": tasks_cross_construction,
    "golden": tasks_golden,
    "closed-forms": tasks_closed_forms,
    "pde-lie": tasks_pde_lie,
    "group-action": tasks_group_action,
    "fractional-residue": tasks_fractional_residue,
    "normal-form": tasks_normal_form,
    "sqrt-identification": tasks_sqrt_identification,
    "charp": tasks_charp,
    "qft": tasks_qft,
}


def _call(task):
    fn, args = task
    return fn(*args)


def run_suite(name: str, jobs: int = 1) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    tasks = SUITES[name]()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_call, tasks))
    else:
        parts = [_call(t) for t in tasks]
    report = Report(name)
    for part in parts:
        report.extend(part, f"{part.title}: ")
    return report
