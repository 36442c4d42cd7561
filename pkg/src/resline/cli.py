"""Command-line front end: ``resline <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad flags, out-of-range parameters).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction

from . import charp
from .action import (
    Automorphism,
    TensorField,
    act,
    fractional_residue,
    normal_form,
    orbit_info,
    pairing,
)
from .pmk import (
    PmkSpec,
    center_invariants_check,
    pmk_determinant,
    pmk_generating,
    pmk_partition,
    pmk_square_root,
)
from .qft import qft_recursion, theorem10_check
from .report import Report
from .scalars import Fp, format_rational, format_scalar
from .series import TruncatedSeries
from .verify import SUITES, run_suite

CONSTRUCTIONS = {
    "partition": pmk_partition,
    "generating": pmk_generating,
    "determinant": pmk_determinant,
}

_NEGATIVE_VALUE = re.compile(r"^-\d")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.replace(" ", ",").split(",") if t]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", ",").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")


def _terms(text: str) -> dict[int, int]:
    """``"2:1,3:1"`` -> {2: 1, 3: 1}."""
    out = {}
    try:
        for item in text.replace(" ", ",").split(","):
            if item:
                e, c = item.split(":")
                out[int(e)] = out.get(int(e), 0) + int(c)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected exponent:coefficient pairs, got {text!r}")
    return out


def join_negative_values(argv: list[str]) -> list[str]:
    """Attach values such as ``-1/2`` to the option before them."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok.startswith("-") and not _NEGATIVE_VALUE.match(tok) and "=" not in tok
                and nxt is not None and _NEGATIVE_VALUE.match(nxt)):
            out.append(f"{tok}={nxt}" if tok.startswith("--") else tok + nxt)
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


# ---------------------------------------------------------------------------
# Commands. Each returns (payload dict, text, exit status).


def _poly_payload(P) -> dict:
    return {"text": str(P), "polynomial": P.to_json()}


def cmd_pmk(a):
    spec = PmkSpec(a.m, a.k, a.lam)
    payload = {"m": a.m, "k": a.k, "lambda": format_rational(spec.lam), "construction": a.construction}
    if a.construction != "all":
        if a.construction == "sqrt":
            if spec.lam != -2:
                raise UsageError("the square-root construction needs lambda = -2")
            P = pmk_square_root(a.m, a.k)
        else:
            P = CONSTRUCTIONS[a.construction](spec)
        payload.update(_poly_payload(P))
        return payload, str(P), 0
    results = {name: fn(spec) for name, fn in CONSTRUCTIONS.items()}
    if spec.lam == -2:
        results["sqrt"] = pmk_square_root(a.m, a.k)
    P = results["partition"]
    agree = all(Q == P for Q in results.values())
    payload.update(_poly_payload(P))
    payload["agree"] = agree
    text = str(P) + ("" if agree else "\nFAIL constructions disagree: " + ", ".join(
        n for n, Q in results.items() if Q != P))
    return payload, text, 0 if agree else 1


def _field(lam, mu, coeffs, prec) -> TensorField:
    coeffs = list(coeffs)
    if prec is not None:
        if prec < len(coeffs):
            raise UsageError("precision is smaller than the number of coefficients")
        coeffs += [Fraction(0)] * (prec - len(coeffs))
    return TensorField(lam, mu, coeffs)


def _field_text(T: TensorField) -> str:
    return ", ".join(format_scalar(c) for c in T.coeffs)


def cmd_act(a):
    T = _field(a.lam, a.mu, a.coeffs, a.prec)
    g_coeffs = a.g
    if not g_coeffs or g_coeffs[0] != 1:
        raise UsageError("--g lists coefficients of t, t^2, ... and must start with 1")
    prec = max(T.precision + 1, len(g_coeffs) + 1)
    g = Automorphism.from_coeffs(g_coeffs, prec=prec)
    out = act(g, T)
    return {"field": out.to_json(), "automorphism": g.to_json()}, _field_text(out), 0


def cmd_normal_form(a):
    T = _field(a.lam, a.mu, a.coeffs, a.prec)
    out, w = normal_form(T, a.m)
    info = orbit_info(T.lam, T.mu, a.m)
    text = "\n".join([
        f"field: {_field_text(out)}",
        f"witness: {', '.join(format_scalar(c) for c in w.coefficients())}",
        f"resonant index: {info['resonant_index']}",
    ])
    if info["exceptional"]:
        text += "\nexceptional orbit: lambda = 0 with non-positive integer mu"
    return {"field": out.to_json(), "witness": w.to_json(), "orbit": info}, text, 0


def cmd_fres(a):
    mu = a.mu if a.mu is not None else (a.k + 1) * a.lam
    T = _field(a.lam, mu, a.coeffs, None)
    value = fractional_residue(T, a.k)
    return {"k": a.k, "value": format_scalar(value)}, format_scalar(value), 0


def cmd_pair(a):
    T = _field(a.lam, a.mu, a.coeffs, a.prec)
    S = _field(a.lam2, a.mu2, a.coeffs2, a.prec)
    value = pairing(T, S)
    return {"value": format_scalar(value)}, format_scalar(value), 0


def _report_result(report: Report, extra: dict | None = None):
    payload = dict(extra or {})
    payload["report"] = report.to_json()
    return payload, str(report), 0 if report.passed else 1


def cmd_lie_check(a):
    if a.n < 2 * a.m + 2:
        raise UsageError("need n >= 2m+2")
    return _report_result(center_invariants_check(a.m, a.n, a.p))


def _json_number(v):
    return None if v == math.inf else v


def cmd_width(a):
    if not charp.is_prime(a.p):
        raise UsageError("p must be prime")
    terms = {e: c % a.p for e, c in a.series.items() if c % a.p}
    prec = a.prec if a.prec is not None else max(list(terms) + [0]) + 1
    if terms and prec <= max(terms):
        raise UsageError("precision must exceed every exponent")
    h = TruncatedSeries.from_terms({e: Fp(c, a.p) for e, c in terms.items()}, prec)
    inv = charp.charp_invariants(h, a.p)
    w = charp.width(h, a.p)
    payload = {"p": a.p, "ord0": _json_number(inv.ord0), "md": _json_number(inv.md),
               "ord_md": _json_number(inv.ord_md), "certified": inv.certified, "width": w}
    text = f"ord0={inv.ord0} md={inv.md} ord_md={inv.ord_md} width={w}"
    if not inv.certified:
        text += " (constant to precision)"
    return payload, text, 0


def cmd_lucas(a):
    if not charp.is_prime(a.p):
        raise UsageError("p must be prime")
    if any(q < 0 for q in a.parts):
        raise UsageError("parts must be nonnegative")
    residue, nonzero = charp.lucas_multinomial(a.k, a.parts, a.p)
    payload = {"p": a.p, "k": a.k, "parts": a.parts, "residue": residue, "nonzero": nonzero}
    return payload, f"{residue} mod {a.p} ({'nonzero' if nonzero else 'zero'})", 0


def cmd_counterexample(a):
    h = charp.counterexample_series(a.p, a.N)
    return {"p": a.p, "N": a.N, "series": h.to_json(), "text": str(h)}, str(h), 0


def cmd_restricted(a):
    return _report_result(charp.restricted_invariance_check(a.m, a.n, a.p))


def cmd_qft(a):
    polys = qft_recursion(a.kmax)
    payload = {"polynomials": [{"k": k, **_poly_payload(P)} for k, P in enumerate(polys, start=2)]}
    text = "\n".join(f"P{k} = {P}" for k, P in enumerate(polys, start=2))
    if not a.verify:
        return payload, text, 0
    report = Report("recursion vs closed form")
    for k in range(2, a.kmax + 1):
        report.extend(theorem10_check(k, polys))
    payload["report"] = report.to_json()
    return payload, text + "\n" + str(report), 0 if report.passed else 1


def cmd_verify(a):
    names = list(SUITES) if a.suite == "all" else [a.suite]
    reports = [run_suite(name, a.jobs) for name in names]
    passed = all(r.passed for r in reports)
    text = "\n".join(r.summary() if not a.verbose else str(r) for r in reports)
    for r in reports:
        if not r.passed and not a.verbose:
            text += "\n" + "\n".join(f"  FAIL {c.name}  [{c.detail}]" for c in r.failures())
    payload = {"passed": passed, "suites": [r.to_json() for r in reports]}
    return payload, text, 0 if passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")

    parser = argparse.ArgumentParser(prog="resline", description="Invariants of formal tensor fields on a line.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(handler=fn)
        return sp

    def field_args(sp, mu_required=True):
        sp.add_argument("--lambda", dest="lam", type=_rational, required=True)
        sp.add_argument("--mu", type=_rational, required=mu_required)
        sp.add_argument("--coeffs", type=_rational_list, required=True, help="x0,x1,... as rationals")

    sp = add("pmk", cmd_pmk, "compute the invariant polynomial P_mk")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=_rational, required=True)
    sp.add_argument("--construction", choices=[*CONSTRUCTIONS, "sqrt", "all"], default="partition")

    sp = add("act", cmd_act, "transform a tensor field by an automorphism")
    field_args(sp)
    sp.add_argument("--g", type=_rational_list, required=True, help="coefficients of t, t^2, ...")
    sp.add_argument("--prec", type=int, help="pad the field with zeros to this precision")

    sp = add("normal-form", cmd_normal_form, "reduce a tensor field to its normal form")
    field_args(sp)
    sp.add_argument("-m", type=int, default=0)
    sp.add_argument("--prec", type=int)

    sp = add("fres", cmd_fres, "fractional residue of order k")
    field_args(sp, mu_required=False)
    sp.add_argument("-k", "--k", dest="k", type=int, required=True)

    sp = add("pair", cmd_pair, "residue pairing of two tensor fields")
    field_args(sp)
    sp.add_argument("--lambda2", dest="lam2", type=_rational, required=True)
    sp.add_argument("--mu2", type=_rational, required=True)
    sp.add_argument("--coeffs2", type=_rational_list, required=True)
    sp.add_argument("--prec", type=int)

    sp = add("lie-check", cmd_lie_check, "center generators of a truncated Lie algebra")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-p", type=int, default=None)

    sp = add("width", cmd_width, "invariants ord0, md, ord_md and width of a series over F_p")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--series", type=_terms, required=True, help="exponent:coefficient pairs, e.g. 2:1,3:1")
    sp.add_argument("--prec", type=int)

    sp = add("lucas", cmd_lucas, "multinomial coefficient mod p by base-p digits")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--parts", type=_int_list, required=True)

    sp = add("counterexample", cmd_counterexample, "series over F_p(c) solving h - c h^p = t^p")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-N", type=int, required=True)

    sp = add("restricted", cmd_restricted, "mod-p center generators")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)

    sp = add("qft", cmd_qft, "recursive polynomials P_2..P_kmax")
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--verify", action="store_true")

    sp = add("verify", cmd_verify, "run verification suites")
    sp.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(join_negative_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, text, status = args.handler(args)
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"resline {args.command}: error: {msg}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps({"command": args.command, "status": status, **payload}, indent=2))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
