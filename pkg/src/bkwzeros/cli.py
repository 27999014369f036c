"""Command-line front end.

Exit codes: 0 success, 1 computation or I/O failure, 2 usage error
(including an unknown family name).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .families import resolve_family
from .graphpoly import GraphError, Multigraph, mean_mst_length, steele, tutte
from .limitset import LimitSet, Window, limit_set
from .poly_core import ComplexPoly
from .recurrence import to_recurrence
from .rootfind import ContourError, RootFindingError, family_roots
from .svgplot import render_svg
from .verify import (
    CONVERSE_MAX,
    COVERAGE_MAX,
    TREND_MAX,
    convergence_report,
    converse_residual,
)


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad n range {text!r}; expected a..b") from None
    if lo > hi:
        raise UsageError(f"empty n range {text!r}")
    if lo < 0:
        raise UsageError("n must be non-negative")
    return lo, hi


def parse_window(text: str | None, grid: int) -> Window:
    if text is None:
        return Window(grid=grid)
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad window {text!r}") from None
    if len(vals) != 4:
        raise UsageError("window needs re_min,re_max,im_min,im_max")
    try:
        return Window(*vals, grid=grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _family(name: str):
    try:
        return resolve_family(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read family file {name!r}: {exc}") from None


def _graph(path: str) -> Multigraph:
    try:
        return Multigraph.from_dict(json.loads(Path(path).read_text()))
    except FileNotFoundError:
        raise UsageError(f"graph file {path!r} not found") from None
    except (json.JSONDecodeError, GraphError) as exc:
        raise UsageError(f"cannot read graph file {path!r}: {exc}") from None


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _pairs(p: ComplexPoly) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in p.coeffs]


def _pretty(p: ComplexPoly, var: str) -> str:
    """Human-readable form for polynomials with real coefficients."""
    c = p.coeffs
    if np.any(np.abs(c.imag) > 0):
        return "(" + " + ".join(f"({v.real:g}{v.imag:+g}j){var}^{k}" for k, v in enumerate(c)) + ")"
    parts = []
    for k in range(len(c) - 1, -1, -1):
        v = c[k].real
        if v == 0:
            continue
        mag = abs(v)
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        body = f"{mag:g}" if not mono else mono if mag == 1 else f"{mag:g}{mono}"
        parts.append(("-" if v < 0 else "+", body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# -- commands ----------------------------------------------------------------

def cmd_zeros(args) -> int:
    F = _family(args.family)
    lo, hi = parse_range(args.n)
    rootsets = family_roots(F, lo, hi, args.tol)
    if args.out == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "re", "im", "residual"])
        for rs in rootsets:
            for z, r in zip(rs.roots, rs.residuals):
                w.writerow([rs.n, repr(float(z.real)), repr(float(z.imag)), repr(float(r))])
        text = buf.getvalue()
    else:
        text = json.dumps({
            "family": F.name,
            "zeros": [{"n": rs.n, "roots": [[float(z.real), float(z.imag)] for z in rs.roots],
                       "residuals": [float(r) for r in rs.residuals]} for rs in rootsets],
        }, indent=1) + "\n"
    _emit(text, args.output)
    return 0


def cmd_limitset(args) -> int:
    F = _family(args.family)
    W = parse_window(args.window, args.grid)
    L = limit_set(F, W)
    if args.out == "json":
        text = json.dumps(L.to_dict(), indent=1) + "\n"
    else:
        text = render_svg(W, None, L, title=f"limit set of {F.name}")
    _emit(text, args.output)
    return 0


def cmd_verify(args) -> int:
    F = _family(args.family)
    lo, hi = parse_range(args.n)
    W = parse_window(args.window, args.grid)
    L = limit_set(F, W)
    rep = convergence_report(F, lo, hi, L)
    out = rep.to_dict()
    checks = {
        "trend": (rep.trend, TREND_MAX, rep.trend < TREND_MAX),
        "coverage": (rep.worst_coverage, COVERAGE_MAX, rep.worst_coverage < COVERAGE_MAX),
    }
    if len(F.terms) == 2 and F.effective_index(hi) >= 1:
        roots = family_roots(F, hi, hi)[0].roots
        worst = max((converse_residual(F, z, hi) for z in roots), default=0.0)
        out["converse_residual"] = worst
        checks["converse"] = (worst, CONVERSE_MAX, worst < CONVERSE_MAX)
    out["checks"] = {k: {"value": v, "threshold": t, "passed": bool(p)} for k, (v, t, p) in checks.items()}
    print(json.dumps(out, indent=1))
    ok = all(p for _, _, p in checks.values())
    for k, (v, t, p) in checks.items():
        print(f"{'PASS' if p else 'FAIL'} {k}: {v:.4g} (threshold {t:g})")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_plot(args) -> int:
    F = _family(args.family)
    lo, hi = parse_range(args.n)
    W = parse_window(args.window, args.grid)
    rootsets = family_roots(F, lo, hi, args.tol)
    L: LimitSet | None = limit_set(F, W) if args.overlay else None
    svg = render_svg(W, rootsets, L, title=f"zeros of {F.name}, {lo} <= n <= {hi}")
    _emit(svg, args.output)
    return 0


def cmd_recur(args) -> int:
    F = _family(args.family)
    R = to_recurrence(F)
    var = "t" if F.name == "steele_cycle" else "x"
    terms = [f"({_pretty(-f, var)}) P_{{n-{i}}}" for i, f in enumerate(R.f, start=1)]
    out = {
        "order": R.order,
        "f": [_pairs(f) for f in R.f],
        "initials": [_pairs(p) for p in R.initials],
        "display": "P_n = " + " + ".join(terms),
        "display_coefficients": [_pretty(-f, var) for f in R.f],
    }
    print(json.dumps(out, indent=1))
    return 0


def cmd_tutte(args) -> int:
    T = tutte(_graph(args.graph))
    print(json.dumps({"terms": T.to_list()}))
    return 0


def cmd_steele(args) -> int:
    S = steele(_graph(args.graph))
    print(json.dumps({"coefficients": S.to_strings()}))
    return 0


def cmd_mst_mean(args) -> int:
    m = mean_mst_length(_graph(args.graph))
    print(f"{m.numerator}/{m.denominator}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bkwzeros", description="Zeros and limit sets of exponential-sum polynomial families.")
    sub = p.add_subparsers(dest="command", required=True)

    def fam(sp):
        sp.add_argument("--family", required=True, help="built-in name or family JSON file")

    def win(sp, grid=512):
        sp.add_argument("--window", help="re_min,re_max,im_min,im_max (default -3,3,-3,3)")
        sp.add_argument("--grid", type=int, default=grid)

    s = sub.add_parser("zeros", help="zeros of P_n over a range of n")
    fam(s)
    s.add_argument("--n", required=True, help="a..b")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--out", choices=["csv", "json"], default="csv")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_zeros)

    s = sub.add_parser("limitset", help="limit set of the zeros")
    fam(s)
    win(s)
    s.add_argument("--out", choices=["json", "svg"], default="json")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_limitset)

    s = sub.add_parser("verify", help="empirical convergence report")
    fam(s)
    s.add_argument("--n", required=True)
    win(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("plot", help="SVG of zeros, optionally with the limit set")
    fam(s)
    s.add_argument("--n", required=True)
    win(s)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--overlay", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_plot)

    s = sub.add_parser("recur", help="linear recurrence satisfied by the family")
    fam(s)
    s.set_defaults(func=cmd_recur)

    for name, func, text in (("tutte", cmd_tutte, "Tutte polynomial"),
                             ("steele", cmd_steele, "Steele polynomial"),
                             ("mst-mean", cmd_mst_mean, "expected MST length")):
        s = sub.add_parser(name, help=text)
        s.add_argument("--graph", required=True, help="graph JSON file")
        if name != "mst-mean":
            s.add_argument("--out", choices=["json"], default="json")
        s.set_defaults(func=func)
    return p


def _join_window(argv: list[str]) -> list[str]:
    # "--window -3,3,-3,3" would otherwise be read as an unknown option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_window(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RootFindingError, ContourError, GraphError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
