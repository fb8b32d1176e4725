"""Command-line interface.

Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage error,
3 brute-force work budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from coremoments import __version__
from coremoments.fibfit import (
    NoFit,
    Underdetermined,
    fit_moments,
    fit_raw_moment_detailed,
    normal_moment,
    symbolic_central,
    validate_fit,
)
from coremoments.genfunc import Method, Gs, fibonacci, recurrence_table, verify_all_methods
from coremoments.moments import DEFAULT_DIGITS, moment_table
from coremoments.partitions import WorkBudgetExceeded, brute_force_gf, brute_force_gf_hooks
from coremoments.report import FORMATS, ValidationFailure, build_theorems

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _frac(x: Fraction) -> str:
    return str(x)


def cmd_gf(args, out) -> int:
    if args.method == "cross-check":
        methods = ["sum", "closed", "recurrence"] + (["brute", "brute-hooks"] if args.s <= args.brute_max else [])
        polys = {}
        for m in methods:
            polys[m] = brute_force_gf_hooks(args.s) if m == "brute-hooks" else Gs(args.s, m)
        ref = polys["recurrence"]
        status = 0
        lines = []
        for m, p in polys.items():
            n = p.first_difference(ref)
            if n is None:
                lines.append(f"{m}: agrees")
            else:
                status = EXIT_MISMATCH
                lines.append(f"{m}: differs from recurrence at q^{n}: {p[n]} vs {ref[n]}")
        if args.format == "json":
            _emit(out, _dump({"s": args.s, "poly": [str(c) for c in ref.coeffs], "checks": lines}))
        else:
            _emit(out, _render_poly(ref, args.format))
            for line in lines:
                _emit(out, line)
        return status
    p = brute_force_gf(args.s) if args.method == "brute" else Gs(args.s, args.method)
    if args.format == "json":
        _emit(out, _dump({"s": args.s, "method": args.method, "coeffs": [str(c) for c in p.coeffs]}))
    else:
        _emit(out, _render_poly(p, args.format))
    return EXIT_OK


def _render_poly(p, fmt: str) -> str:
    text = p.render()
    if fmt == "latex":
        text = text.replace("*", " ")
    return text


def cmd_count(args, out) -> int:
    rows = []
    bad = False
    for s, g in enumerate(recurrence_table(args.max_s), start=1):
        count, fib = g(1), fibonacci(s + 1)
        bad |= count != fib
        rows.append((s, count, fib, count == fib))
    if args.format == "json":
        _emit(out, _dump([{"s": s, "count": str(c), "fib": str(f), "match": m} for s, c, f, m in rows]))
    else:
        _emit(out, "s\tG_s(1)\tF_{s+1}\tmatch")
        for s, c, f, m in rows:
            _emit(out, f"{s}\t{c}\t{f}\t{'yes' if m else 'NO'}")
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_moments(args, out) -> int:
    table = moment_table(args.s, args.max_k)
    ks = range(args.max_k + 1)
    if args.kind == "raw":
        values = [_frac(table.raw[k]) for k in ks]
    elif args.kind == "central":
        values = [_frac(table.central[k]) for k in ks]
    else:
        values = []
        for k in ks:
            st = table.standardized(k)
            values.append(str(st.to_decimal(args.digits)))
    if args.format == "json":
        _emit(out, _dump({"s": args.s, "kind": args.kind, "values": values}))
    else:
        for k, v in zip(ks, values):
            _emit(out, f"{k}\t{v}")
    return EXIT_OK


def cmd_fit(args, out) -> int:
    degree = "auto" if args.degree == "auto" else int(args.degree)
    if args.kind == "raw":
        fit = fit_raw_moment_detailed(args.k, degree)
        expr = fit.expr
        top = max(fit.sample)
        v = validate_fit(expr, args.k, range(top + 1, top + 1 + args.holdout), "raw", fit.sample)
        lo = min(fit.sample)
    else:
        raws = [fit_raw_moment_detailed(j, degree if j == args.k else "auto") for j in range(1, args.k + 1)]
        expr = symbolic_central(args.k, [f.expr for f in raws])
        top = max(max(f.sample) for f in raws)
        v = validate_fit(expr, args.k, range(2, top + 1 + args.holdout), "central")
        lo = 2
    if args.format == "json":
        _emit(out, _dump({"k": args.k, "kind": args.kind, "expr": expr.to_dict(),
                          "validated": v.passed, "range": [lo, max(v.checked) if v.checked else lo]}))
    elif args.format == "latex":
        _emit(out, expr.render_fraction(latex=True))
    else:
        _emit(out, expr.render_fraction())
        _emit(out, expr.render())
        _emit(out, v.summary())
    return EXIT_OK if v.passed else EXIT_MISMATCH


def cmd_limits(args, out) -> int:
    fits = fit_moments(max(args.max_k, 2))
    rows = []
    bad = False
    for k in range(1, args.max_k + 1):
        lim = fits.limit(k).value if k > 1 else None
        text = "0" if k == 1 else str(fits.limit(k))
        normal = normal_moment(k)
        ok = text == str(normal)
        bad |= not ok
        rows.append((k, text, _decimal(lim, args.digits), normal, ok))
    if args.format == "json":
        _emit(out, _dump([{"k": k, "limit": t, "decimal": d, "normal": n, "match": ok}
                          for k, t, d, n, ok in rows]))
    else:
        _emit(out, "k\tlimit\tdecimal\tnormal\tmatch")
        for k, t, d, n, ok in rows:
            _emit(out, f"{k}\t{t}\t{d}\t{n}\t{'yes' if ok else 'NO'}")
        _emit(out, f"status: verified-on-range (k in [1, {args.max_k}])")
    return EXIT_MISMATCH if bad else EXIT_OK


def _decimal(q, digits: int) -> str:
    if q is None or not q:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        a = Decimal(q.a.numerator) / Decimal(q.a.denominator)
        b = Decimal(q.b.numerator) / Decimal(q.b.denominator)
        val = +(a + b * Decimal(5).sqrt())
        return "0" if val == 0 else str(val)


def cmd_verify(args, out) -> int:
    report = verify_all_methods(args.max_s, args.brute_max)
    if args.format == "json":
        _emit(out, _dump({"max_s": args.max_s, "brute_max": args.brute_max,
                          "passed": report.passed, "checks": report.lines()}))
    else:
        for line in report.lines():
            _emit(out, line)
        _emit(out, f"{len(report.checks)} checks, {len(report.failures)} failures")
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_theorems(args, out) -> int:
    doc = build_theorems(args.max_k, args.holdout)
    text = doc.render(args.format)
    if args.output:
        Path(args.output).write_text(text)
        _emit(out, f"wrote {len(doc.entries)} entries to {args.output}")
    else:
        _emit(out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coremoments", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def positive(text: str) -> int:
        val = int(text)
        if val < 1:
            raise argparse.ArgumentTypeError("must be a positive integer")
        return val

    def nonneg(text: str) -> int:
        val = int(text)
        if val < 0:
            raise argparse.ArgumentTypeError("must be a non-negative integer")
        return val

    def add_format(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("gf", help="print G_s(q)")
    p.add_argument("--s", type=positive, required=True)
    p.add_argument("--method", choices=[m.value for m in Method] + ["cross-check"], default="recurrence")
    p.add_argument("--brute-max", type=positive, default=12, help="largest s brute-forced in cross-check")
    add_format(p)
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("count", help="check G_s(1) = F_{s+1}")
    p.add_argument("--max-s", type=positive, required=True)
    add_format(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("moments", help="exact moments of X_s")
    p.add_argument("--s", type=positive, required=True)
    p.add_argument("--max-k", type=nonneg, default=4)
    p.add_argument("--kind", choices=["raw", "central", "standardized"], default="raw")
    p.add_argument("--digits", type=positive, default=DEFAULT_DIGITS)
    add_format(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("fit", help="fit a closed form for one moment")
    p.add_argument("--k", type=nonneg, required=True)
    p.add_argument("--kind", choices=["raw", "central"], default="raw")
    p.add_argument("--degree", default="auto")
    p.add_argument("--holdout", type=positive, default=20)
    add_format(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("limits", help="limiting standardized moments vs the normal law")
    p.add_argument("--max-k", type=positive, default=10)
    p.add_argument("--digits", type=positive, default=DEFAULT_DIGITS)
    add_format(p)
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("verify", help="cross-check every construction of G_s")
    p.add_argument("--max-s", type=positive, default=40)
    p.add_argument("--brute-max", type=positive, default=12)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("theorems", help="write the fitted and checked moment formulas")
    p.add_argument("--max-k", type=positive, default=4)
    p.add_argument("--holdout", type=positive, default=20)
    p.add_argument("--output", "-o")
    add_format(p)
    p.set_defaults(func=cmd_theorems)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.brute_max > args.max_s:
        parser.error("--brute-max must not exceed --max-s")
    if args.command == "fit" and args.degree != "auto" and not args.degree.isdigit():
        parser.error("--degree must be 'auto' or a non-negative integer")
    try:
        return args.func(args, out)
    except WorkBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationFailure, NoFit) as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (Underdetermined, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
