"""
Command-line front end.

    robin-ball eigen --dim 2 --alpha 1 --l 0 --m 1
    robin-ball spectrum --dim 2 --alpha 1 --count 3 --format csv
    robin-ball spectrum --interval --alpha -3 --count 2
    robin-ball table1 --format csv
    robin-ball verify --dim 2 --alpha 1 --cutoff 40 --grids 512,1024,2048
    robin-ball eigenfunction --dim 3 --alpha 1 --l 0 --m 1 --samples 11
    robin-ball interval --alpha -3 --count 2

Exit status: 0 success, 1 verification mismatch, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .ball_spectrum import (
    BallProblem,
    assemble_spectrum,
    branch_eigenvalue,
    defining_residual,
    radial_eigenfunction,
    solve_negative_root,
    solve_positive_root,
    spectrum_by_count,
)
from .exceptions import ConvergenceError, RobinError
from .interval_spectrum import IntervalProblem, interval_eigenfunction, solve_interval
from .oracle import verify_interval, verify_spectrum
from .tables import table1, table2

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------


def _problem_echo(args) -> dict:
    if getattr(args, "interval", False):
        return {"kind": "interval", "alpha": args.alpha}
    return {"kind": "ball", "dim": args.dim, "alpha": args.alpha}


def _emit_json(problem: dict, records: list[dict], out, **extra):
    doc = {"schema_version": SCHEMA_VERSION, "problem": problem, **extra, "records": records}
    json.dump(doc, out, indent=2)
    out.write("\n")


def _fmt(v, digits: int):
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, float):
        return f"{v:.{digits}f}"
    return str(v)


def _emit_csv(records: list[dict], columns: list[str], digits: int, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for rec in records:
        w.writerow([_fmt(rec.get(c), digits) for c in columns])


def _emit(args, records: list[dict], columns: list[str], out, **extra):
    if args.format == "csv":
        _emit_csv(records, columns, args.digits, out)
    else:
        _emit_json(_problem_echo(args), records, out, **extra)


_BALL_COLUMNS = ["l", "m", "mu", "k", "sign_class", "multiplicity", "order"]
_INTERVAL_COLUMNS = ["m", "mu", "branch", "k", "a", "b"]


def _ball_problem(args) -> BallProblem:
    if args.dim is None:
        raise UsageError("--dim is required (or use --interval)")
    return BallProblem(args.dim, args.alpha)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_eigen(args, out):
    problem = _ball_problem(args)
    l, m = args.l, args.m
    if args.branch == "positive":
        solve_positive_root(problem, l, m)  # raises BranchError when alpha <= -l and m == 1
        rec = branch_eigenvalue(problem, l, m)
    elif args.branch == "negative":
        if m != 1:
            raise UsageError("--branch negative needs --m 1")
        solve_negative_root(problem, l)
        rec = branch_eigenvalue(problem, l, m)
    else:
        rec = branch_eigenvalue(problem, l, m)
    d = rec.to_dict()
    d["residual"] = defining_residual(problem, rec)
    _emit(args, [d], _BALL_COLUMNS + ["residual"], out)
    return 0


def _interval_spectrum(args) -> list:
    problem = IntervalProblem(args.alpha)
    if args.count is not None:
        return solve_interval(problem, args.count)
    count = 4
    while True:
        pairs = solve_interval(problem, count)
        if pairs[-1].mu > args.cutoff:
            return [p for p in pairs if p.mu <= args.cutoff]
        count *= 2


def cmd_spectrum(args, out):
    if (args.cutoff is None) == (args.count is None):
        raise UsageError("give exactly one of --cutoff and --count")
    if args.interval:
        pairs = _interval_spectrum(args)
        _emit(args, [p.to_dict() for p in pairs], _INTERVAL_COLUMNS, out)
        return 0
    problem = _ball_problem(args)
    if args.count is not None:
        spec = spectrum_by_count(problem, args.count)
        # one row per eigenvalue, counted with multiplicity
        recs = [r.to_dict() | {"n": i} for i, r in enumerate(spec.expanded()[: args.count], start=1)]
        _emit(args, recs, ["n"] + _BALL_COLUMNS, out)
    else:
        spec = assemble_spectrum(problem, args.cutoff)
        _emit(args, [r.to_dict() for r in spec.records], _BALL_COLUMNS, out, cutoff=args.cutoff)
    return 0


def cmd_interval(args, out):
    args.interval = True
    return cmd_spectrum(args, out)


def cmd_table(args, out, which: str):
    table = table1() if which == "table1" else table2()
    rows = []
    for r in table.rows:
        rows.append({"quantity": r.quantity, "dim": r.dim, "nu": r.nu, "l": r.l, "values": r.values, "exact": r.exact})
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["quantity", "dim", "nu", "l"] + [f"alpha={a:g}" for a in table.alphas])
        for r in table.rows:
            w.writerow([r.quantity, r.dim, r.nu, "" if r.l is None else r.l] + [f"{v:.{args.digits}f}" for v in r.values])
    else:
        _emit_json({"kind": which, "alpha": list(table.alphas)}, rows, out)
    return 0


def _parse_grids(text: str) -> list[int]:
    try:
        grids = [int(g) for g in text.split(",") if g.strip()]
    except ValueError:
        raise UsageError(f"--grids must be a comma-separated list of integers, got {text!r}") from None
    if not grids:
        raise UsageError("--grids is empty")
    return grids


def cmd_verify(args, out):
    grids = _parse_grids(args.grids)
    if args.interval:
        if args.cutoff is not None and args.count is not None:
            raise UsageError("give at most one of --cutoff and --count")
        if args.cutoff is not None:
            count = len(_interval_spectrum(args))
        else:
            count = args.count or 5
        report = verify_interval(IntervalProblem(args.alpha), count, grids)
    else:
        if args.cutoff is None:
            raise UsageError("ball verification needs --cutoff")
        report = verify_spectrum(_ball_problem(args), args.cutoff, grids)

    if args.json:
        _emit_json(_problem_echo(args), [report.to_dict()], out)
    else:
        out.write(f"grids {','.join(map(str, report.grids))}: {len(report.closed_form)} eigenvalues checked\n")
        for (l, m), exact, fd, err, g in zip(
            report.labels, report.closed_form, report.discrete, report.abs_errors, report.guardrails
        ):
            out.write(f"  l={l} m={m}  closed {exact:.10g}  oracle {fd:.10g}  |err| {err:.2e}  (limit {g:.2e})\n")
        order = "n/a" if report.order != report.order else f"{report.order:.3f}"
        out.write(f"max |err| {report.max_abs_error:.3e}, min observed order {order}\n")
        for p in report.problems:
            out.write(f"MISMATCH {p}\n")
        out.write("PASS\n" if report.passed else "FAIL\n")
    return 0 if report.passed else 1


def cmd_eigenfunction(args, out):
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    xs = [i / (args.samples - 1) for i in range(args.samples)]
    w = csv.writer(out, lineterminator="\n")
    if args.interval:
        pairs = solve_interval(IntervalProblem(args.alpha), args.m)
        pair = pairs[args.m - 1]
        w.writerow(["x", "u"])
        for x in xs:
            w.writerow([_fmt(x, args.digits), f"{interval_eigenfunction(pair, x):.{args.digits}e}"])
        return 0
    problem = _ball_problem(args)
    rec = branch_eigenvalue(problem, args.l, args.m)
    w.writerow(["r", "v"])
    for r in xs:
        v = radial_eigenfunction(rec, r, normalized=args.normalized)
        w.writerow([_fmt(r, args.digits), f"{v:.{args.digits}e}"])
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _add_domain(p, *, interval_flag=True):
    if interval_flag:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--dim", type=int, help="ball dimension N >= 2")
        g.add_argument("--interval", action="store_true", help="the unit interval instead of a ball")
    else:
        p.add_argument("--dim", type=int, required=True, help="ball dimension N >= 2")
    p.add_argument("--alpha", type=float, required=True, help="Robin parameter")


def _add_format(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--digits", type=int, default=5, help="decimal places in CSV output (default 5)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robin-ball", description="Robin Laplacian eigenvalues on the unit ball and interval")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigen", help="one eigenvalue mu_{l,m} of the ball")
    _add_domain(p, interval_flag=False)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument(
        "--branch",
        choices=("auto", "positive", "negative"),
        default="auto",
        help="insist on the positive (J) or negative (I) root instead of dispatching on alpha",
    )
    _add_format(p)

    p = sub.add_parser("spectrum", help="eigenvalues up to a cutoff, or the first --count")
    _add_domain(p)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--count", type=int)
    _add_format(p)

    p = sub.add_parser("interval", help="same as spectrum --interval")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--count", type=int)
    _add_format(p)

    for name in ("table1", "table2"):
        p = sub.add_parser(name, help=f"regenerate {name}")
        _add_format(p)

    p = sub.add_parser("verify", help="compare against the finite-difference oracle")
    _add_domain(p)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--count", type=int, help="interval only: number of eigenvalues (default 5)")
    p.add_argument("--grids", default="512,1024,2048", help="comma-separated grid sizes")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")

    p = sub.add_parser("eigenfunction", help="sample a radial profile (or interval eigenfunction) as CSV")
    _add_domain(p)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=11)
    p.add_argument("--digits", type=int, default=10)
    p.add_argument("--normalized", action="store_true", help="scale so that v(r) = r**l + O(r**(l+2))")
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        if args.command == "eigen":
            code = cmd_eigen(args, buf)
        elif args.command == "spectrum":
            code = cmd_spectrum(args, buf)
        elif args.command == "interval":
            code = cmd_interval(args, buf)
        elif args.command in ("table1", "table2"):
            code = cmd_table(args, buf, args.command)
        elif args.command == "verify":
            code = cmd_verify(args, buf)
        else:
            code = cmd_eigenfunction(args, buf)
    except UsageError as exc:
        print(f"robin-ball: error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"robin-ball: numerical failure: {exc}", file=sys.stderr)
        return 1
    except RobinError as exc:
        print(f"robin-ball: error: {exc}", file=sys.stderr)
        return 2
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
