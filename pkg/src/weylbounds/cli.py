"""Command-line interface: ``weylbounds <command> ...``.

Exit codes: 0 success, 1 audit violations, 2 usage or argument errors,
3 numerical failure.
"""

import argparse
import sys
import time

from . import bounds, spectra
from .exceptions import BudgetExceededError, ConvergenceError, WeylBoundsError
from .verify import audit, identities, tables

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    if v != 0.0 and (abs(v) < 1e-3 or abs(v) >= 1e6):
        return f"{v:.12e}"
    return f"{v:.12f}"


def _cmd_constants(args, out):
    for key, value in bounds.constants(args.dim).as_dict().items():
        out.write(f"{key}={_fmt(value)}\n")
    return EXIT_OK


def _cmd_bound(args, out):
    params = {
        "k": args.k,
        "lambda1": args.lambda1,
        "lambda2": args.lambda2,
        "lam": args.lam,
        "volume": args.volume,
        "packing_density": args.packing_density,
        "r": args.r,
        "gap_sum": args.gap_sum,
    }
    value = bounds.evaluate(args.id, args.dim, **{k: v for k, v in params.items() if v is not None})
    out.write(f"{args.id.upper()}={value:.12g}\n")
    return EXIT_OK


def _cmd_spectrum(args, out):
    if args.domain == "box":
        if not args.sides:
            raise argparse.ArgumentTypeError("--sides is required for a box")
        spec = spectra.box_spectrum(tuple(args.sides), args.bc, args.count)
    else:
        if args.bc != "dirichlet":
            raise argparse.ArgumentTypeError("ball spectra are Dirichlet only")
        spec = spectra.ball_spectrum(args.dim, args.radius, args.count)
    values = spec.eigenvalues[: args.count]
    if args.csv:
        trimmed = spectra.Spectrum(values, _trimmed_cutoff(spec, args.count), spec.volume, spec.domain)
        spectra.write_spectrum_csv(trimmed, args.csv)
        out.write(f"wrote {len(values)} eigenvalues of {spec.domain.label} to {args.csv}\n")
    else:
        for v in values:
            out.write(f"{v:.12g}\n")
    return EXIT_OK


def _trimmed_cutoff(spec, count):
    # largest level below which the first `count` eigenvalues are complete
    vals = spec.eigenvalues
    if count >= len(vals):
        return spec.cutoff
    last = vals[count - 1]
    if vals[count] > last:
        return float(last)
    below = vals[:count][vals[:count] < last]
    return float(below[-1]) if len(below) else 0.0


def _cmd_audit(args, out):
    start = time.perf_counter()
    reports = audit.run_suite(audit.DEFAULT_SUITE, jobs=args.jobs)
    elapsed = time.perf_counter() - start
    bad = audit.violations(reports)
    if args.csv:
        audit.write_reports_csv(reports, args.csv)
    for r in bad:
        out.write(f"VIOLATION {r.bound_id} {r.domain} parameter={r.parameter:.12g} "
                  f"bound={r.bound_value:.12g} oracle={r.oracle_value:.12g}\n")
    out.write(f"{len(reports)} checks on {len(audit.DEFAULT_SUITE)} domains, "
              f"{len(bad)} violations, {elapsed:.2f} s\n")
    return EXIT_VIOLATIONS if bad else EXIT_OK


def _cmd_tables(args, out):
    ids = [tables.TableId.parse(args.id)] if args.id else list(tables.TableId)
    status = EXIT_OK
    for table_id in ids:
        diff = tables.reproduce_table(table_id)
        for line in diff.lines():
            out.write(line + "\n")
        counts = {s: sum(c.status == s for c in diff.cells) for s in ("PASS", "ANOMALY", "FAIL")}
        out.write(f"# {table_id.value}: {counts['PASS']} pass, {counts['ANOMALY']} anomaly, {counts['FAIL']} fail\n")
        if counts["FAIL"]:
            status = EXIT_VIOLATIONS
    return status


def _cmd_curve(args, out):
    rows = identities.comparison_curve(args.dim, args.kmax)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            identities.write_curve_csv(rows, fh)
    else:
        identities.write_curve_csv(rows, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print the dimension constants")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("bound", help="evaluate one catalog bound")
    p.add_argument("--id", required=True, type=str.upper, choices=bounds.BOUND_IDS, metavar="ID")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lambda1", type=float, default=1.0)
    p.add_argument("--lambda2", type=float)
    p.add_argument("--lam", type=float)
    p.add_argument("--volume", type=float)
    p.add_argument("--packing-density", type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--gap-sum", type=float)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("spectrum", help="exact eigenvalues of a box or ball")
    p.add_argument("--domain", choices=("box", "ball"), required=True)
    p.add_argument("--sides", type=float, nargs="+")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--dim", type=int, default=2, help="ball dimension")
    p.add_argument("--bc", choices=("dirichlet", "neumann"), default="dirichlet")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("audit", help="run every inequality audit on the domain suite")
    p.add_argument("--suite", choices=("default",), default="default")
    p.add_argument("--csv")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("tables", help="reproduce the published tables cell by cell")
    p.add_argument("--id", choices=[t.value for t in tables.TableId] + [t.name for t in tables.TableId])
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("curve", help="lambda_{k+1}/lambda_1 bounds against k, as CSV")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_curve)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ConvergenceError, BudgetExceededError, ArithmeticError) as exc:
        sys.stderr.write(f"weylbounds: numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (WeylBoundsError, ValueError, argparse.ArgumentTypeError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"weylbounds: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
