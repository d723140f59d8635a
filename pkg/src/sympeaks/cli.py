"""Command-line front end.

Exit codes: 0 success (findings allowed), 1 a verification check
failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys

from . import closed_form, formulas, geometric, sampling, series
from .compositions import aggregate, enumerate_compositions, stat_record
from .report import Report, check, rational_field
from .verify import run_verify


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _u64(text: str) -> int:
    v = _nonneg(text)
    if v >= 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _rational(text: str):
    try:
        return geometric.parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> Report:
    rows = []
    for c in enumerate_compositions(args.n, args.k):
        rec = stat_record(c)
        rows.append({"parts": str(c), "n": c.n, "k": c.k,
                     "sp": rec.sp, "sv": rec.sv, "hsp": rec.hsp, "dsv": rec.dsv})
    return Report("enumerate", {"n": args.n, "k": args.k}, rows)


def cmd_table(args) -> Report:
    rows = []
    for n in range(args.max_n + 1):
        for r in aggregate(n):
            rows.append({"n": n, **r.as_dict()})
    return Report("table", {"max_n": args.max_n}, rows)


GF_CHOICES = ("full-hsp", "full-dsv", "hsp-total", "hsp-nk", "dsv-total", "dsv-nk",
              "dsv-nk-printed", "sp-marginal", "sv-marginal")


def cmd_gf(args) -> Report:
    N, which = args.max_n, args.which
    rows = []
    if which in ("full-hsp", "full-dsv"):
        s = series.build_hsp_series(N) if which == "full-hsp" else series.build_dsv_series(N)
        cnt, mag = ("sp", "hsp") if which == "full-hsp" else ("sv", "dsv")
        for n in range(N + 1):
            for (k, j, t), v in s[n].as_tuples().items():
                rows.append({"n": n, "k": k, cnt: j, mag: t, "count": v})
    elif which in ("sp-marginal", "sv-marginal"):
        if which == "sp-marginal":
            vals = series.marker_moment(series.build_sp_series(N), "q").scalars()
        else:
            vals = series.marker_moment(series.build_sv_series(N), "p").scalars()
        rows = [{"n": n, "value": v} for n, v in enumerate(vals)]
    else:
        table = series.rational_gf_coeffs(which.replace("-", "_"), N)
        if isinstance(table, list):
            rows = [{"n": n, "value": v} for n, v in enumerate(table)]
        else:
            rows = [{"n": n, "k": k, "value": table.get((n, k), 0)}
                    for n in range(N + 1) for k in range(n + 1)]
    return Report("gf", {"which": which, "max_n": N}, rows)


def cmd_closed_form(args) -> Report:
    fn = closed_form.hsp_closed if args.which == "hsp" else closed_form.dsv_closed
    ns = [args.n] if args.n is not None else list(range(args.max_n + 1))
    rows, bad = [], []
    for n in ns:
        try:
            v, ok = fn(n), True
        except closed_form.ClosedFormError:
            v, ok = None, False
            bad.append(n)
        rows.append({"n": n, "value": v, "integral": ok})
    checks = [check(f"closed-form.{args.which}.integrality", not bad, bad, [])]
    return Report("closed-form", {"which": args.which, "n": args.n, "max_n": args.max_n}, rows, checks)


def cmd_formula(args) -> Report:
    fn = {"hsp": formulas.hsp_nk, "dsv": formulas.dsv_nk, "sp-count": formulas.sp_count_nk}[args.which]
    if args.max_n is not None:
        kmin = 4 if args.which == "sp-count" else 0
        cells = [(n, k) for n in range(args.max_n + 1) for k in range(kmin, n + 1)]
    else:
        if args.n is None or args.k is None:
            raise UsageError("formula needs --n and --k, or --max-n")
        cells = [(args.n, args.k)]
    try:
        rows = [{"n": n, "k": k, "value": fn(n, k)} for n, k in cells]
    except ValueError as exc:
        raise UsageError(str(exc))
    return Report("formula", {"which": args.which, "n": args.n, "k": args.k, "max_n": args.max_n}, rows)


def _params(args) -> geometric.GeomParams:
    try:
        return geometric.GeomParams(args.p, args.n)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_geom(args) -> Report:
    params = _params(args)
    base = {"stat": args.stat, "p": params.p, "n": params.n}
    if args.action == "expect":
        v = geometric.expected_value(args.stat, params)
        return Report("geom expect", base, [{**base, "value": rational_field(v)}])
    if args.action == "variance":
        if args.stat not in geometric.VARIANCE_STATS:
            raise UsageError("no closed-form variance for dsv; use 'geom simulate' or 'geom oracle'")
        v = geometric.variance_formula(args.stat, params)
        row = {**base, "value": rational_field(v)}
        if params.p < 1:
            row["series_exact"] = rational_field(geometric.series_moments(args.stat, params)[1])
        return Report("geom variance", base, [row])
    if args.action == "simulate":
        if args.trials < 1:
            raise UsageError("--trials must be positive")
        mc = sampling.monte_carlo(args.stat, params, args.trials, args.seed)
        return Report("geom simulate", {**base, "trials": args.trials, "seed": args.seed}, [mc.as_dict()])
    if args.cap < 2:
        raise UsageError("--cap must be at least 2")
    o = geometric.exact_oracle_moments(args.stat, params, args.cap)
    row = {**base, "cap": args.cap, "mean": rational_field(o.mean),
           "second_moment": rational_field(o.second_moment),
           "variance": rational_field(o.variance), "tail_bound": rational_field(o.tail_bound)}
    return Report("geom oracle", {**base, "cap": args.cap}, [row])


def cmd_verify(args) -> Report:
    return run_verify(args.max_n, args.deep)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "text"), default="json")

    parser = argparse.ArgumentParser(prog="sympeaks",
                                     description="Symmetric peaks and valleys over integer compositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[fmt], help="list compositions with their statistics")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_nonneg)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("table", parents=[fmt], help="per-(n, k) sums of the statistics")
    p.add_argument("--max-n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("gf", parents=[fmt], help="generating-function coefficient tables")
    p.add_argument("--which", choices=GF_CHOICES, required=True)
    p.add_argument("--max-n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("closed-form", parents=[fmt], help="closed forms for hsp(n) and dsv(n)")
    p.add_argument("--which", choices=("hsp", "dsv"), required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=_nonneg)
    g.add_argument("--max-n", type=_nonneg)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("formula", parents=[fmt], help="summation formulas per (n, k)")
    p.add_argument("--which", choices=("hsp", "dsv", "sp-count"), required=True)
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--k", type=_nonneg)
    p.add_argument("--max-n", type=_nonneg)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("geom", help="geometrically distributed words")
    gsub = p.add_subparsers(dest="action", required=True)
    for action in ("expect", "variance", "simulate", "oracle"):
        a = gsub.add_parser(action, parents=[fmt])
        a.add_argument("--stat", choices=geometric.STATS, required=True)
        a.add_argument("--p", type=_rational, required=True)
        a.add_argument("--n", type=_nonneg, required=True)
        if action == "simulate":
            a.add_argument("--trials", type=_nonneg, required=True)
            a.add_argument("--seed", type=_u64, required=True)
        if action == "oracle":
            a.add_argument("--cap", type=_nonneg, required=True)
        a.set_defaults(func=cmd_geom)

    p = sub.add_parser("verify", parents=[fmt], help="run the cross-verification suite")
    p.add_argument("--max-n", type=_nonneg, default=12)
    p.add_argument("--deep", action="store_true", help="larger n bounds and 10^6 Monte Carlo trials")
    p.set_defaults(func=cmd_verify)
    return parser


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    if fmt == "csv":
        return report.to_csv()
    lines = [f"{c.status:<8} {c.name}" + (f"  ({c.detail})" if c.detail else "")
             for c in sorted(report.checks, key=lambda c: c.name)]
    body = report.to_csv()
    return "\n".join(lines) + ("\n\n" if lines and body else "\n" if lines else "") + body


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(report, args.format))
    if report.failed:
        failed = [c.name for c in report.checks if c.status == "fail"]
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
