"""Command line interface.

Subcommands: eval, check, examples, fuzz, plot.
Exit codes: 0 all holds, 2 any admissible violation, 3 input error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from .. import funclang
from ..errors import (
    AnafracError,
    ConstraintError,
    DomainError,
    ExprSyntaxError,
    ParseError,
    RangeError,
)
from ..inequalities import InequalityReport
from ..kernels import (
    FractionalOrder,
    Interval,
    make_constant_kernel,
    make_prabhakar_kernel,
    make_proportional_kernel,
    make_rl_kernel,
    make_series_kernel,
)
from ..operators import (
    QuadratureSpec,
    frac_integral_direct,
    frac_integral_series,
)
from .examples import EXAMPLE_THEOREM, worked_example
from .fuzz import FAMILIES, scenario_batch
from .report import emit_report, render_text
from .suite import SuiteResult, SuiteRow, run_suite

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors must map to exit code 3
        raise _CliError(message)


def _split_params(blob: str) -> list[str]:
    if ";" in blob:
        return blob.split(";")
    if "," in blob:
        chunks = blob.split(",")
        if all("=" in c for c in chunks):
            return chunks
    return [blob]


def parse_kernel_spec(spec: str, order: FractionalOrder):
    """Kernel spec grammar: TYPE[:key=value;key=value...].

    Examples: rl | constant:c=2 | proportional:rho=0.5 |
    prabhakar:rho=1.2;omega=0.3 | series:coeff=1/(n+1);radius=2
    """
    head, _, rest = spec.partition(":")
    head = head.strip().lower()
    params: dict[str, str] = {}
    if rest:
        for chunk in _split_params(rest):
            key, eq, value = chunk.partition("=")
            if not eq:
                raise ConstraintError(f"kernel parameter {chunk!r} is not key=value")
            params[key.strip()] = value.strip()

    def need(key: str) -> str:
        if key not in params:
            raise ConstraintError(f"kernel type {head!r} needs parameter {key!r}")
        return params[key]

    if head == "rl":
        return make_rl_kernel(order.alpha)
    if head == "constant":
        return make_constant_kernel(float(need("c")))
    if head == "proportional":
        return make_proportional_kernel(float(need("rho")), order.alpha)
    if head == "prabhakar":
        return make_prabhakar_kernel(float(need("rho")), float(need("omega")), order)
    if head == "series":
        radius_raw = need("radius").lower()
        radius = math.inf if radius_raw in ("inf", "infinity") else float(radius_raw)
        expr = funclang.parse(need("coeff"), free_var="n")
        return make_series_kernel(lambda n: expr(float(n)), radius, name=f"series({need('coeff')})")
    raise ConstraintError(f"unknown kernel type {head!r}")


def _suite_exit(result: SuiteResult) -> int:
    if result.any_violation:
        return EXIT_VIOLATION
    if result.any_error:
        return EXIT_NUMERIC
    return EXIT_OK


def _write_outputs(result: SuiteResult, args) -> None:
    if getattr(args, "csv", None):
        emit_report(result, "csv", args.csv)
    if getattr(args, "svg", None):
        emit_report(result, "svg-margins", args.svg)


def _cmd_eval(args) -> int:
    try:
        order = FractionalOrder(args.alpha, args.beta)
        kernel = parse_kernel_spec(args.kernel, order)
        f = funclang.parse(args.f)
        iv = Interval(args.a, args.x, args.x)
        q = QuadratureSpec(abs_tol=args.abs_tol, rel_tol=args.rel_tol)
    except (DomainError, ExprSyntaxError) as exc:
        raise ConstraintError(str(exc)) from exc
    results = {}
    if args.method in ("direct", "both"):
        results["direct"] = frac_integral_direct(kernel, order, f, iv, q)
    if args.method in ("series", "both"):
        results["series"] = frac_integral_series(
            kernel, order, f, iv, q, series_tol=args.series_tol
        )
    for name, ov in results.items():
        unit = "cells" if name == "direct" else "terms"
        print(f"{name}: value={ov.value!r} error_estimate={ov.error_estimate:.3e} "
              f"{unit}={ov.terms_or_cells}")
    if len(results) == 2:
        d = abs(results["direct"].value - results["series"].value)
        print(f"|direct - series| = {d:.3e}")
    return EXIT_OK


def _cmd_check(args) -> int:
    from .scenario_io import load_scenario

    scenario = load_scenario(args.scenario)
    theorems = args.theorems
    if theorems not in ("auto", "all"):
        theorems = [t.strip() for t in theorems.split(",") if t.strip()]
    result = run_suite([scenario], theorems=theorems, parallelism=args.parallelism)
    print(render_text(result), end="")
    _write_outputs(result, args)
    return _suite_exit(result)


def _cmd_examples(args) -> int:
    try:
        ids = list(EXAMPLE_THEOREM) if args.id == "all" else [int(args.id)]
        order = FractionalOrder(args.alpha, args.beta)
        kernel = parse_kernel_spec(args.kernel, order) if args.kernel else None
        scenarios = [
            worked_example(
                i, ell=args.ell, order=order, kernel=kernel, p=args.p, phi=args.phi
            )
            for i in ids
        ]
    except DomainError as exc:
        raise ConstraintError(str(exc)) from exc
    result = run_suite(scenarios, theorems="auto", parallelism=args.parallelism)
    print(render_text(result), end="")
    _write_outputs(result, args)
    return _suite_exit(result)


def _cmd_fuzz(args) -> int:
    scenarios = scenario_batch(args.seed0, args.seeds, args.family)
    result = run_suite(
        scenarios,
        theorems="all",
        parallelism=args.parallelism,
        seed=args.seed0,
        fail_fast=args.fail_on_violation,
    )
    for row in result.rows:
        if row.verdict == "violated":
            print(f"VIOLATED: {row.scenario_id} {row.theorem} "
                  f"margin={row.report.margin!r} (reproduce with this seed)")
        elif row.error is not None:
            print(f"ERROR: {row.scenario_id} {row.theorem}: {row.error}")
    print(result.summary_line())
    _write_outputs(result, args)
    return _suite_exit(result)


def _cmd_plot(args) -> int:
    rows = []
    with open(args.infile, encoding="utf-8", newline="") as fh:
        for rec in csv.DictReader(fh):
            margin = float(rec["margin"])
            report = InequalityReport(
                theorem=rec["theorem"],
                sides=(),
                margin=margin,
                relative_margin=float(rec["relative_margin"]),
                error_budget=float(rec["error_budget"]),
                verdict=rec["verdict"],
                kernel_admissible=rec["kernel_admissible"] == "true",
            )
            rows.append(SuiteRow(rec["scenario_id"], rec["theorem"], report))
    result = SuiteResult(rows=rows)
    for row in rows:
        result.counts[row.verdict] += 1
    emit_report(result, "svg-margins", args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="anafrac", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one fractional integral")
    p_eval.add_argument("--kernel", required=True,
                        help="rl | constant:c=V | proportional:rho=V | "
                             "prabhakar:rho=V;omega=V | series:coeff=EXPR;radius=V")
    p_eval.add_argument("--alpha", type=float, required=True)
    p_eval.add_argument("--beta", type=float, default=0.0)
    p_eval.add_argument("--f", required=True, help="integrand expression in theta")
    p_eval.add_argument("--a", type=float, required=True)
    p_eval.add_argument("--x", type=float, required=True)
    p_eval.add_argument("--method", choices=("direct", "series", "both"), default="direct")
    p_eval.add_argument("--abs-tol", type=float, default=1e-9)
    p_eval.add_argument("--rel-tol", type=float, default=1e-9)
    p_eval.add_argument("--series-tol", type=float, default=1e-10)
    p_eval.set_defaults(func=_cmd_eval)

    p_check = sub.add_parser("check", help="check theorems against a scenario file")
    p_check.add_argument("--scenario", required=True)
    p_check.add_argument("--theorems", default="auto",
                         help="auto | all | comma list like thm31,thm45")
    p_check.add_argument("--parallelism", type=int, default=1)
    p_check.add_argument("--csv")
    p_check.add_argument("--svg")
    p_check.set_defaults(func=_cmd_check)

    p_ex = sub.add_parser("examples", help="run the canned worked examples")
    p_ex.add_argument("--id", default="all", help="1..8 or all")
    p_ex.add_argument("--ell", type=float, default=1.0)
    p_ex.add_argument("--alpha", type=float, default=1.0)
    p_ex.add_argument("--beta", type=float, default=0.0)
    p_ex.add_argument("--p", type=float, default=2.0)
    p_ex.add_argument("--phi", type=float, default=0.5)
    p_ex.add_argument("--kernel", help="kernel spec; default rl at the given alpha")
    p_ex.add_argument("--parallelism", type=int, default=1)
    p_ex.add_argument("--csv")
    p_ex.add_argument("--svg")
    p_ex.set_defaults(func=_cmd_examples)

    p_fuzz = sub.add_parser("fuzz", help="run seeded random scenarios")
    p_fuzz.add_argument("--seeds", type=int, required=True)
    p_fuzz.add_argument("--seed0", type=int, default=0)
    p_fuzz.add_argument("--family", default="mixed",
                        choices=FAMILIES + ("mixed",),
                        help="kernel family; mixed cycles the admissible ones")
    p_fuzz.add_argument("--fail-on-violation", action="store_true",
                        help="stop submitting work after the first violation")
    p_fuzz.add_argument("--parallelism", type=int, default=1)
    p_fuzz.add_argument("--csv")
    p_fuzz.add_argument("--svg")
    p_fuzz.set_defaults(func=_cmd_fuzz)

    p_plot = sub.add_parser("plot", help="render a margin scatter from a CSV report")
    p_plot.add_argument("--in", dest="infile", required=True)
    p_plot.add_argument("--out", required=True)
    p_plot.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ParseError, ConstraintError, RangeError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AnafracError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
