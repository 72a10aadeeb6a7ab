"""Command-line interface: run tests on CSV data, simulate, emit plot data."""

from __future__ import annotations

import argparse
import math
import sys

from .exceptions import TTTOrderError
from .harness import ExperimentSpec, emit_transform_plot, run_experiment
from .ordertests import test_ew_order, test_nbue, test_ttt_order
from .refdist import parse_distribution
from .samples import read_paired_csv, read_sample_csv


def _parse_r(text: str) -> float:
    if text.strip().lower() == "inf":
        return math.inf
    return float(text)


def _parse_r_list(text: str) -> tuple:
    return tuple(_parse_r(chunk) for chunk in text.split(","))


def _parse_sizes(text: str) -> tuple:
    return tuple(int(chunk) for chunk in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tttorder",
        description="Bootstrap tests for the TTT order, excess-wealth order and NBUE fit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="run one test on CSV data, print a JSON report")
    p_test.add_argument("--test", choices=["ttt", "ew", "nbue"], required=True)
    p_test.add_argument("--x", help="one-column CSV for the X sample")
    p_test.add_argument("--y", help="one-column CSV for the Y sample")
    p_test.add_argument("--paired", help="two-column CSV of matched pairs x,y")
    p_test.add_argument("--r", type=_parse_r, default=math.inf,
                        help="functional order: 1, 2, inf or any float >= 1")
    p_test.add_argument("--alpha", type=float, default=0.1)
    p_test.add_argument("--K", dest="n_boot", type=int, default=500,
                        help="bootstrap replication count")
    p_test.add_argument("--scheme", choices=["independent", "paired"], default="independent")
    p_test.add_argument("--kind", choices=["step", "linear"], default="step")
    p_test.add_argument("--seed", type=int, default=0)

    p_sim = sub.add_parser("simulate", help="Monte Carlo rejection-rate experiment")
    p_sim.add_argument("--test", choices=["ttt", "ew", "nbue"], required=True)
    p_sim.add_argument("--dist-x", required=True,
                       help='e.g. "weibull:a=2,b=1", "sm:a=1.5,b=1.5,c=1", "exp"')
    p_sim.add_argument("--dist-y", help="second distribution (two-sample tests)")
    p_sim.add_argument("--r", type=_parse_r_list, default=(1.0, math.inf),
                       help="comma-separated functional orders, e.g. 1,inf")
    p_sim.add_argument("--sizes", type=_parse_sizes, default=(50, 100, 200, 500))
    p_sim.add_argument("--reps", type=int, default=200)
    p_sim.add_argument("--K", dest="n_boot", type=int, default=300)
    p_sim.add_argument("--alpha", type=float, default=0.1)
    p_sim.add_argument("--kind", choices=["step", "linear"], default="step")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--jobs", type=int, default=1,
                       help="worker processes (-1 for all cores)")
    p_sim.add_argument("--out", help="write the rejection table CSV here")

    p_plot = sub.add_parser("plot-transform", help="emit scaled-TTT curve data as CSV")
    group = p_plot.add_mutually_exclusive_group(required=True)
    group.add_argument("--dist", help="distribution spec string")
    group.add_argument("--x", help="one-column CSV sample")
    p_plot.add_argument("--out", required=True)

    return parser


def _cmd_test(args) -> int:
    if args.test == "nbue":
        if not args.x:
            raise TTTOrderError("--test nbue needs --x")
        report = test_nbue(read_sample_csv(args.x), r=args.r, alpha=args.alpha,
                           n_boot=args.n_boot, kind=args.kind, seed=args.seed)
    else:
        fn = test_ttt_order if args.test == "ttt" else test_ew_order
        if args.scheme == "paired" or args.paired:
            if not args.paired:
                raise TTTOrderError("paired scheme needs --paired")
            report = fn(read_paired_csv(args.paired), r=args.r, alpha=args.alpha,
                        n_boot=args.n_boot, kind=args.kind, scheme="paired",
                        seed=args.seed)
        else:
            if not (args.x and args.y):
                raise TTTOrderError(f"--test {args.test} needs --x and --y")
            report = fn(read_sample_csv(args.x), read_sample_csv(args.y), r=args.r,
                        alpha=args.alpha, n_boot=args.n_boot, kind=args.kind,
                        scheme="independent", seed=args.seed)
    print(report.to_json())
    return 0


def _cmd_simulate(args) -> int:
    spec = ExperimentSpec(
        test=args.test,
        dist_x=parse_distribution(args.dist_x),
        dist_y=parse_distribution(args.dist_y) if args.dist_y else None,
        r_values=args.r,
        sizes=args.sizes,
        reps=args.reps,
        n_boot=args.n_boot,
        alpha=args.alpha,
        kind=args.kind,
        seed=args.seed,
    )
    table = run_experiment(spec, n_jobs=args.jobs)
    text = table.to_csv_string()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    print(text, end="")
    return 0


def _cmd_plot(args) -> int:
    target = parse_distribution(args.dist) if args.dist else read_sample_csv(args.x)
    emit_transform_plot(target, args.out)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "test":
            return _cmd_test(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        return _cmd_plot(args)
    except (TTTOrderError, ValueError, OSError) as exc:
        print(f"tttorder: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
