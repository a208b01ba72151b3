"""Command line: ``weakdiss run | predict | verify``."""

from __future__ import annotations

import argparse
import json
import sys

from .harness import CRITERIA, ConfigError, ExperimentConfig, ExperimentError, emit, run_criterion, run_experiment
from .harness.emit import EmitError
from .specfun import DomainError
from .zones import DualPair, energy_op_prediction, solution_op_prediction


def _cmd_run(args) -> int:
    try:
        cfg = ExperimentConfig.load(args.config)
        report = run_experiment(cfg)
        paths = emit(report, args.out, args.format)
    except (ConfigError, ExperimentError, EmitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.summary())
    for p in paths:
        print(f"wrote {p}")
    return 0 if report.passed else 1


def _cmd_predict(args) -> int:
    try:
        pair = DualPair(args.p)
        fn = solution_op_prediction if args.operator == "sol" else energy_op_prediction
        pred = fn(args.mu, pair, args.n)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = {
        "operator": args.operator,
        "mu": args.mu,
        "p": pair.p,
        "q": pair.q,
        "n": args.n,
        "exponent": pred.exponent,
        "log_power": pred.log_power,
        "regularity": pred.regularity,
        "source": pred.source,
        "meta": pred.meta,
    }
    print(json.dumps(out, indent=2))
    return 0


def _cmd_verify(args) -> int:
    wanted = set(args.only) if args.only else None
    ok = True
    for crit in CRITERIA:
        if wanted is not None and crit.number not in wanted:
            continue
        res = run_criterion(crit, args.workers)
        print(res.line(), flush=True)
        if args.verbose:
            for rep in res.reports:
                print(f"    {rep.summary()}")
        ok &= res.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weakdiss", description="Decay experiments for weakly dissipative wave equations.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment from a JSON config")
    run.add_argument("--config", required=True, help="path to an ExperimentConfig JSON file")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--format", choices=("csv", "json"), default="json")
    run.set_defaults(func=_cmd_run)

    pred = sub.add_parser("predict", help="print the predicted L_p-L_q decay of an operator")
    pred.add_argument("--mu", type=float, required=True)
    pred.add_argument("--p", type=float, default=2.0, help="Lebesgue exponent in (1, 2]")
    pred.add_argument("--n", type=int, default=1, help="space dimension")
    pred.add_argument("--operator", choices=("sol", "energy"), default="energy")
    pred.set_defaults(func=_cmd_predict)

    ver = sub.add_parser("verify", help="run the acceptance suite; exit 0 iff every criterion passes")
    ver.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    ver.add_argument("--workers", type=int, default=None, help="processes per criterion (default from WEAKDISS_MAX_WORKERS)")
    ver.add_argument("-v", "--verbose", action="store_true", help="print every experiment")
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
