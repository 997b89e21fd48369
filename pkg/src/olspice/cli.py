"""Command line harness.

    olspice run --scenario cfg.json --estimators olspice:L=1,ollasso:feasible \
        --out results.csv [--trials N] [--seed S] [--zero-hold 20] \
        [--snapshots log|all] [--snr-sweep a:b:step --fixed-n 250] \
        [--dump-estimates est.csv --estimate-at 128,256]

Exit codes: 0 success, 2 configuration error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import ConfigError, emit, emit_estimates, run_experiment, run_snr_sweep
from .scenarios import ScenarioSpec


def _parse_sweep(text: str):
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise ConfigError(f"bad --snr-sweep {text!r}, expected a:b:step") from exc
    vals = []
    v = a
    while v <= b + 1e-9:
        vals.append(v)
        v += step
    return vals


def _load_scenario(path: str) -> ScenarioSpec:
    try:
        with open(path) as f:
            return ScenarioSpec.from_dict(json.load(f))
    except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ConfigError(f"cannot load scenario {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="olspice")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a Monte Carlo experiment")
    run.add_argument("--scenario", required=True, help="scenario JSON file")
    run.add_argument(
        "--estimators",
        required=True,
        help="comma-separated tags, e.g. olspice:L=1,ollasso:feasible,olrls:lambda=1",
    )
    run.add_argument("--out", required=True, help="output CSV path")
    run.add_argument("--trials", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--zero-hold", type=int, default=0)
    run.add_argument("--snapshots", choices=("log", "all"), default="log")
    run.add_argument("--snr-sweep", default=None, metavar="A:B:STEP")
    run.add_argument("--fixed-n", type=int, default=250)
    run.add_argument("--dump-estimates", default=None, help="estimate-magnitude CSV")
    run.add_argument(
        "--estimate-at", default="", help="comma-separated n values for --dump-estimates"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _load_scenario(args.scenario)
        if args.seed is not None:
            spec.seed = args.seed
        estimators = [t for t in args.estimators.split(",") if t.strip()]
        if not estimators:
            raise ConfigError("no estimators given")
        if args.snr_sweep:
            summary = run_snr_sweep(
                spec,
                estimators,
                _parse_sweep(args.snr_sweep),
                fixed_n=args.fixed_n,
                trials=args.trials,
                zero_hold=args.zero_hold,
            )
        else:
            keep = tuple(int(x) for x in args.estimate_at.split(",") if x.strip())
            summary = run_experiment(
                spec,
                estimators,
                trials=args.trials,
                zero_hold=args.zero_hold,
                snapshots=args.snapshots,
                keep_estimates_at=keep,
            )
            if args.dump_estimates:
                emit_estimates(summary, args.dump_estimates)
        emit(summary, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
