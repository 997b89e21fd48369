"""Command-line entry point: plot --kind <kind> --in results.csv --out fig.png."""

from __future__ import annotations

import argparse
import json
import sys

from .figures import KINDS, FigureSpec, PlotError, render


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render figures from olspice harness CSV files."
    )
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument(
        "--in",
        dest="inputs",
        required=True,
        action="append",
        metavar="CSV",
        help="input CSV (repeatable)",
    )
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--labels", help="JSON file mapping estimator tags to labels")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        labels = {}
        if args.labels:
            with open(args.labels) as f:
                labels = json.load(f)
            if not isinstance(labels, dict):
                raise PlotError(f"{args.labels}: label map must be a JSON object")
        spec = FigureSpec(
            kind=args.kind, inputs=tuple(args.inputs), out=args.out, labels=labels
        )
        render(spec)
    except PlotError as exc:
        print(f"plot error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"plot failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
