"""Timing comparison of the numba and pure-numpy sweep kernels.

Runs the OL-SPICE and OL-LASSO estimators over synthetic streams with the
backend forced through the OLSPICE_BACKEND environment variable and reports
per-sample wall time for each (estimator, p) pair.

Usage:
    python3 benchmarks/bench_backends.py [--sizes 50,100,200] [--n 400] [--trials 3]
"""

import argparse
import os
import time

import numpy as np

from olspice import LambdaSchedule, OnlineLasso, OnlineSpice, ScenarioSpec
from olspice.kernels import _ENV_VAR
from olspice.scenarios import stream


def _scenario(p, n):
    support = tuple(sorted({1, p // 3, p - 2}))
    return ScenarioSpec(
        kind="iid_gaussian",
        p=p,
        support=support,
        amplitudes=(1.0,) * len(support) if len(support) > 1 else (1.0,),
        snr_db=20.0,
        n_max=n,
        seed=0,
        trials=1,
    )


def _run(estimator_factory, spec, trials):
    best = float("inf")
    for trial in range(trials):
        _, samples = stream(spec, trial)
        est = estimator_factory(spec.p)
        t0 = time.perf_counter()
        for s in samples:
            est.process_sample(s)
        best = min(best, time.perf_counter() - t0)
    return best / spec.n_max


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,100,200")
    parser.add_argument("--n", type=int, default=400, help="samples per stream")
    parser.add_argument("--trials", type=int, default=3, help="repeats; best is kept")
    args = parser.parse_args()
    sizes = [int(v) for v in args.sizes.split(",")]

    factories = {
        "olspice": lambda p: OnlineSpice(p),
        "ollasso": lambda p: OnlineLasso(p, LambdaSchedule.feasible()),
    }

    # trigger JIT compilation outside the timed region
    os.environ[_ENV_VAR] = "numba"
    warm = _scenario(16, 8)
    for factory in factories.values():
        _run(factory, warm, 1)

    print(f"{'estimator':<10} {'p':>6} {'numba us/sample':>16} {'numpy us/sample':>16} {'speedup':>8}")
    for name, factory in factories.items():
        for p in sizes:
            spec = _scenario(p, args.n)
            timings = {}
            for backend in ("numba", "numpy"):
                os.environ[_ENV_VAR] = backend
                timings[backend] = _run(factory, spec, args.trials)
            ratio = timings["numpy"] / timings["numba"]
            print(
                f"{name:<10} {p:>6} {timings['numba'] * 1e6:>16.1f} "
                f"{timings['numpy'] * 1e6:>16.1f} {ratio:>7.1f}x"
            )


if __name__ == "__main__":
    main()
