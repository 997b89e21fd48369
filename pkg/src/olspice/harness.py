"""Monte Carlo experiment runner with NMSE / variance / bias aggregation.

Estimators are named by compact tags:

    olspice[:L=<int>]
    ollasso:feasible | ollasso:infeasible | ollasso:scaled=<factor>
    olrls[:lambda=<float>] | olrls:oracle

Aggregation keeps only running moments per (estimator, snapshot n): the
mean squared error, and the mean of (theta_hat - theta), from which the
exact sample-moment decomposition MSE = variance + ||mean error||^2 follows.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field

import numpy as np

from .lasso import LambdaSchedule, OnlineLasso
from .rls import OnlineRls
from .scenarios import ScenarioSpec, stream
from .spice import OnlineSpice

NMSE_DB_FLOOR = -150.0

CSV_COLUMNS = ("estimator", "n", "nmse_db", "var", "bias2", "trials")


class ConfigError(ValueError):
    """Invalid experiment configuration (bad estimator tag, scenario, ...)."""


def parse_estimator_tag(tag: str) -> tuple[str, dict]:
    """Split 'name:opt=val' into (name, options)."""
    name, _, rest = tag.partition(":")
    name = name.strip().lower()
    opts: dict = {}
    if rest:
        key, _, val = rest.partition("=")
        opts[key.strip().lower()] = val.strip() if val else True
    if name == "olspice":
        sweeps = int(opts.get("l", 1))
        return "olspice", {"sweeps": sweeps}
    if name == "ollasso":
        if "feasible" in opts:
            return "ollasso", {"schedule": "feasible"}
        if "infeasible" in opts:
            return "ollasso", {"schedule": "infeasible"}
        if "scaled" in opts:
            return "ollasso", {"schedule": "scaled", "factor": float(opts["scaled"])}
        raise ConfigError(f"ollasso tag needs a schedule: {tag!r}")
    if name == "olrls":
        if "oracle" in opts:
            return "olrls", {"oracle": True}
        lam = float(opts.get("lambda", 1.0))
        return "olrls", {"lam": lam}
    raise ConfigError(f"unknown estimator tag {tag!r}")


def make_estimator(tag: str, spec: ScenarioSpec):
    """Build a fresh estimator for one trial of the given scenario."""
    name, opts = parse_estimator_tag(tag)
    if name == "olspice":
        return OnlineSpice(spec.p, sweeps=opts["sweeps"])
    if name == "ollasso":
        kind = opts["schedule"]
        if kind == "feasible":
            sched = LambdaSchedule.feasible()
        elif kind == "infeasible":
            sched = LambdaSchedule.infeasible(spec.noise_variance())
        else:
            sched = LambdaSchedule.scaled(opts["factor"])
        # per-sample sweeps run to a change tolerance (capped); a single
        # warm-started sweep lags the per-sample minimizer badly while n < p
        return OnlineLasso(spec.p, sched, sweeps=50, tol=1e-8)
    support = _estimation_support(spec) if opts.get("oracle") else None
    return OnlineRls(spec.p, lam=opts.get("lam", 1.0), support=support)


def _estimation_support(spec: ScenarioSpec) -> tuple:
    # sinusoid support indexes frequencies; each maps to a (cos, sin) pair
    if spec.kind == "sinusoids":
        return tuple(j for i in spec.support for j in (2 * i, 2 * i + 1))
    return spec.support


def snapshot_grid(n_max: int, mode: str = "log") -> np.ndarray:
    if mode == "all":
        return np.arange(1, n_max + 1)
    if mode == "log":
        pts = np.unique(np.geomspace(1, n_max, num=40).round().astype(int))
        return pts
    raise ConfigError(f"unknown snapshot mode {mode!r}")


def nmse(errors, theta_norms) -> float:
    """Ratio of Monte Carlo means: mean(||theta - theta_hat||^2)/mean(||theta||^2)."""
    errors = np.asarray(errors, dtype=float)
    theta_norms = np.asarray(theta_norms, dtype=float)
    denom = theta_norms.mean()
    if denom <= 0:
        raise ConfigError("NMSE denominator is zero (all-zero true parameter)")
    return float(errors.mean() / denom)


def nmse_db(value: float) -> float:
    if value <= 0:
        return NMSE_DB_FLOOR
    return max(10.0 * np.log10(value), NMSE_DB_FLOOR)


@dataclass
class RunSummary:
    rows: list  # dicts keyed by CSV_COLUMNS (column 2 may be snr_db in sweeps)
    config: dict
    runtime_s: float
    sweep_column: str = "n"
    estimate_rows: list = field(default_factory=list)  # (estimator, n, index, magnitude)


@dataclass
class _Accumulator:
    sum_err2: float = 0.0
    sum_diff: np.ndarray | None = None
    trials: int = 0

    def add(self, theta_true, theta_hat):
        diff = theta_hat - theta_true
        self.sum_err2 += float(np.vdot(diff, diff).real)
        if self.sum_diff is None:
            self.sum_diff = diff.copy()
        else:
            self.sum_diff += diff
        self.trials += 1

    def moments(self):
        t = self.trials
        mse = self.sum_err2 / t
        bias2 = float(np.vdot(self.sum_diff, self.sum_diff).real) / t**2
        var = max(mse - bias2, 0.0)
        return mse, var, bias2


def run_experiment(
    spec: ScenarioSpec,
    estimators,
    trials: int | None = None,
    zero_hold: int = 0,
    snapshots: str = "log",
    keep_estimates_at: tuple = (),
) -> RunSummary:
    """Run all Monte Carlo trials of the scenario for every estimator tag.

    zero_hold reports theta_hat = 0 for n <= zero_hold at evaluation time
    only; estimator state is never touched. keep_estimates_at lists n values
    at which trial 0's estimate magnitudes are recorded (for image grids).
    """
    estimators = list(estimators)
    for tag in estimators:
        parse_estimator_tag(tag)  # validate up front
    n_trials = trials if trials is not None else spec.trials
    grid = snapshot_grid(spec.n_max, snapshots)
    grid_set = set(int(v) for v in grid)
    keep_set = set(int(v) for v in keep_estimates_at)

    t0 = time.perf_counter()
    acc = {(tag, int(n)): _Accumulator() for tag in estimators for n in grid}
    theta_norms = []
    estimate_rows = []
    for trial in range(n_trials):
        theta_true, samples = stream(spec, trial)
        theta_norms.append(float(np.vdot(theta_true, theta_true).real))
        states = {tag: make_estimator(tag, spec) for tag in estimators}
        zero = np.zeros(spec.p, dtype=np.complex128)
        for n, s in enumerate(samples, start=1):
            for tag, state in states.items():
                est = state.process_sample(s)
                if n in grid_set:
                    reported = zero if n <= zero_hold else est
                    acc[(tag, n)].add(theta_true, reported)
                if trial == 0 and n in keep_set:
                    reported = zero if n <= zero_hold else est
                    for idx, mag in enumerate(np.abs(reported)):
                        estimate_rows.append(
                            {"estimator": tag, "n": n, "index": idx, "magnitude": mag}
                        )
    denom = float(np.mean(theta_norms))
    if denom <= 0:
        raise ConfigError("NMSE denominator is zero (all-zero true parameter)")

    rows = []
    for tag in estimators:
        for n in grid:
            mse, var, bias2 = acc[(tag, int(n))].moments()
            rows.append(
                {
                    "estimator": tag,
                    "n": int(n),
                    "nmse_db": nmse_db(mse / denom),
                    "var": var,
                    "bias2": bias2,
                    "trials": n_trials,
                }
            )
    config = {
        "scenario": spec.__dict__ | {"support": list(spec.support)},
        "estimators": estimators,
        "trials": n_trials,
        "zero_hold": zero_hold,
        "snapshots": snapshots,
    }
    return RunSummary(
        rows=rows,
        config=config,
        runtime_s=time.perf_counter() - t0,
        estimate_rows=estimate_rows,
    )


def run_snr_sweep(
    spec: ScenarioSpec,
    estimators,
    snr_values,
    fixed_n: int,
    trials: int | None = None,
    zero_hold: int = 0,
) -> RunSummary:
    """NMSE at a fixed sample count across an SNR grid.

    Output rows use the same six columns with snr_db in the second slot.
    """
    rows = []
    t0 = time.perf_counter()
    for snr in snr_values:
        sub = ScenarioSpec(
            spec.kind, spec.p, spec.support, spec.amplitudes, float(snr),
            fixed_n, spec.seed, spec.trials,
        )
        summary = run_experiment(
            sub, estimators, trials=trials, zero_hold=zero_hold, snapshots="log"
        )
        final = {r["estimator"]: r for r in summary.rows if r["n"] == fixed_n}
        for tag in estimators:
            r = final[tag]
            rows.append(
                {
                    "estimator": tag,
                    "snr_db": float(snr),
                    "nmse_db": r["nmse_db"],
                    "var": r["var"],
                    "bias2": r["bias2"],
                    "trials": r["trials"],
                }
            )
    config = {
        "scenario": spec.__dict__ | {"support": list(spec.support)},
        "estimators": list(estimators),
        "trials": trials if trials is not None else spec.trials,
        "zero_hold": zero_hold,
        "snr_values": [float(s) for s in snr_values],
        "fixed_n": fixed_n,
    }
    return RunSummary(
        rows=rows, config=config, runtime_s=time.perf_counter() - t0,
        sweep_column="snr_db",
    )


def emit(summary: RunSummary, path, fmt: str = "csv") -> None:
    """Write results CSV plus a JSON sidecar echoing the full configuration."""
    path = str(path)
    if fmt != "csv":
        raise ConfigError(f"unsupported output format {fmt!r}")
    columns = ("estimator", summary.sweep_column, "nmse_db", "var", "bias2", "trials")
    try:
        with open(path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=columns)
            writer.writeheader()
            for row in summary.rows:
                writer.writerow(row)
        sidecar = path.rsplit(".", 1)[0] + ".json"
        with open(sidecar, "w") as f:
            json.dump(
                {"config": summary.config, "runtime_s": summary.runtime_s}, f, indent=2
            )
    except OSError as exc:
        raise OSError(f"failed writing results to {path}: {exc}") from exc


def emit_estimates(summary: RunSummary, path) -> None:
    """Write per-coordinate estimate magnitudes (trial 0) for image grids."""
    try:
        with open(str(path), "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=("estimator", "n", "index", "magnitude"))
            writer.writeheader()
            for row in summary.estimate_rows:
                writer.writerow(row)
    except OSError as exc:
        raise OSError(f"failed writing estimates to {path}: {exc}") from exc
