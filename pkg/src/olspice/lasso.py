"""OL-LASSO: online cyclic LASSO for real and complex streams.

Per sample: fold (y, h) into (gamma, rho), recompute zeta = rho - gamma theta
from scratch, then run L cyclic sweeps of the soft-threshold coordinate
minimizer of ||y_n - H_n theta||_2^2 + lambda_n ||theta||_1. The penalty
level lambda_n comes from a schedule, not from the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Sample, SufficientStats, ingest

# Logarithm used in the lambda_n schedules; swap here for base-2/10 variants.
_log = math.log


@dataclass(frozen=True)
class LambdaSchedule:
    """Rule producing the penalty lambda_n.

    kinds:
      - "feasible":   lambda_n = sqrt(n log p), computable from (n, p) alone
      - "infeasible": lambda_n = sqrt(2 sigma2 n log p), needs the true noise
                      variance and is flagged oracle-only in outputs
      - "scaled":     lambda_n = factor * sqrt(n log p)
    """

    kind: str
    sigma2: float | None = None
    factor: float | None = None

    def __post_init__(self):
        if self.kind not in ("feasible", "infeasible", "scaled"):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.kind == "infeasible" and (self.sigma2 is None or self.sigma2 <= 0):
            raise ValueError("infeasible schedule requires sigma2 > 0")
        if self.kind == "scaled" and (self.factor is None or self.factor <= 0):
            raise ValueError("scaled schedule requires factor > 0")

    @property
    def oracle_only(self) -> bool:
        return self.kind == "infeasible"

    def value(self, n: int, p: int) -> float:
        if n < 1 or p < 1:
            raise ValueError("schedule defined for n >= 1, p >= 1")
        # note lambda_n degenerates to 0 at p = 1 (log 1 = 0); positive for p >= 2
        base = math.sqrt(n * _log(p))
        if self.kind == "feasible":
            return base
        if self.kind == "infeasible":
            return math.sqrt(2.0 * self.sigma2 * n * _log(p))
        return self.factor * base

    @classmethod
    def feasible(cls) -> "LambdaSchedule":
        return cls("feasible")

    @classmethod
    def infeasible(cls, sigma2: float) -> "LambdaSchedule":
        return cls("infeasible", sigma2=sigma2)

    @classmethod
    def scaled(cls, factor: float) -> "LambdaSchedule":
        return cls("scaled", factor=factor)


class OnlineLasso:
    """Streaming cyclic-LASSO state; zeta is rebuilt from (rho, gamma, theta)
    at every sample rather than carried incrementally across samples.

    The inner loop runs a fixed number of cyclic sweeps when ``tol`` is None.
    With ``tol`` set, sweeping stops early once the largest coordinate change
    in a sweep drops to tol * max(1, ||theta||_inf), with ``sweeps`` acting as
    a hard cap. Early termination matters in the underdetermined transition
    (n < p) under small penalties, where a single warm-started sweep lags far
    behind the per-sample minimizer.
    """

    def __init__(
        self,
        p: int,
        schedule: LambdaSchedule,
        sweeps: int = 1,
        tol: float | None = None,
    ):
        if sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        if tol is not None and tol <= 0:
            raise ValueError("tol must be positive when given")
        self.stats = SufficientStats(p)
        self.theta = np.zeros(p, dtype=np.complex128)
        self.zeta = np.zeros(p, dtype=np.complex128)
        self.schedule = schedule
        self.sweeps = sweeps
        self.tol = tol

    @property
    def p(self) -> int:
        return self.stats.p

    def process_sample(self, s: Sample) -> np.ndarray:
        ingest(self.stats, s)
        self.zeta = self.stats.rho - self.stats.gamma @ self.theta
        lam = self.schedule.value(self.stats.n, self.p)
        if self.tol is None:
            kernels.lasso_sweeps(self.stats.gamma, self.zeta, self.theta, lam, self.sweeps)
        else:
            for _ in range(self.sweeps):
                before = self.theta.copy()
                kernels.lasso_sweeps(self.stats.gamma, self.zeta, self.theta, lam, 1)
                step = float(np.max(np.abs(self.theta - before)))
                if step <= self.tol * max(1.0, float(np.max(np.abs(self.theta)))):
                    break
        return self.theta.copy()


LassoState = OnlineLasso


def lasso_coordinate_minimize(state: OnlineLasso, i: int, lam: float) -> complex:
    """Closed-form coordinate minimizer r e^{j phi} with
    r = max((2 gamma_i - lam)/(2 beta_i), 0) and phi = arg(zeta_i + gamma_ii theta_i).

    On real data this is the scalar soft-threshold
    sign(rho~_i) max(|rho~_i| - lam/2, 0) / gamma_ii with rho~_i = zeta_i + gamma_ii theta_i.
    """
    if not 0 <= i < state.p:
        raise IndexError(f"coordinate index {i} out of range for p={state.p}")
    gii = state.stats.gamma[i, i].real
    if gii <= 0.0:
        return 0.0 + 0.0j
    s = state.zeta[i] + gii * state.theta[i]
    gam = abs(s)
    r = (2.0 * gam - lam) / (2.0 * gii)
    if r <= 0.0 or gam <= 0.0:
        return 0.0 + 0.0j
    return (s / gam) * r
