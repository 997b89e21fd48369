"""OL-SPICE: online hyperparameter-free sparse estimation.

Per sample: fold (y, h) into the sufficient statistics, rebuild the residual
auxiliaries for the current estimate, then run L cyclic coordinate sweeps of
the weighted square-root LASSO criterion

    ||y_n - H_n theta||_2 + sum_i sqrt(gamma_ii / n) |theta_i|

whose per-coordinate weight is derived from the data itself, so there is no
tuning parameter anywhere in the update. Cost is O(L p^2) per sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import AuxState, Sample, SufficientStats, apply_coordinate_delta, ingest, init_aux


@dataclass
class CoordinateStats:
    """Scalars (alpha, beta, gamma) of the one-coordinate cost
    J(r) = sqrt(alpha + beta r^2 - 2 gamma r) + sqrt(beta/n) r."""

    alpha: float
    beta: float
    gamma: float

    @property
    def gap(self) -> float:
        # alpha*beta - gamma^2 >= 0 by Cauchy-Schwarz; clamp roundoff
        return max(self.alpha * self.beta - self.gamma**2, 0.0)


class OnlineSpice:
    """Streaming OL-SPICE state: statistics, auxiliaries and current estimate.

    sweeps is the number L of full coordinate cycles per sample (L=1 works
    well in practice); the estimate stays 0 until n >= 2.
    """

    def __init__(self, p: int, sweeps: int = 1):
        if sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        self.stats = SufficientStats(p)
        self.theta = np.zeros(p, dtype=np.complex128)
        self.aux = AuxState(0.0, np.zeros(p, dtype=np.complex128))
        self.sweeps = sweeps

    @property
    def p(self) -> int:
        return self.stats.p

    def process_sample(self, s: Sample) -> np.ndarray:
        """Ingest one sample and run L coordinate sweeps; returns the estimate."""
        ingest(self.stats, s)
        self.aux = init_aux(self.stats, self.theta)
        if self.stats.n > 1:
            self.aux.eta = kernels.spice_sweeps(
                self.stats.gamma,
                self.aux.zeta,
                self.theta,
                self.aux.eta,
                self.stats.n,
                self.sweeps,
            )
        return self.theta.copy()


# Alias matching the state-centric naming used elsewhere in the package.
SpiceState = OnlineSpice


def coordinate_stats(state: OnlineSpice, i: int) -> CoordinateStats:
    """(alpha_i, beta_i, gamma_i) of the current coordinate subproblem."""
    if not 0 <= i < state.p:
        raise IndexError(f"coordinate index {i} out of range for p={state.p}")
    gii = state.stats.gamma[i, i].real
    ti = state.theta[i]
    zi = state.aux.zeta[i]
    alpha = state.aux.eta + gii * abs(ti) ** 2 + 2.0 * (np.conj(ti) * zi).real
    gamma = abs(zi + gii * ti)
    return CoordinateStats(alpha=alpha, beta=gii, gamma=gamma)


def phase_source(state: OnlineSpice, i: int) -> complex:
    """zeta_i + gamma_ii theta_i, whose argument is the minimizing phase."""
    return complex(state.aux.zeta[i] + state.stats.gamma[i, i].real * state.theta[i])


def coordinate_minimize(cs: CoordinateStats, phase_source: complex, n: int) -> complex:
    """Closed-form minimizer of the one-coordinate cost.

    Nonzero branch: r = gamma/beta - sqrt((alpha beta - gamma^2)/(n-1))/beta
    with phase arg(phase_source); zero whenever sqrt(n-1) gamma does not
    exceed sqrt(alpha beta - gamma^2). Requires n >= 2 (the stationary-point
    algebra is singular at n = 1) and beta > 0 (unexcited columns skipped).
    """
    if n <= 1 or cs.beta <= 0.0:
        return 0.0 + 0.0j
    gap = cs.gap
    if math.sqrt(n - 1.0) * cs.gamma <= math.sqrt(gap):
        return 0.0 + 0.0j
    r = (cs.gamma - math.sqrt(gap / (n - 1.0))) / cs.beta
    r = min(max(r, 0.0), cs.gamma / cs.beta)
    mag = abs(phase_source)
    phase = phase_source / mag if mag > 0.0 else 1.0 + 0.0j
    return phase * r


def sweep_once(state: OnlineSpice) -> None:
    """One reference coordinate sweep built from the spec-level operations.

    Equivalent to the fused kernel in :mod:`olspice.kernels`; kept as the
    slow, composable route for verification.
    """
    for i in range(state.p):
        cs = coordinate_stats(state, i)
        new = coordinate_minimize(cs, phase_source(state, i), state.stats.n)
        old = state.theta[i]
        if old != new:
            apply_coordinate_delta(state.aux, state.stats, i, old, new)
            state.theta[i] = new
