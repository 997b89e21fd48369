"""Streaming sufficient statistics for complex linear measurement streams.

The measurement model is y_t = h_t^* theta + w_t. All online estimators in
this package operate on constant-size summaries of the stream history:

    gamma = H^* H      (p x p Hermitian)
    rho   = H^* y      (p-vector)
    kappa = y^* y      (scalar)

together with the residual-tracking auxiliaries

    eta  = ||y - H theta||^2
    zeta = H^*(y - H theta)

where H stacks the conjugated regressors h_t^* row by row. Real-valued
streams go through the same complex128 code path with zero imaginary parts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _as_complex_vector(x, name: str) -> np.ndarray:
    v = np.ascontiguousarray(x, dtype=np.complex128)
    if v.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v.view(np.float64))):
        raise ValueError(f"{name} contains non-finite entries")
    return v


@dataclass
class Sample:
    """One streaming measurement: scalar observation y and regressor h."""

    y: complex
    h: np.ndarray

    def __post_init__(self):
        self.y = complex(self.y)
        if not (np.isfinite(self.y.real) and np.isfinite(self.y.imag)):
            raise ValueError("observation y is not finite")
        self.h = _as_complex_vector(self.h, "regressor h")

    @property
    def p(self) -> int:
        return self.h.shape[0]


class SufficientStats:
    """Recursively maintained gamma = H^*H, rho = H^*y, kappa = y^*y."""

    def __init__(self, p: int):
        if p < 1:
            raise ValueError("dimension p must be positive")
        self.gamma = np.zeros((p, p), dtype=np.complex128)
        self.rho = np.zeros(p, dtype=np.complex128)
        self.kappa = 0.0
        self.n = 0

    @property
    def p(self) -> int:
        return self.rho.shape[0]

    def copy(self) -> "SufficientStats":
        out = SufficientStats(self.p)
        out.gamma = self.gamma.copy()
        out.rho = self.rho.copy()
        out.kappa = self.kappa
        out.n = self.n
        return out


@dataclass
class AuxState:
    """Residual energy eta = ||z||^2 and correlation zeta = H^*z, z = y - H theta."""

    eta: float
    zeta: np.ndarray

    def copy(self) -> "AuxState":
        return AuxState(self.eta, self.zeta.copy())


def ingest(stats: SufficientStats, s: Sample) -> SufficientStats:
    """Fold one sample into the statistics (in place; returns the stats).

    The rank-1 product h h^* is exactly Hermitian in floating point, so
    adding it elementwise keeps gamma Hermitian to the bit.
    """
    if s.p != stats.p:
        raise ValueError(f"sample dimension {s.p} != stats dimension {stats.p}")
    h = s.h
    # assemble h h^* from real/imag outer products: commutativity of the
    # scalar multiplies makes the result Hermitian to the bit, which a
    # direct complex outer product is not
    hr, hi = h.real, h.imag
    stats.gamma.real += np.outer(hr, hr) + np.outer(hi, hi)
    stats.gamma.imag += np.outer(hi, hr) - np.outer(hr, hi)
    stats.rho += h * s.y
    stats.kappa += abs(s.y) ** 2
    stats.n += 1
    return stats


def init_aux(stats: SufficientStats, theta: np.ndarray) -> AuxState:
    """Initialize (eta, zeta) for the current estimate from the statistics alone.

    eta = kappa + theta^* gamma theta - 2 Re{theta^* rho}, clamped at 0
    since cancellation can push the exact identity slightly negative.
    """
    theta = _as_complex_vector(theta, "theta")
    if theta.shape[0] != stats.p:
        raise ValueError("theta dimension mismatch")
    gt = stats.gamma @ theta
    eta = stats.kappa + np.vdot(theta, gt).real - 2.0 * np.vdot(theta, stats.rho).real
    zeta = stats.rho - gt
    return AuxState(max(eta, 0.0), zeta)


def apply_coordinate_delta(
    aux: AuxState, stats: SufficientStats, i: int, old: complex, new: complex
) -> AuxState:
    """O(p) update of (eta, zeta) after coordinate i changes from old to new."""
    if not 0 <= i < stats.p:
        raise IndexError(f"coordinate index {i} out of range for p={stats.p}")
    d = complex(old) - complex(new)
    gii = stats.gamma[i, i].real
    aux.eta = max(aux.eta + gii * abs(d) ** 2 + 2.0 * (np.conj(d) * aux.zeta[i]).real, 0.0)
    aux.zeta += stats.gamma[:, i] * d
    return aux
