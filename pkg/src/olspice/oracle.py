"""Batch reference solvers and covariance-matching identities.

These operate on explicit (H, y) and serve as the verification side of the
online estimators: the fully-swept weighted square-root LASSO minimizer, the
closed-form LMMSE estimator, and the concentrated / covariance-matching
costs whose minimizers differ only by a known scaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class BatchProblem:
    """Explicit batch data: y ~= hmat @ theta, hmat of shape (n, p)."""

    hmat: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.hmat = np.ascontiguousarray(self.hmat, dtype=np.complex128)
        self.y = np.ascontiguousarray(self.y, dtype=np.complex128)
        if self.hmat.ndim != 2 or self.y.ndim != 1:
            raise ValueError("hmat must be 2-D and y 1-D")
        if self.hmat.shape[0] != self.y.shape[0]:
            raise ValueError("row count of hmat must match length of y")

    @property
    def n(self) -> int:
        return self.hmat.shape[0]

    @property
    def p(self) -> int:
        return self.hmat.shape[1]

    @classmethod
    def from_stream(cls, samples) -> "BatchProblem":
        """Stack streaming samples: row t of hmat is h_t^* (so y = H theta)."""
        hmat = np.array([s.h.conj() for s in samples])
        y = np.array([s.y for s in samples])
        return cls(hmat, y)


@dataclass
class CovParams:
    """Diagonal prior covariance of theta plus the noise variance."""

    pdiag: np.ndarray
    sigma2: float

    def __post_init__(self):
        self.pdiag = np.ascontiguousarray(self.pdiag, dtype=np.float64)
        if np.any(self.pdiag <= 0) or self.sigma2 <= 0:
            raise ValueError("covariance parameters must be strictly positive")

    def scaled(self, c: float) -> "CovParams":
        return CovParams(c * self.pdiag, c * self.sigma2)


def batch_weighted_sqrt_lasso(
    prob: BatchProblem, tol: float = 1e-10, max_sweeps: int = 100_000
):
    """Cyclic minimizer of ||y - H theta||_2 + sum_i (||c_i||/sqrt(n)) |theta_i|.

    Sweeps until the largest coordinate change drops below tol or max_sweeps
    is hit; returns (theta, converged). All-zero columns get coefficient 0.
    """
    H, y = prob.hmat, prob.y
    n, p = prob.n, prob.p
    if n < 2:
        raise ValueError("batch square-root-LASSO oracle requires n >= 2")
    colnorm2 = np.einsum("ij,ij->j", H.conj(), H).real
    theta = np.zeros(p, dtype=np.complex128)
    z = y.copy()
    sq_n1 = math.sqrt(n - 1.0)
    for _ in range(max_sweeps):
        max_delta = 0.0
        for i in range(p):
            b = colnorm2[i]
            if b <= 0.0:
                continue
            c = H[:, i]
            yt = z + c * theta[i]
            a = np.vdot(yt, yt).real
            s = np.vdot(c, yt)
            g = abs(s)
            gap = max(a * b - g * g, 0.0)
            if sq_n1 * g > math.sqrt(gap):
                r = (g - math.sqrt(gap / (n - 1.0))) / b
                r = min(max(r, 0.0), g / b)
                new = (s / g) * r
            else:
                new = 0.0 + 0.0j
            max_delta = max(max_delta, abs(theta[i] - new))
            z = yt - c * new
            theta[i] = new
        if max_delta < tol:
            return theta, True
    return theta, False


def sqrt_lasso_cost(prob: BatchProblem, theta: np.ndarray) -> float:
    """||y - H theta||_2 + sum_i sqrt(||c_i||^2/n) |theta_i|."""
    H, y = prob.hmat, prob.y
    resid = y - H @ theta
    weights = np.sqrt(np.einsum("ij,ij->j", H.conj(), H).real / prob.n)
    return float(np.linalg.norm(resid) + np.sum(weights * np.abs(theta)))


def _r_matrix(prob: BatchProblem, cp: CovParams) -> np.ndarray:
    H = prob.hmat
    return (H * cp.pdiag) @ H.conj().T + cp.sigma2 * np.eye(prob.n)


def lmmse(prob: BatchProblem, cp: CovParams) -> np.ndarray:
    """theta = P H^* (H P H^* + sigma2 I)^{-1} y.

    Also evaluated via the equivalent (H^*H + sigma2 P^{-1})^{-1} H^* y form
    as an internal cross-check.
    """
    H, y = prob.hmat, prob.y
    r = _r_matrix(prob, cp)
    first = cp.pdiag * (H.conj().T @ np.linalg.solve(r, y))
    lhs = H.conj().T @ H + cp.sigma2 * np.diag(1.0 / cp.pdiag)
    second = np.linalg.solve(lhs, H.conj().T @ y)
    if not np.allclose(first, second, rtol=1e-8, atol=1e-10):
        raise ArithmeticError("LMMSE closed forms disagree; system ill-conditioned")
    return first


def concentrated_cost(prob: BatchProblem, cp: CovParams) -> float:
    """y^* R^{-1} y + tr{R} with R = H P H^* + sigma2 I."""
    r = _r_matrix(prob, cp)
    return float(np.vdot(prob.y, np.linalg.solve(r, prob.y)).real + np.trace(r).real)


def covmatch_cost(prob: BatchProblem, cp: CovParams) -> float:
    """Expanded covariance-matching cost y^* R^{-1} y + ||y||^{-2} tr{R}."""
    r = _r_matrix(prob, cp)
    ynorm2 = np.vdot(prob.y, prob.y).real
    return float(
        np.vdot(prob.y, np.linalg.solve(r, prob.y)).real + np.trace(r).real / ynorm2
    )


def covmatch_cost_frobenius(prob: BatchProblem, cp: CovParams) -> float:
    """||R^{-1/2}(y y^* - R)||_F^2, the raw covariance-matching criterion."""
    r = _r_matrix(prob, cp)
    m = np.outer(prob.y, prob.y.conj()) - r
    return float(np.trace(m @ np.linalg.solve(r, m)).real)
