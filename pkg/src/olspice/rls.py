"""Online l2-regularized least squares (covariance-form RLS).

With pmat initialized to (1/lam) I the online estimate equals the batch
ridge minimizer (gamma_n + lam I)^{-1} rho_n exactly at every n, which makes
this baseline a fixed point of verification rather than an approximation.

The oracle-support variant runs the identical recursion on the sub-vector of
known nonzero coefficients and reports zeros elsewhere.
"""

from __future__ import annotations

import numpy as np

from .core import Sample


class OnlineRls:
    def __init__(self, p: int, lam: float = 1.0, support=None):
        if lam <= 0:
            raise ValueError("regularization lam must be positive")
        self.p_full = p
        self.lam = lam
        if support is not None:
            self.support = np.asarray(sorted(support), dtype=np.intp)
            if self.support.size == 0:
                raise ValueError("support must be non-empty")
            if self.support[0] < 0 or self.support[-1] >= p:
                raise IndexError("support index out of range")
        else:
            self.support = None
        k = p if self.support is None else self.support.size
        self.pmat = np.eye(k, dtype=np.complex128) / lam
        self._theta = np.zeros(k, dtype=np.complex128)
        self.n = 0

    @property
    def p(self) -> int:
        return self.p_full

    @property
    def theta(self) -> np.ndarray:
        if self.support is None:
            return self._theta.copy()
        full = np.zeros(self.p_full, dtype=np.complex128)
        full[self.support] = self._theta
        return full

    def process_sample(self, s: Sample) -> np.ndarray:
        if s.p != self.p_full:
            raise ValueError(f"sample dimension {s.p} != {self.p_full}")
        h = s.h if self.support is None else s.h[self.support]
        ph = self.pmat @ h
        denom = 1.0 + np.vdot(h, ph).real
        gain = ph / denom
        err = s.y - np.vdot(h, self._theta)
        self._theta += gain * err
        self.pmat -= np.outer(gain, ph.conj())
        # re-Hermitize against roundoff drift
        self.pmat = 0.5 * (self.pmat + self.pmat.conj().T)
        self.n += 1
        return self.theta


RlsState = OnlineRls


def rls_step(state: OnlineRls, s: Sample) -> np.ndarray:
    return state.process_sample(s)
