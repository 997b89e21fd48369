"""Hot per-sample sweep kernels with a numba fast path and a numpy fallback.

Backend selection: set OLSPICE_BACKEND=numpy to force the pure-Python/numpy
path; anything else (default "numba") uses @njit-compiled kernels when numba
imports cleanly. Both paths run the identical scalar algorithm so results
agree to floating-point roundoff.

The kernels mutate theta and zeta in place and return the updated eta.
"""

from __future__ import annotations

import math
import os

import numpy as np

_ENV_VAR = "OLSPICE_BACKEND"


def _spice_sweeps_impl(gamma, zeta, theta, eta, n, sweeps):
    # Cyclic minimization of ||y - H theta||_2 + sum_i sqrt(gamma_ii/n)|theta_i|,
    # expressed through (gamma, zeta, eta) only. Requires n >= 2.
    p = theta.shape[0]
    sq_n1 = math.sqrt(n - 1.0)
    for _ in range(sweeps):
        for i in range(p):
            gii = gamma[i, i].real
            old = theta[i]
            if gii <= 0.0:
                # unexcited column: carries no information, coefficient killed
                new = 0.0 + 0.0j
            else:
                zi = zeta[i]
                s = zi + gii * old
                alpha = (
                    eta
                    + gii * (old.real * old.real + old.imag * old.imag)
                    + 2.0 * (old.conjugate() * zi).real
                )
                gam = abs(s)
                gap = alpha * gii - gam * gam
                if gap < 0.0:
                    gap = 0.0
                if sq_n1 * gam > math.sqrt(gap):
                    r = (gam - math.sqrt(gap / (n - 1.0))) / gii
                    hi = gam / gii
                    if r < 0.0:
                        r = 0.0
                    elif r > hi:
                        r = hi
                    new = (s / gam) * r
                else:
                    new = 0.0 + 0.0j
            d = old - new
            if d != 0.0:
                eta += gamma[i, i].real * (d.real * d.real + d.imag * d.imag) + 2.0 * (
                    d.conjugate() * zeta[i]
                ).real
                if eta < 0.0:
                    eta = 0.0
                for k in range(p):
                    zeta[k] += gamma[k, i] * d
                theta[i] = new
    return eta


def _lasso_sweeps_impl(gamma, zeta, theta, lam, sweeps):
    # Cyclic soft-threshold minimization of ||y - H theta||_2^2 + lam ||theta||_1
    # in polar form; covers real and complex data alike.
    p = theta.shape[0]
    for _ in range(sweeps):
        for i in range(p):
            gii = gamma[i, i].real
            old = theta[i]
            if gii <= 0.0:
                new = 0.0 + 0.0j
            else:
                s = zeta[i] + gii * old
                gam = abs(s)
                r = (2.0 * gam - lam) / (2.0 * gii)
                if r > 0.0 and gam > 0.0:
                    new = (s / gam) * r
                else:
                    new = 0.0 + 0.0j
            d = old - new
            if d != 0.0:
                for k in range(p):
                    zeta[k] += gamma[k, i] * d
                theta[i] = new
    return None


def _want_numba() -> bool:
    return os.environ.get(_ENV_VAR, "numba").strip().lower() != "numpy"


_compiled = {}


def _get_compiled(name, impl):
    if name not in _compiled:
        from numba import njit

        _compiled[name] = njit(cache=True)(impl)
    return _compiled[name]


def backend() -> str:
    """Resolved backend name, re-read from the environment on each call."""
    if _want_numba():
        try:
            import numba  # noqa: F401

            return "numba"
        except ImportError:
            return "numpy"
    return "numpy"


def spice_sweeps(gamma, zeta, theta, eta, n, sweeps):
    if backend() == "numba":
        fn = _get_compiled("spice", _spice_sweeps_impl)
    else:
        fn = _spice_sweeps_impl
    return fn(gamma, zeta, theta, float(eta), int(n), int(sweeps))


def lasso_sweeps(gamma, zeta, theta, lam, sweeps):
    if backend() == "numba":
        fn = _get_compiled("lasso", _lasso_sweeps_impl)
    else:
        fn = _lasso_sweeps_impl
    fn(gamma, zeta, theta, float(lam), int(sweeps))
