"""Shared test utilities: retained-history streams and batch recomputation."""

import numpy as np

from olspice import BatchProblem, Sample


def random_samples(rng, p, n, complex_data=False, theta=None, noise=0.1):
    """Generate n samples; y follows the measurement model when theta given,
    else y is drawn at random."""
    samples = []
    for _ in range(n):
        if complex_data:
            h = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        else:
            h = rng.standard_normal(p)
        if theta is not None:
            y = np.vdot(h, theta)
            if noise:
                y = y + noise * (
                    rng.standard_normal() + (1j * rng.standard_normal() if complex_data else 0.0)
                )
        else:
            y = rng.standard_normal() + (1j * rng.standard_normal() if complex_data else 0.0)
        samples.append(Sample(complex(y), h))
    return samples


def batch_stats(samples):
    """Batch (gamma, rho, kappa) from the retained history."""
    prob = BatchProblem.from_stream(samples)
    H, y = prob.hmat, prob.y
    return H.conj().T @ H, H.conj().T @ y, float(np.vdot(y, y).real)


def batch_residual(samples, theta):
    """(eta, zeta) recomputed from scratch on the retained history."""
    prob = BatchProblem.from_stream(samples)
    z = prob.y - prob.hmat @ theta
    return float(np.vdot(z, z).real), prob.hmat.conj().T @ z
