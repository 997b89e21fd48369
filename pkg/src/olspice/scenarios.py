"""Deterministic, seedable generators for the three benchmark scenarios.

Every generator is a pure function of (spec, trial): replaying the same
trial index yields a bit-identical stream. Support indices are 0-based.

SNR convention: sigma2 = min_{i in support} E|theta_i|^2 / 10^(snr_db/10).
Noise is Gaussian throughout; complex scenarios use circular complex noise
with total variance sigma2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .core import Sample

KINDS = ("iid_gaussian", "sinusoids", "sar")


@dataclass
class ScenarioSpec:
    kind: str
    p: int
    support: tuple
    amplitudes: object  # tuple of values, or "gaussian" for per-trial redraws
    snr_db: float
    n_max: int
    seed: int = 0
    trials: int = 100

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}")
        self.support = tuple(int(i) for i in self.support)
        if any(not 0 <= i < self.p for i in self.support):
            raise ValueError("support index out of range [0, p)")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support indices must be distinct")
        if isinstance(self.amplitudes, str):
            if self.amplitudes != "gaussian":
                raise ValueError("amplitudes must be numbers or 'gaussian'")
        else:
            self.amplitudes = tuple(float(a) for a in self.amplitudes)
            if len(self.amplitudes) != len(self.support):
                raise ValueError("amplitudes/support length mismatch")
        if self.kind == "sinusoids":
            if self.p % 2 != 0:
                raise ValueError("sinusoids scenario needs even p = 2q")
            if any(i >= self.p // 2 for i in self.support):
                raise ValueError("sinusoid support selects a frequency index < q = p/2")
        if self.kind == "sar":
            g = math.isqrt(self.p)
            if g * g != self.p:
                raise ValueError("sar scenario needs p to be a perfect square")
        if self.noise_variance() <= 0:
            raise ValueError("SNR conversion produced non-positive sigma2")

    @property
    def stochastic_theta(self) -> bool:
        return self.amplitudes == "gaussian"

    def noise_variance(self) -> float:
        if self.stochastic_theta:
            min_power = 1.0  # zero-mean unit-variance draws
        else:
            min_power = min(a * a for a in self.amplitudes)
        return min_power / 10.0 ** (self.snr_db / 10.0)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioSpec":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "ScenarioSpec":
        return cls.from_dict(json.loads(text))


def _rng(spec: ScenarioSpec, trial: int) -> np.random.Generator:
    return np.random.default_rng([spec.seed, trial])


def _theta_true(spec: ScenarioSpec, rng: np.random.Generator) -> np.ndarray:
    theta = np.zeros(spec.p, dtype=np.complex128)
    if spec.stochastic_theta:
        theta[list(spec.support)] = rng.standard_normal(len(spec.support))
    else:
        theta[list(spec.support)] = spec.amplitudes
    return theta


def gen_iid(spec: ScenarioSpec, trial: int):
    """Real i.i.d. standard-normal regressors: y_t = h_t . theta + noise."""
    if spec.kind != "iid_gaussian":
        raise ValueError("spec kind mismatch")
    rng = _rng(spec, trial)
    theta = _theta_true(spec, rng)
    sigma = math.sqrt(spec.noise_variance())

    def stream():
        for _ in range(spec.n_max):
            h = rng.standard_normal(spec.p)
            y = float(h @ theta.real) + sigma * rng.standard_normal()
            yield Sample(y, h)

    return theta, stream()


def gen_sinusoids(spec: ScenarioSpec, trial: int):
    """Sum of q = p/2 gridded sinusoids: theta interleaves (A_i, B_i) pairs.

    Support index i selects sinusoid i; amplitude a with phase 0 maps to
    A_i = 0, B_i = a. Frequency grid: omega_i = i*pi/q.
    """
    if spec.kind != "sinusoids":
        raise ValueError("spec kind mismatch")
    rng = _rng(spec, trial)
    q = spec.p // 2
    omegas = np.arange(q) * math.pi / q
    # amplitudes live on the sinusoid grid of size q
    amps = np.zeros(q)
    if spec.stochastic_theta:
        amps[list(spec.support)] = rng.standard_normal(len(spec.support))
    else:
        amps[list(spec.support)] = spec.amplitudes
    theta = np.zeros(spec.p, dtype=np.complex128)
    theta[1::2] = amps  # phase 0: A_i = 0, B_i = a_i
    sigma = math.sqrt(spec.noise_variance())

    def stream():
        for t in range(1, spec.n_max + 1):
            h = np.empty(spec.p)
            h[0::2] = np.cos(omegas * t)
            h[1::2] = np.sin(omegas * t)
            y = float(h @ theta.real) + sigma * rng.standard_normal()
            yield Sample(y, h)

    return theta, stream()


def gen_sar(spec: ScenarioSpec, trial: int):
    """2-D DFT observations of a sparse scatterer scene on a G x G grid.

    Regressor entries are unit-modulus complex exponentials; frequencies are
    drawn uniformly with replacement from the discrete grid, so collecting
    each frequency exactly once would make H a scaled-unitary 2-D DFT.
    """
    if spec.kind != "sar":
        raise ValueError("spec kind mismatch")
    rng = _rng(spec, trial)
    g = math.isqrt(spec.p)
    theta = _theta_true(spec, rng)
    sigma = math.sqrt(spec.noise_variance())
    px, py = np.meshgrid(np.arange(g), np.arange(g), indexing="ij")
    px = px.ravel().astype(float)
    py = py.ravel().astype(float)

    def stream():
        for _ in range(spec.n_max):
            k1, k2 = rng.integers(0, g, size=2)
            h = np.exp(2j * math.pi * (px * k1 + py * k2) / g)
            noise = sigma * math.sqrt(0.5) * complex(
                rng.standard_normal(), rng.standard_normal()
            )
            y = complex(np.vdot(h, theta)) + noise
            yield Sample(y, h)

    return theta, stream()


_GENERATORS = {"iid_gaussian": gen_iid, "sinusoids": gen_sinusoids, "sar": gen_sar}


def stream(spec: ScenarioSpec, trial: int):
    """(theta_true, sample generator) for one Monte Carlo trial."""
    return _GENERATORS[spec.kind](spec, trial)
