"""Build matplotlib figures from harness result CSV files.

Supported kinds:
  - nmse_vs_n:   NMSE (dB) against sample count n, log-scaled x axis,
                 one line per estimator.
  - nmse_vs_snr: NMSE (dB) against SNR (dB) at fixed n.
  - var_bias:    two panels, variance and squared bias against n (log-x,
                 dB-y), one line per estimator in each.
  - sar_grid:    |theta_hat| magnitude heatmaps on the sqrt(p) x sqrt(p)
                 image grid, one column per estimator, one row per recorded n;
                 reads the per-coordinate estimates CSV.

All readers consume the CSV schemas written by the olspice harness; this
package has no other coupling to the estimation code.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("nmse_vs_n", "nmse_vs_snr", "var_bias", "sar_grid")

_DB_FLOOR = -150.0


class PlotError(ValueError):
    """Unusable figure request (unknown kind, missing columns, no series)."""


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[str, ...]
    out: str
    labels: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PlotError(f"unknown figure kind {self.kind!r}; choose from {KINDS}")
        if not self.inputs:
            raise PlotError("at least one input CSV is required")

    def label(self, estimator: str) -> str:
        return self.labels.get(estimator, estimator)


def _read_rows(path: str, required: tuple[str, ...]) -> list[dict]:
    try:
        with open(path, newline="") as f:
            reader = csv.DictReader(f)
            header = reader.fieldnames or []
            missing = [c for c in required if c not in header]
            if missing:
                raise PlotError(f"{path}: missing columns {missing}, found {header}")
            rows = list(reader)
    except OSError as exc:
        raise PlotError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise PlotError(f"{path}: no data rows (header-only CSV)")
    return rows


def _series(rows: list[dict], xcol: str) -> dict[str, tuple[np.ndarray, dict]]:
    """Group rows by estimator; x values sorted, columns parsed as floats."""
    grouped: dict[str, list[dict]] = {}
    for row in rows:
        grouped.setdefault(row["estimator"], []).append(row)
    out = {}
    for tag, items in grouped.items():
        items.sort(key=lambda r: float(r[xcol]))
        x = np.array([float(r[xcol]) for r in items])
        cols = {
            c: np.array([float(r[c]) for r in items])
            for c in items[0]
            if c not in ("estimator", xcol)
        }
        out[tag] = (x, cols)
    return out


def _db(values: np.ndarray) -> np.ndarray:
    floor = 10.0 ** (_DB_FLOOR / 10.0)
    return 10.0 * np.log10(np.maximum(values, floor))


def _line_figure(spec: FigureSpec, xcol: str, logx: bool):
    rows = _read_rows(spec.inputs[0], ("estimator", xcol, "nmse_db"))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for tag, (x, cols) in _series(rows, xcol).items():
        ax.plot(x, cols["nmse_db"], label=spec.label(tag))
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel("n" if xcol == "n" else "SNR (dB)")
    ax.set_ylabel("NMSE (dB)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def _var_bias_figure(spec: FigureSpec):
    rows = _read_rows(spec.inputs[0], ("estimator", "n", "var", "bias2"))
    fig, axes = plt.subplots(1, 2, figsize=(10.0, 4.0), sharex=True)
    for tag, (x, cols) in _series(rows, "n").items():
        axes[0].plot(x, _db(cols["var"]), label=spec.label(tag))
        axes[1].plot(x, _db(cols["bias2"]), label=spec.label(tag))
    for ax, name in zip(axes, ("Variance (dB)", "Squared bias (dB)")):
        ax.set_xscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel(name)
        ax.grid(True, which="both", alpha=0.3)
    axes[0].legend()
    fig.tight_layout()
    return fig


def _sar_grid_figure(spec: FigureSpec):
    rows = _read_rows(spec.inputs[0], ("estimator", "n", "index", "magnitude"))
    tags = sorted({r["estimator"] for r in rows})
    ns = sorted({int(r["n"]) for r in rows})
    p = max(int(r["index"]) for r in rows) + 1
    side = math.isqrt(p)
    if side * side != p:
        raise PlotError(f"p={p} coordinates do not form a square image grid")
    images = {(tag, n): np.zeros(p) for tag in tags for n in ns}
    for r in rows:
        images[(r["estimator"], int(r["n"]))][int(r["index"])] = float(r["magnitude"])
    fig, axes = plt.subplots(
        len(ns), len(tags), figsize=(3.0 * len(tags), 3.0 * len(ns)), squeeze=False
    )
    for row_i, n in enumerate(ns):
        for col_i, tag in enumerate(tags):
            ax = axes[row_i][col_i]
            ax.imshow(images[(tag, n)].reshape(side, side), cmap="gray_r")
            ax.set_title(f"{spec.label(tag)}, t={n}", fontsize=9)
            ax.set_xticks([])
            ax.set_yticks([])
    fig.tight_layout()
    return fig


def build_figure(spec: FigureSpec):
    """Parse the inputs and return the matplotlib Figure, without saving."""
    if spec.kind == "nmse_vs_n":
        return _line_figure(spec, "n", logx=True)
    if spec.kind == "nmse_vs_snr":
        return _line_figure(spec, "snr_db", logx=False)
    if spec.kind == "var_bias":
        return _var_bias_figure(spec)
    return _sar_grid_figure(spec)


def render(spec: FigureSpec) -> str:
    """Render the figure to spec.out. Nothing is written if parsing fails."""
    fig = build_figure(spec)
    try:
        fig.savefig(spec.out, dpi=120, metadata={"Software": None})
    finally:
        plt.close(fig)
    return spec.out
