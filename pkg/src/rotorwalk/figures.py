"""Vector-graphics plot emission.

Plots are a convenience companion to the delimited outputs, never an
acceptance artifact. SVGs are written deterministically: fixed hash salt for
element ids and no embedded timestamp, so identical data yields identical
bytes.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .search import SearchRecord
from .state import Distribution

__all__ = [
    "plot_distributions",
    "plot_protocol_heatmap",
    "plot_final_distribution",
    "plot_width_scaling",
    "plot_survival_scaling",
    "plot_polya_sums",
]

plt.rcParams["svg.hashsalt"] = "rotorwalk"

_SAVE_OPTS = {"format": "svg", "metadata": {"Date": None}}


def _save(fig, path: str) -> None:
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def plot_distributions(
    curves: dict[str, Distribution],
    path: str,
    title: str,
    uniform_level: float | None = None,
    xlim: int | None = None,
) -> None:
    """Momentum distributions as lines, one per labeled curve."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, dist in curves.items():
        ax.plot(dist.momenta, dist.probs, lw=1.2, label=label)
    if uniform_level is not None:
        ax.axhline(uniform_level, color="gray", ls="--", lw=0.8,
                   label="uniform level")
    if xlim is not None:
        ax.set_xlim(-xlim, xlim)
    ax.set_xlabel("momentum n")
    ax.set_ylabel("probability")
    ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    _save(fig, path)


def plot_protocol_heatmap(record: SearchRecord, path: str) -> None:
    """Time-momentum probability map across the three protocol legs."""
    probs = np.array([d.probs for d in record.distributions])
    M = record.params.window_halfwidth
    tbar = record.params.kicks_per_leg
    fig, ax = plt.subplots(figsize=(7, 4.5))
    im = ax.imshow(
        probs.T,
        origin="lower",
        aspect="auto",
        extent=(-0.5, probs.shape[0] - 0.5, -M - 0.5, M + 0.5),
        cmap="viridis",
        vmax=np.quantile(probs, 0.999),
    )
    for leg in (tbar, 2 * tbar):
        ax.axvline(leg + 0.5, color="w", ls=":", lw=0.8)
    if record.target is not None:
        ax.axhline(record.target, color="r", ls="--", lw=0.8)
    ax.set_xlabel("kick number t")
    ax.set_ylabel("momentum n")
    ax.set_title("protocol evolution")
    fig.colorbar(im, ax=ax, label="probability")
    _save(fig, path)


def plot_final_distribution(
    dist: Distribution, target: int | None, path: str, title: str
) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(dist.momenta, dist.probs, lw=1.2)
    if target is not None:
        ax.axvline(target, color="r", ls="--", lw=0.8, label=f"target {target}")
        ax.legend(frameon=False, fontsize=8)
    ax.set_xlabel("momentum n")
    ax.set_ylabel("probability")
    ax.set_title(title)
    _save(fig, path)


def plot_width_scaling(times, widths, kick_strength: float, path: str) -> None:
    """Measured widths against the ballistic line and a diffusive reference."""
    t = np.asarray(times, dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(t, widths, "o", ms=3, label="simulation")
    ax.plot(t, kick_strength * t / math.sqrt(2.0), "-", lw=1.0,
            label="ballistic k t / sqrt(2)")
    ax.plot(t, kick_strength * np.sqrt(t) / math.sqrt(2.0), ":", lw=1.0,
            label="diffusive reference")
    ax.set_xlabel("kicks t")
    ax.set_ylabel("width sigma(t)")
    ax.legend(frameon=False, fontsize=8)
    _save(fig, path)


def plot_survival_scaling(times, survival, exponent: float | None, path: str) -> None:
    t = np.asarray(times, dtype=float)
    p = np.asarray(survival, dtype=float)
    sel = (t > 0) & (p > 0)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(t[sel], p[sel], "o", ms=3, label="p_0(t)")
    if exponent is not None and sel.sum() > 1:
        logc = float(np.mean(np.log(p[sel]) - exponent * np.log(t[sel])))
        ax.loglog(t[sel], np.exp(logc) * t[sel] ** exponent, "-", lw=1.0,
                  label=f"fit slope {exponent:.3f}")
    ax.set_xlabel("kicks t")
    ax.set_ylabel("survival probability")
    ax.legend(frameon=False, fontsize=8)
    _save(fig, path)


def plot_polya_sums(partial_sums, path: str) -> None:
    s = np.asarray(partial_sums, dtype=float)
    t = np.arange(1, s.size + 1)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(t, s, lw=1.2)
    ax.set_xlabel("kicks t")
    ax.set_ylabel("cumulative return probability")
    ax.set_title("recurrence partial sums")
    _save(fig, path)
