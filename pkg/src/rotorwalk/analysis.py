"""Scaling diagnostics: ballistic width, survival law, recurrence sums.

The resonant walk expands ballistically (width sigma(t) = k t / sqrt(2) for a
single-site start), its return probability decays as p_0(t) = J_0(kt)^2 with
a 1/t envelope, and the partial sums of p_0 diverge logarithmically, the
walk's recurrence signature. A one-shot hitting time reads off when the
target population first exceeds a threshold during the refocus leg.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j0
from .errors import ConfigError, EstimationError
from .search import SearchRecord
from .state import Distribution, MomentumState

__all__ = [
    "ScalingReport",
    "width",
    "survival_probability",
    "fit_power_law",
    "one_shot_hitting_time",
    "polya_partial_sum",
    "width_slope",
]


@dataclass(frozen=True)
class ScalingReport:
    times: list[int]
    widths: list[float]
    survival: list[float]
    fitted_width_slope: float | None
    fitted_survival_exponent: float | None
    polya_partial_sums: list[float]
    hitting_time: int | None


def width(dist: Distribution) -> float:
    """Mass-normalized standard deviation of the momentum."""
    if dist.total_mass <= 0.0:
        raise ConfigError("width of a zero-mass distribution is undefined")
    n = dist.momenta.astype(float)
    p = dist.probs / dist.total_mass
    mean = float(np.dot(p, n))
    var = float(np.dot(p, (n - mean) ** 2))
    return math.sqrt(max(var, 0.0))


def survival_probability(evolution) -> list[float]:
    """p_0(t) = |<psi(0)|psi(t)>|^2 along a recorded evolution.

    Accepts a list of MomentumState or a SearchRecord.
    """
    states = evolution.states if isinstance(evolution, SearchRecord) else evolution
    if not states:
        raise ConfigError("empty evolution")
    first = states[0]
    if not isinstance(first, MomentumState):
        raise ConfigError("evolution must contain MomentumState entries")
    return [float(abs(first.overlap(s)) ** 2) for s in states]


def _dyadic_blocks(t: np.ndarray) -> list[np.ndarray]:
    """Complete blocks [2^j, 2^(j+1)) covered by the time axis."""
    blocks = []
    lo = 1
    while 2 * lo <= t[-1] + 1:
        sel = (t >= lo) & (t < 2 * lo)
        if sel.any():
            blocks.append(sel)
        lo *= 2
    return blocks


def fit_power_law(series, t_start: int = 1) -> float:
    """Exponent of p(t) ~ t^alpha from dyadic-block averages.

    Block means quench the oscillations of the underlying signal; the
    abscissa is the harmonic mean of t inside the block, which makes an
    exact power law p = 1/t land on an exactly straight log-log line. Only
    complete blocks enter (a trailing fragment would sample the oscillation
    rather than its envelope).
    """
    p = np.asarray(series, dtype=float)
    if t_start < 1:
        raise ConfigError("t_start must be >= 1")
    t = np.arange(t_start, t_start + p.size)
    xs, ys = [], []
    for sel in _dyadic_blocks(t):
        mean = p[sel].mean()
        if mean > 0.0:
            xs.append(math.log(1.0 / np.mean(1.0 / t[sel])))
            ys.append(math.log(mean))
    if len(xs) < 3:
        raise EstimationError(
            f"power-law fit needs >= 3 complete dyadic blocks, have {len(xs)}"
        )
    x = np.asarray(xs)
    y = np.asarray(ys)
    design = np.column_stack([x, np.ones_like(x)])
    slope, _ = np.linalg.lstsq(design, y, rcond=None)[0]
    return float(slope)


def width_slope(times, widths, kick_strength: float) -> float | None:
    """Through-origin slope of sigma(t) against k*t (1/sqrt(2) ballistic)."""
    t = np.asarray(times, dtype=float)
    s = np.asarray(widths, dtype=float)
    sel = t > 0
    x = kick_strength * t[sel]
    denom = float(np.dot(x, x))
    if denom == 0.0:
        return None
    return float(np.dot(x, s[sel]) / denom)


def one_shot_hitting_time(record: SearchRecord, threshold: float) -> int | None:
    """Earliest refocus-leg time with target population >= threshold.

    Only times t > 2*tbar count; earlier times are dominated by the
    preparation walk rather than the refocused marked component.
    """
    if not 0.0 < threshold <= 1.0:
        raise ConfigError("threshold must lie in (0, 1]")
    if record.target is None:
        raise ConfigError("record has no marked target")
    tbar = record.params.kicks_per_leg
    for t in range(2 * tbar + 1, len(record.distributions)):
        if record.distributions[t].prob(record.target) >= threshold:
            return t
    return None


def polya_partial_sum(kick_strength: float, t_max: int) -> list[float]:
    """Cumulative sums S(T) = sum_{t=1}^{T} J_0(k t)^2 for T = 1 .. t_max."""
    if int(t_max) != t_max or t_max < 1:
        raise ConfigError("t_max must be a positive integer")
    if kick_strength < 0:
        raise ConfigError("kick strength must be >= 0")
    p = [bessel_j0(kick_strength * t) ** 2 for t in range(1, int(t_max) + 1)]
    return list(np.cumsum(p))
