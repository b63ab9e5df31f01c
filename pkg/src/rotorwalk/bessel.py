"""Integer-order Bessel functions of the first kind.

Evaluated by backward (Miller-type) three-term recurrence with sum
normalization: the recurrence J_{m-1} = (2m/x) J_m - J_{m+1} is run downward
from a start order safely above both the requested order and the turning
point m ~ x, then the whole sequence is scaled so that
J_0 + 2 * sum_{m even >= 2} J_m = 1. Downward recursion is stable because the
wanted solution is the minimal one; upward recursion is not.

Accuracy is at machine level (absolute error < 4e-15 up to x ~ 150, checked
against series and quadrature references in the test suite).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["bessel_band", "bessel_j", "bessel_j0"]

# Rescale threshold while recursing downward (values grow toward low orders
# before normalization).
_RESCALE = 1e250


def _miller_start(x: float, nmax: int) -> int:
    # Must start above the turning point m ~ x with headroom covering the
    # Airy transition zone (width ~ x^(1/3)) plus ~60 orders so the admixture
    # of the dominant solution decays below double precision.
    return max(nmax, math.ceil(x)) + 60 + math.ceil(9.0 * x ** (1.0 / 3.0))


def _jn_nonneg(x: float, nmax: int) -> np.ndarray:
    """J_0(x) .. J_nmax(x) for x >= 0."""
    if x < 0:
        raise ValueError("negative argument; use J_n(-x) = (-1)^n J_n(x)")
    if x == 0.0:
        out = np.zeros(nmax + 1)
        out[0] = 1.0
        return out
    start = _miller_start(x, nmax)
    vals = np.zeros(start + 1)
    jp = 0.0
    j = 1e-300
    vals[start] = j
    for m in range(start, 0, -1):
        jm = (2.0 * m / x) * j - jp
        jp, j = j, jm
        vals[m - 1] = j
        if abs(j) > _RESCALE:
            vals[m - 1:] /= _RESCALE
            j /= _RESCALE
            jp /= _RESCALE
    norm = vals[0] + 2.0 * vals[2::2].sum()
    return vals[: nmax + 1] / norm


def bessel_band(x: float, half_width: int) -> np.ndarray:
    """J_d(x) for d = -half_width .. +half_width as one array.

    Entry [half_width + d] holds J_d(x); negative orders follow from
    J_{-d} = (-1)^d J_d.
    """
    if half_width < 0:
        raise ValueError("half_width must be >= 0")
    pos = _jn_nonneg(x, half_width)
    band = np.empty(2 * half_width + 1)
    band[half_width:] = pos
    d = np.arange(1, half_width + 1)
    band[half_width - d] = np.where(d % 2 == 0, pos[d], -pos[d])
    return band


def bessel_j(n: int, x: float) -> float:
    """Single value J_n(x), any integer order."""
    a = abs(int(n))
    val = _jn_nonneg(x, a)[a]
    if n < 0 and a % 2 == 1:
        val = -val
    return float(val)


def bessel_j0(x: float) -> float:
    return float(_jn_nonneg(x, 0)[0])
