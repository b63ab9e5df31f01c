"""Target estimators: flank-peak midpoint and refocused argmax.

The backward leg leaves the marked component spread over a band whose outer
edges sit symmetrically about the target, so the midpoint of the leftmost
and rightmost prominent peaks of the suppressed t = 2*tbar distribution
estimates the target (flank method). Alternatively, the refocus leg
concentrates the marked component back onto the target, and the argmax of
the final distribution reads it off directly (refocus method).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .defaults import DEFAULT_CUT_HALFWIDTH, DEFAULT_FLAT_WINDOW
from .errors import ConfigError, EstimationError
from .search import SearchRecord, run_search
from .state import Distribution, WalkParams

__all__ = [
    "Estimate",
    "extract_flank",
    "extract_refocus",
    "success_sweep",
]

# A local maximum counts as a flank peak only above this fraction of the
# suppressed distribution's global maximum.
PROMINENCE_FRACTION = 0.25


@dataclass(frozen=True)
class Estimate:
    n_hat: int
    method: str  # "flank" or "refocus"
    confidence_weight: float
    n_l: int | None = None
    n_r: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence_weight <= 1.0:
            raise ConfigError("confidence weight must lie in [0, 1]")


def _peak_runs(values: np.ndarray) -> list[tuple[int, int]]:
    """Index ranges [i0, i1] of maximal equal-value runs that strictly
    exceed both neighboring values (array edges count as -inf)."""
    runs = []
    size = values.size
    i = 0
    while i < size:
        j = i
        while j + 1 < size and values[j + 1] == values[i]:
            j += 1
        left_ok = i == 0 or values[i - 1] < values[i]
        right_ok = j == size - 1 or values[j + 1] < values[i]
        if left_ok and right_ok and values[i] > 0.0:
            runs.append((i, j))
        i = j + 1
    return runs


def extract_flank(dist: Distribution, exclusion_halfwidth: int) -> Estimate:
    """Midpoint of the outermost prominent peaks of a suppressed distribution.

    Sites with |n| <= exclusion_halfwidth are ignored when locating peaks;
    a halfwidth of 0 disables the exclusion entirely. Half-integer midpoints
    round toward zero. The confidence weight is the probability mass within
    +-2 sites of the estimate.
    """
    if int(exclusion_halfwidth) != exclusion_halfwidth or exclusion_halfwidth < 0:
        raise ConfigError("exclusion halfwidth must be a nonnegative integer")
    n = dist.momenta
    work = dist.probs.copy()
    if exclusion_halfwidth > 0:
        work[np.abs(n) <= exclusion_halfwidth] = 0.0
    if work.sum() <= 0.0:
        raise EstimationError("no probability mass outside the exclusion region")

    threshold = PROMINENCE_FRACTION * work.max()
    runs = [(i0, i1) for i0, i1 in _peak_runs(work) if work[i0] >= threshold]
    if not runs or (len(runs) == 1 and runs[0][0] == runs[0][1]):
        found = [int(n[i0]) for i0, _ in runs]
        raise EstimationError(
            f"need two prominent flank peaks, found {len(found)} at {found}"
        )
    n_l = int(n[runs[0][0]])
    n_r = int(n[runs[-1][1]])
    s = n_l + n_r
    n_hat = s // 2 if s % 2 == 0 else math.trunc(s / 2)

    M = dist.window_halfwidth
    lo, hi = max(-M, n_hat - 2), min(M, n_hat + 2)
    weight = float(dist.probs[lo + M : hi + M + 1].sum())
    return Estimate(n_hat=n_hat, method="flank", confidence_weight=weight,
                    n_l=n_l, n_r=n_r)


def extract_refocus(record: SearchRecord) -> Estimate:
    """Argmax of the final (t = 3*tbar) distribution; ties to smaller |n|."""
    if record.cut_halfwidth is None or record.cut_state is None:
        raise ConfigError("refocus estimation needs a record with a cut")
    expected = 3 * record.params.kicks_per_leg + 1
    if len(record.distributions) != expected:
        raise ConfigError("record does not contain the full three-leg protocol")
    final = record.distributions[-1]
    if final.total_mass <= 0.0:
        raise EstimationError("final distribution carries no mass")
    p = final.probs
    n = final.momenta
    top = np.flatnonzero(p == p.max())
    n_hat = int(min((n[i] for i in top), key=lambda v: (abs(v), v)))
    return Estimate(
        n_hat=n_hat,
        method="refocus",
        confidence_weight=float(final.prob(n_hat)),
    )


def _sweep_cell(
    params: WalkParams,
    initial,
    n_t: int,
    cut_halfwidth: int,
    strategy: str,
    flat_window: int,
) -> dict:
    row: dict = {"n_t": int(n_t)}
    try:
        record = run_search(
            params, initial, n_t, cut_halfwidth, strategy, flat_window
        )
    except Exception as exc:  # record the failure, keep sweeping
        row.update(
            n_hat_flank=None, flank_ok=False,
            n_hat_refocus=None, refocus_ok=False,
            weight=None, error=str(exc),
        )
        return row
    try:
        flank = extract_flank(
            record.suppressed_distribution(), cut_halfwidth
        )
        row["n_hat_flank"] = flank.n_hat
        row["flank_ok"] = flank.n_hat == n_t
    except EstimationError as exc:
        row.update(n_hat_flank=None, flank_ok=False, error=str(exc))
    try:
        refocus = extract_refocus(record)
        row["n_hat_refocus"] = refocus.n_hat
        row["refocus_ok"] = refocus.n_hat == n_t
        row["weight"] = refocus.confidence_weight
    except EstimationError as exc:
        row.update(n_hat_refocus=None, refocus_ok=False, weight=None,
                   error=str(exc))
    return row


def success_sweep(
    params: WalkParams,
    initial,
    targets: Sequence[int] | Iterable[int],
    cut_halfwidth: int = DEFAULT_CUT_HALFWIDTH,
    strategy: str = "cut",
    flat_window: int = DEFAULT_FLAT_WINDOW,
) -> list[dict]:
    """Run the protocol for each target; apply both estimators.

    Returns one row per target, in input order, with keys n_t, n_hat_flank,
    flank_ok, n_hat_refocus, refocus_ok, weight (plus error on failures).
    Cells run on a thread pool; assembly preserves order.
    """
    targets = [int(t) for t in targets]
    if not targets:
        return []
    workers = min(len(targets), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(
            pool.map(
                lambda t: _sweep_cell(
                    params, initial, t, cut_halfwidth, strategy, flat_window
                ),
                targets,
            )
        )
    return rows
