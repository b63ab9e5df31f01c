"""Three-leg search protocol: prepare, mark, rewind, suppress, refocus.

Leg one evolves the initial superposition forward for tbar kicks; the oracle
marks the target momentum with a pi phase flip; leg two rewinds the walk with
the adjoint kick; unmarked amplitude refocuses onto the initial central sites
while the marked component stays spread. Suppressing the center (an amplitude
cut, or subtracting the unmarked reference distribution) exposes the marked
component; leg three evolves forward again, refocusing it onto the target.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .defaults import DEFAULT_CUT_HALFWIDTH, DEFAULT_FLAT_WINDOW
from .errors import ConfigError
from .prepare import coefficients_for
from .propagator import apply_kick
from .state import Distribution, MomentumState, WalkParams, distribution, subtract_reference, superpose

__all__ = ["SearchRecord", "mark_state", "cut_window", "run_search"]

STRATEGIES = ("cut", "subtract")


def mark_state(state: MomentumState, n_t: int) -> MomentumState:
    """Phase-flip the amplitude at the target momentum (pi rotation)."""
    idx = state.index(n_t)  # rejects out-of-window targets
    amps = state.amplitudes.copy()
    amps[idx] = -amps[idx]
    return MomentumState(amps, state.window_halfwidth)


def cut_window(state: MomentumState, cut_halfwidth: int) -> MomentumState:
    """Zero all amplitudes with |n| <= cut_halfwidth; no renormalization."""
    if int(cut_halfwidth) != cut_halfwidth or cut_halfwidth < 0:
        raise ConfigError("cut halfwidth must be a nonnegative integer")
    amps = state.amplitudes.copy()
    n = state.momenta
    amps[np.abs(n) <= cut_halfwidth] = 0.0
    return MomentumState(amps, state.window_halfwidth)


@dataclass
class SearchRecord:
    """Everything the protocol produced, time-indexed t = 0 .. 3*tbar."""

    params: WalkParams
    target: int | None
    strategy: str
    cut_halfwidth: int | None
    states: list[MomentumState]
    distributions: list[Distribution]
    reference_distributions: list[Distribution]
    cut_state: MomentumState | None
    events: list[dict] = field(default_factory=list)

    def roundtrip_fidelity(self) -> float:
        """|<psi(0)|psi(2 tbar)>|^2, the rewind-quality probe."""
        t2 = 2 * self.params.kicks_per_leg
        return float(abs(self.states[0].overlap(self.states[t2])) ** 2)

    def suppressed_distribution(self, strategy: str | None = None) -> Distribution:
        """The centrally suppressed t = 2*tbar distribution.

        Strategy "cut" returns the post-cut distribution; "subtract" returns
        the marked-minus-reference distribution (clamped at zero). Defaults
        to the strategy the record was produced with.
        """
        strategy = self.strategy if strategy is None else strategy
        if strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {strategy!r}")
        t2 = 2 * self.params.kicks_per_leg
        if strategy == "subtract":
            return subtract_reference(
                self.distributions[t2], self.reference_distributions[t2]
            )
        if self.cut_state is None:
            raise ConfigError("record was produced without a cut")
        return distribution(self.cut_state)


def _resolve_initial(initial, window_halfwidth: int) -> tuple[MomentumState, object]:
    if isinstance(initial, str):
        coeffs = coefficients_for(initial)
        label = initial
    else:
        coeffs = np.asarray(initial, dtype=complex)
        if coeffs.shape != (3,):
            raise ConfigError("initial coefficients must be a triple (c_-1, c_0, c_+1)")
        label = coeffs
    state = superpose(
        [(-1, coeffs[0]), (0, coeffs[1]), (1, coeffs[2])], window_halfwidth
    )
    return state, label


def run_search(
    params: WalkParams,
    initial,
    n_t: int | None,
    cut_halfwidth: int | None = DEFAULT_CUT_HALFWIDTH,
    strategy: str = "cut",
    flat_window: int = DEFAULT_FLAT_WINDOW,
) -> SearchRecord:
    """Execute the full protocol and record every intermediate state.

    `initial` is a preset name or a coefficient triple for momenta -1, 0, +1.
    `n_t = None` disables the oracle; `cut_halfwidth = None` skips the cut
    (the refocus leg then evolves the uncut state). The unmarked reference
    run is always computed so either suppression strategy can be applied to
    the record afterwards.
    """
    if strategy not in STRATEGIES:
        raise ConfigError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    tbar = params.kicks_per_leg
    k = params.kick_strength
    psi0, _ = _resolve_initial(initial, params.window_halfwidth)

    events: list[dict] = []
    states = [psi0]
    reference = [psi0]

    for _ in range(tbar):  # preparation leg
        states.append(apply_kick(states[-1], k, "forward"))
        reference.append(apply_kick(reference[-1], k, "forward"))

    if n_t is not None:
        marked = mark_state(states[-1], n_t)
        states[-1] = marked
        events.append({"t": tbar, "event": "mark", "target": int(n_t)})
        if abs(n_t) > flat_window // 2:
            events.append(
                {
                    "t": tbar,
                    "event": "warning",
                    "detail": f"target {n_t} outside the flat window "
                    f"[-{flat_window // 2}, {flat_window // 2}]",
                }
            )

    for _ in range(tbar):  # backward leg
        states.append(apply_kick(states[-1], k, "backward"))
        reference.append(apply_kick(reference[-1], k, "backward"))

    cut_state = None
    leg3_seed = states[-1]
    if cut_halfwidth is not None:
        cut_state = cut_window(states[-1], cut_halfwidth)
        removed = states[-1].norm_squared() - cut_state.norm_squared()
        events.append(
            {
                "t": 2 * tbar,
                "event": "cut",
                "cut_halfwidth": int(cut_halfwidth),
                "removed_mass": float(removed),
                "remaining_mass": float(cut_state.norm_squared()),
            }
        )
        leg3_seed = cut_state

    for _ in range(tbar):  # refocus leg
        leg3_seed = apply_kick(leg3_seed, k, "forward")
        states.append(leg3_seed)
        reference.append(apply_kick(reference[-1], k, "forward"))

    return SearchRecord(
        params=params,
        target=None if n_t is None else int(n_t),
        strategy=strategy,
        cut_halfwidth=None if cut_halfwidth is None else int(cut_halfwidth),
        states=states,
        distributions=[distribution(s) for s in states],
        reference_distributions=[distribution(s) for s in reference],
        cut_state=cut_state,
        events=events,
    )
