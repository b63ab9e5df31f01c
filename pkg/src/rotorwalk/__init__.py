"""Quantum search on the resonant kicked rotor.

A one-dimensional continuous-time-style quantum walk emerges from the
atom-optics kicked rotor driven exactly at the principal quantum resonance.
This package simulates that walk on the integer momentum ladder and runs a
three-leg search protocol (spread, mark and refocus, suppress and reveal)
that locates a marked momentum class from one-shot measurement statistics.
"""

from .analysis import (
    ScalingReport,
    fit_power_law,
    one_shot_hitting_time,
    polya_partial_sum,
    survival_probability,
    width,
    width_slope,
)
from .bessel import bessel_band, bessel_j, bessel_j0
from .config import ExperimentConfig, build_config, parse_config_file
from .defaults import (
    CALIBRATED_K,
    DEFAULT_CUT_HALFWIDTH,
    DEFAULT_FLAT_WINDOW,
    DEFAULT_HITTING_THRESHOLD,
    DEFAULT_KICKS_PER_LEG,
    DEFAULT_RESTARTS,
    DEFAULT_SEARCH_PRESET,
    DEFAULT_SEED,
)
from .errors import ConfigError, EstimationError, RotorWalkError, TruncationError
from .extract import Estimate, extract_flank, extract_refocus, success_sweep
from .prepare import (
    PreparationResult,
    canonical_states,
    coefficients_for,
    flatness_cost,
    flatness_cost_of,
    optimize_initial_state,
    prepared_distribution,
)
from .propagator import (
    KickOperator,
    apply_kick,
    apply_kick_spectral,
    evolve,
    kick_bandwidth,
    kick_kernel,
    kick_matrix_element,
)
from .search import STRATEGIES, SearchRecord, cut_window, mark_state, run_search
from .state import (
    PERIOD,
    Distribution,
    MomentumState,
    WalkParams,
    auto_window_halfwidth,
    distribution,
    new_basis_state,
    subtract_reference,
    superpose,
)

__version__ = "0.1.0"

__all__ = [
    "PERIOD",
    "CALIBRATED_K",
    "DEFAULT_CUT_HALFWIDTH",
    "DEFAULT_FLAT_WINDOW",
    "DEFAULT_HITTING_THRESHOLD",
    "DEFAULT_KICKS_PER_LEG",
    "DEFAULT_RESTARTS",
    "DEFAULT_SEARCH_PRESET",
    "DEFAULT_SEED",
    "ConfigError",
    "Distribution",
    "Estimate",
    "EstimationError",
    "ExperimentConfig",
    "KickOperator",
    "MomentumState",
    "PreparationResult",
    "RotorWalkError",
    "STRATEGIES",
    "ScalingReport",
    "SearchRecord",
    "TruncationError",
    "WalkParams",
    "apply_kick",
    "apply_kick_spectral",
    "auto_window_halfwidth",
    "bessel_band",
    "bessel_j",
    "bessel_j0",
    "build_config",
    "canonical_states",
    "coefficients_for",
    "cut_window",
    "distribution",
    "evolve",
    "extract_flank",
    "extract_refocus",
    "fit_power_law",
    "flatness_cost",
    "flatness_cost_of",
    "kick_bandwidth",
    "kick_kernel",
    "kick_matrix_element",
    "mark_state",
    "new_basis_state",
    "one_shot_hitting_time",
    "optimize_initial_state",
    "parse_config_file",
    "polya_partial_sum",
    "prepared_distribution",
    "run_search",
    "subtract_reference",
    "success_sweep",
    "superpose",
    "survival_probability",
    "width",
    "width_slope",
]
