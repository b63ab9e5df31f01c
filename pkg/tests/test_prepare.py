"""Initial-state presets and flatness optimization."""

import numpy as np
import pytest

from rotorwalk import (
    CALIBRATED_K,
    ConfigError,
    Distribution,
    PreparationResult,
    WalkParams,
    auto_window_halfwidth,
    canonical_states,
    coefficients_for,
    flatness_cost,
    flatness_cost_of,
    optimize_initial_state,
    prepared_distribution,
)


def _params(k=CALIBRATED_K, t=15):
    return WalkParams(kick_strength=k, kicks_per_leg=t,
                      window_halfwidth=auto_window_halfwidth(k, 3 * t))


def test_presets_are_normalized():
    states = canonical_states()
    assert set(states) == {"b", "c", "d"}
    for c in states.values():
        assert c.shape == (3,)
        assert np.sum(np.abs(c) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_preset_b_is_uniform_triple():
    c = coefficients_for("b")
    assert np.allclose(c, np.full(3, 1.0 / np.sqrt(3.0)), atol=1e-15)


def test_preset_c_has_sign_flip():
    c = coefficients_for("c")
    assert c[0] < 0 < c[1]
    assert c[1] == pytest.approx(c[2] * np.sqrt(3.0) / 1.0, rel=1.0)  # shape only


def test_unknown_preset_rejected():
    with pytest.raises(ConfigError):
        coefficients_for("z")


def test_flatness_cost_of_uniform_is_zero():
    N = 10
    M = 20
    probs = np.zeros(2 * M + 1)
    level = 1.0 / (N + 1)
    for n in range(-N // 2, N // 2 + 1):
        probs[n + M] = level
    d = Distribution(probs=probs, window_halfwidth=M)
    assert flatness_cost_of(d, N) == pytest.approx(0.0, abs=1e-15)


def test_flatness_cost_matches_cost_of():
    p = _params()
    c = coefficients_for("b")
    direct = flatness_cost(c, p, 30)
    via_dist = flatness_cost_of(prepared_distribution(c, p), 30)
    assert direct == pytest.approx(via_dist, abs=0.0)


def test_preset_d_beats_preset_b_at_calibrated_k():
    p = _params()
    assert flatness_cost(coefficients_for("d"), p, 30) < flatness_cost(
        coefficients_for("b"), p, 30
    )


def test_cost_is_global_phase_invariant():
    p = _params()
    c = coefficients_for("d").astype(complex)
    rotated = c * np.exp(1j * 0.83)
    assert flatness_cost(rotated, p, 30) == pytest.approx(
        flatness_cost(c, p, 30), abs=1e-14
    )


def test_gauge_twin_has_identical_distribution():
    # flipping the sign of every odd-n coefficient relabels theta by pi,
    # which no momentum measurement can see
    p = _params()
    c = coefficients_for("d")
    twin = c * np.array([-1.0, 1.0, -1.0])
    d1 = prepared_distribution(c, p)
    d2 = prepared_distribution(twin, p)
    assert np.max(np.abs(d1.probs - d2.probs)) < 1e-15


def test_optimizer_finds_symmetric_flat_state():
    p = _params()
    result = optimize_initial_state(p, 30, restarts=4, seed=0)
    c = np.asarray(result.coefficients, dtype=float)
    assert result.converged
    assert np.sum(c**2) == pytest.approx(1.0, abs=1e-12)
    # canonical gauge: central component positive, symmetric wings
    assert c[1] > 0
    assert abs(c[0] - c[2]) < 1e-4
    reference = np.array([0.4815, 0.7323, 0.4815])
    assert np.max(np.abs(c - reference)) < 0.05
    assert result.cost <= flatness_cost(coefficients_for("b"), p, 30)


def test_optimizer_is_seed_deterministic():
    p = _params()
    r1 = optimize_initial_state(p, 30, restarts=2, seed=11)
    r2 = optimize_initial_state(p, 30, restarts=2, seed=11)
    assert np.array_equal(np.asarray(r1.coefficients),
                          np.asarray(r2.coefficients))
    assert r1.cost == r2.cost


def test_optimizer_complex_mode_runs():
    p = _params()
    result = optimize_initial_state(p, 30, restarts=2, seed=3,
                                    complex_coefficients=True)
    c = np.asarray(result.coefficients, dtype=complex)
    assert np.sum(np.abs(c) ** 2) == pytest.approx(1.0, abs=1e-12)
    assert abs(c[1].imag) < 1e-12  # canonical gauge keeps c_0 real
    assert result.cost <= flatness_cost(coefficients_for("b"), p, 30) + 1e-12


def test_degenerate_flat_window():
    p = _params()
    cost = flatness_cost(coefficients_for("b"), p, 0)
    assert np.isfinite(cost)
    result = optimize_initial_state(p, 0, restarts=1, seed=0)
    assert np.isfinite(result.cost)


def test_flat_window_must_be_even_nonnegative():
    p = _params()
    with pytest.raises(ConfigError):
        flatness_cost(coefficients_for("b"), p, 7)
    with pytest.raises(ConfigError):
        flatness_cost(coefficients_for("b"), p, -2)


def test_preparation_result_requires_unit_norm():
    with pytest.raises(ConfigError):
        PreparationResult(coefficients=np.array([1.0, 1.0, 1.0]),
                          cost=0.1, flat_window=30, kicks=15)
