"""Momentum-ladder state containers and window bookkeeping."""

import math

import numpy as np
import pytest

from rotorwalk import (
    PERIOD,
    ConfigError,
    Distribution,
    MomentumState,
    WalkParams,
    apply_kick,
    auto_window_halfwidth,
    distribution,
    new_basis_state,
    subtract_reference,
    superpose,
)

from oracles import quad_matrix_element


def test_basis_state_basics():
    s = new_basis_state(0, 4)
    assert s.amplitudes.shape == (9,)
    assert s.amplitude(0) == 1.0 + 0.0j
    assert s.amplitude(3) == 0.0
    assert s.norm_squared() == pytest.approx(1.0, abs=0.0)
    assert list(s.momenta) == list(range(-4, 5))


def test_basis_state_off_center():
    s = new_basis_state(-2, 4)
    assert s.amplitude(-2) == 1.0
    assert s.index(-2) == 2


def test_index_out_of_window():
    s = new_basis_state(0, 3)
    with pytest.raises(ConfigError):
        s.index(4)
    with pytest.raises(ConfigError):
        s.amplitude(-4)


def test_amplitudes_are_readonly():
    s = new_basis_state(0, 3)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 5.0


def test_superpose_normalizes():
    s = superpose({-1: 1.0, 0: 1.0, 1: 1.0}, 5)
    assert s.norm_squared() == pytest.approx(1.0, abs=1e-15)
    assert s.amplitude(0) == pytest.approx(1.0 / math.sqrt(3.0))


def test_superpose_zero_norm_rejected():
    with pytest.raises(ConfigError):
        superpose({0: 0.0}, 3)


def test_overlap_is_hermitian_inner_product():
    a = superpose({0: 1.0, 1: 1.0j}, 3)
    b = superpose({0: 1.0}, 3)
    assert a.overlap(b) == pytest.approx(np.conj(1.0 / math.sqrt(2.0)))


def test_distribution_sums_probabilities():
    s = superpose({-1: 1.0, 2: 1.0}, 4)
    d = distribution(s)
    assert d.prob(-1) == pytest.approx(0.5)
    assert d.prob(2) == pytest.approx(0.5)
    assert d.total_mass == pytest.approx(1.0)


def test_distribution_rejects_negative_probs():
    with pytest.raises(ConfigError):
        Distribution(probs=np.array([0.5, -0.1, 0.6]), window_halfwidth=1)


def test_subtract_reference_clamps_at_zero():
    a = Distribution(probs=np.array([0.2, 0.5, 0.3]), window_halfwidth=1)
    b = Distribution(probs=np.array([0.3, 0.4, 0.3]), window_halfwidth=1)
    d = subtract_reference(a, b)
    assert d.prob(-1) == 0.0
    assert d.prob(0) == pytest.approx(0.1)
    assert d.prob(1) == 0.0


def test_subtract_reference_window_mismatch():
    a = Distribution(probs=np.ones(3) / 3.0, window_halfwidth=1)
    b = Distribution(probs=np.ones(5) / 5.0, window_halfwidth=2)
    with pytest.raises(ConfigError):
        subtract_reference(a, b)


def test_auto_window_halfwidth_rule():
    assert auto_window_halfwidth(1.1, 45) == math.ceil(3 * 1.1 * 45) + 16
    assert auto_window_halfwidth(0.0, 10) == 16


def test_walk_params_validation():
    p = WalkParams(kick_strength=1.1, kicks_per_leg=15, window_halfwidth=66)
    assert p.period == PERIOD == pytest.approx(4.0 * math.pi, abs=0.0)
    with pytest.raises(ConfigError):
        WalkParams(kick_strength=-0.5, kicks_per_leg=15, window_halfwidth=66)
    with pytest.raises(ConfigError):
        WalkParams(kick_strength=1.0, kicks_per_leg=0, window_halfwidth=66)
    with pytest.raises(ConfigError):
        WalkParams(kick_strength=1.0, kicks_per_leg=15, window_halfwidth=66,
                   period=2.0 * math.pi)
    with pytest.raises(ConfigError):
        # window too small for the ballistic cone
        WalkParams(kick_strength=1.0, kicks_per_leg=15, window_halfwidth=10)


def test_walk_params_accepts_numpy_integers():
    p = WalkParams(kick_strength=np.float64(1.1),
                   kicks_per_leg=np.int64(15),
                   window_halfwidth=np.int64(66))
    assert p.kicks_per_leg == 15


def test_single_kick_matches_quadrature_oracle():
    # one kick of strength 1 on the origin state, checked element by element
    s = new_basis_state(0, 30)
    out = apply_kick(s, 1.0, "forward")
    for n in range(-6, 7):
        want = quad_matrix_element(n, 0, 1.0, "forward")
        assert out.amplitude(n) == pytest.approx(want, abs=1e-12)
