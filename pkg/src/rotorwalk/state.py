"""States and distributions on the integer momentum lattice.

A walker lives on momenta n in [-M, M] (dimensionless two-photon-recoil
units). Amplitude vectors are dense, contiguous, centered at n = 0, and value
immutable: every operation returns a new state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import ConfigError

__all__ = [
    "PERIOD",
    "MomentumState",
    "Distribution",
    "WalkParams",
    "auto_window_halfwidth",
    "new_basis_state",
    "superpose",
    "distribution",
    "subtract_reference",
]

# Resonant kicking period: free evolution exp(-i tau n^2 / 2) is the identity
# on integers exactly at tau = 4 pi, which is the only period supported.
PERIOD = 4.0 * math.pi

# Unit-norm and mass bookkeeping tolerance.
NORM_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class MomentumState:
    """Complex amplitudes psi_n over n in [-M, M]."""

    amplitudes: np.ndarray
    window_halfwidth: int

    def __post_init__(self) -> None:
        M = self.window_halfwidth
        if M < 1:
            raise ConfigError("window halfwidth must be a positive integer")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 * M + 1,):
            raise ConfigError(
                f"amplitude vector must have 2M+1 = {2 * M + 1} entries, "
                f"got {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @property
    def momenta(self) -> np.ndarray:
        M = self.window_halfwidth
        return np.arange(-M, M + 1)

    def index(self, n: int) -> int:
        M = self.window_halfwidth
        if abs(n) > M:
            raise ConfigError(f"momentum {n} outside window [-{M}, {M}]")
        return n + M

    def amplitude(self, n: int) -> complex:
        return complex(self.amplitudes[self.index(n)])

    def norm_squared(self) -> float:
        a = self.amplitudes
        return float(np.real(np.vdot(a, a)))

    def overlap(self, other: "MomentumState") -> complex:
        if other.window_halfwidth != self.window_halfwidth:
            raise ConfigError("window mismatch in overlap")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class Distribution:
    """Probability-by-momentum snapshot; mass may be < 1 after cuts."""

    probs: np.ndarray
    window_halfwidth: int
    total_mass: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        M = self.window_halfwidth
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (2 * M + 1,):
            raise ConfigError("probability vector length must be 2M+1")
        if np.any(p < 0):
            raise ConfigError("negative probability entry")
        object.__setattr__(self, "probs", _readonly(p))
        mass = float(p.sum())
        if self.total_mass is None:
            object.__setattr__(self, "total_mass", mass)
        elif abs(mass - self.total_mass) > NORM_TOL:
            raise ConfigError("total_mass inconsistent with probabilities")

    @property
    def momenta(self) -> np.ndarray:
        M = self.window_halfwidth
        return np.arange(-M, M + 1)

    def prob(self, n: int) -> float:
        M = self.window_halfwidth
        if abs(n) > M:
            raise ConfigError(f"momentum {n} outside window [-{M}, {M}]")
        return float(self.probs[n + M])


def auto_window_halfwidth(kick_strength: float, kicks_per_leg: int) -> int:
    """Smallest admissible window for a protocol of 3 legs of t kicks."""
    return math.ceil(3.0 * kick_strength * kicks_per_leg) + 16


@dataclass(frozen=True)
class WalkParams:
    """Walk configuration: kick strength k, kicks per leg, window, period."""

    kick_strength: float
    kicks_per_leg: int
    window_halfwidth: int
    period: float = PERIOD

    def __post_init__(self) -> None:
        try:
            k = float(self.kick_strength)
        except (TypeError, ValueError):
            raise ConfigError("kick strength must be a real number") from None
        if not math.isfinite(k):
            raise ConfigError("kick strength must be finite")
        if k < 0:
            raise ConfigError("kick strength must be >= 0")
        t = self.kicks_per_leg
        if isinstance(t, bool) or int(t) != t or t < 1:
            raise ConfigError("kicks per leg must be a positive integer")
        if self.period != PERIOD:
            raise ConfigError("only the resonant period 4*pi is supported")
        need = auto_window_halfwidth(k, t)
        if self.window_halfwidth < need:
            raise ConfigError(
                f"window halfwidth {self.window_halfwidth} below the "
                f"truncation-safe minimum {need} for k={k}, t={t}"
            )


def new_basis_state(n0: int, window_halfwidth: int) -> MomentumState:
    """Single momentum state |n0>."""
    M = window_halfwidth
    if abs(n0) > M:
        raise ConfigError(f"basis momentum {n0} outside window [-{M}, {M}]")
    amps = np.zeros(2 * M + 1, dtype=complex)
    amps[n0 + M] = 1.0
    return MomentumState(amps, M)


def superpose(
    coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]],
    window_halfwidth: int,
) -> MomentumState:
    """Normalized superposition sum_n c_n |n> from (n, c_n) pairs."""
    M = window_halfwidth
    items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
    amps = np.zeros(2 * M + 1, dtype=complex)
    for n, c in items:
        if abs(n) > M:
            raise ConfigError(f"momentum {n} outside window [-{M}, {M}]")
        amps[n + M] += c
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ConfigError("superposition has zero norm")
    return MomentumState(amps / norm, M)


def distribution(state: MomentumState) -> Distribution:
    """|psi_n|^2 with total-mass bookkeeping."""
    p = np.abs(state.amplitudes) ** 2
    return Distribution(p, state.window_halfwidth)


def subtract_reference(dist: Distribution, ref: Distribution) -> Distribution:
    """Pointwise max(0, dist - ref); mass recomputed."""
    if dist.window_halfwidth != ref.window_halfwidth:
        raise ConfigError("window mismatch in subtract_reference")
    p = np.maximum(0.0, dist.probs - ref.probs)
    return Distribution(p, dist.window_halfwidth)
