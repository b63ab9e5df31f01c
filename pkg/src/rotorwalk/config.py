"""Experiment configuration: flat key=value files plus CLI-flag overrides.

The file format is deliberately minimal and diffable: one `key = value` per
line, `#` comments, blank lines ignored. Flags given on the command line win
over file values; defaults fill the rest.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .defaults import (
    CALIBRATED_K,
    DEFAULT_CUT_HALFWIDTH,
    DEFAULT_FLAT_WINDOW,
    DEFAULT_KICKS_PER_LEG,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
)
from .errors import ConfigError
from .state import WalkParams, auto_window_halfwidth

__all__ = ["ExperimentConfig", "parse_config_file", "build_config"]


@dataclass(frozen=True)
class ExperimentConfig:
    kick_strength: float = CALIBRATED_K
    kick_values: tuple[float, ...] | None = None  # sweep over k when set
    kicks_per_leg: int = DEFAULT_KICKS_PER_LEG
    window: int | str = "auto"
    preset: str | None = None
    coefficients: tuple[float, ...] | None = None
    targets: tuple[int, ...] | None = None
    cut_halfwidth: int | None = DEFAULT_CUT_HALFWIDTH
    strategy: str = "cut"
    flat_window: int = DEFAULT_FLAT_WINDOW
    seed: int = DEFAULT_SEED
    restarts: int = DEFAULT_RESTARTS
    out_dir: str = "out"

    def walk_params(self, kick_strength: float | None = None,
                    kicks_per_leg: int | None = None) -> WalkParams:
        k = self.kick_strength if kick_strength is None else kick_strength
        t = self.kicks_per_leg if kicks_per_leg is None else kicks_per_leg
        if self.window == "auto":
            M = auto_window_halfwidth(k, t)
        else:
            M = int(self.window)
        return WalkParams(kick_strength=k, kicks_per_leg=t, window_halfwidth=M)

    def single_target(self) -> int | None:
        if self.targets is None:
            return None
        if len(self.targets) != 1:
            raise ConfigError("this command takes a single target")
        return self.targets[0]

    def initial_coefficients(self):
        """Preset name or explicit triple; None means command default."""
        if self.preset is not None and self.coefficients is not None:
            raise ConfigError("give either a preset or explicit coefficients")
        if self.preset is not None:
            return self.preset
        if self.coefficients is not None:
            c = np.asarray(self.coefficients, dtype=float)
            return tuple(c / np.linalg.norm(c))
        return None


def _parse_float(value: str, key: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"field {key!r}: not a number: {value!r}") from None


def _parse_int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"field {key!r}: not an integer: {value!r}") from None


def _parse_targets(value: str, key: str = "target") -> tuple[int, ...]:
    value = value.strip()
    if not value:
        raise ConfigError(f"field {key!r}: empty target list")
    if ".." in value:
        lo_s, hi_s = value.split("..", 1)
        lo, hi = _parse_int(lo_s, key), _parse_int(hi_s, key)
        if hi < lo:
            raise ConfigError(f"field {key!r}: empty range {value!r}")
        return tuple(range(lo, hi + 1))
    return tuple(_parse_int(v, key) for v in value.split(","))


def _parse_kicks_value(value: str):
    """k as a single float or a comma list (sweep)."""
    if "," in value:
        return tuple(_parse_float(v, "k") for v in value.split(","))
    return _parse_float(value, "k")


def _parse_window(value: str):
    if value.strip().lower() == "auto":
        return "auto"
    return _parse_int(value, "window")


def _parse_wcut(value: str):
    if value.strip().lower() in ("none", "off"):
        return None
    return _parse_int(value, "wcut")


_FILE_KEYS = {
    "k", "kicks", "window", "preset", "coefficients", "target", "wcut",
    "strategy", "flat_window", "seed", "restarts", "out",
}


def parse_config_file(path: str) -> dict:
    """Read a flat key=value file into an override mapping."""
    raw: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in text.split("=", 1))
        if key not in _FILE_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        raw[key] = value
    return raw


def _apply(cfg: ExperimentConfig, key: str, value: str) -> ExperimentConfig:
    if key == "k":
        parsed = _parse_kicks_value(value)
        if isinstance(parsed, tuple):
            return replace(cfg, kick_values=parsed, kick_strength=parsed[0])
        return replace(cfg, kick_strength=parsed, kick_values=None)
    if key == "kicks":
        return replace(cfg, kicks_per_leg=_parse_int(value, key))
    if key == "window":
        return replace(cfg, window=_parse_window(value))
    if key == "preset":
        return replace(cfg, preset=value.strip())
    if key == "coefficients":
        parts = tuple(_parse_float(v, key) for v in value.split(","))
        if len(parts) != 3:
            raise ConfigError("field 'coefficients': need exactly three values")
        return replace(cfg, coefficients=parts)
    if key == "target":
        return replace(cfg, targets=_parse_targets(value))
    if key == "wcut":
        return replace(cfg, cut_halfwidth=_parse_wcut(value))
    if key == "strategy":
        return replace(cfg, strategy=value.strip())
    if key == "flat_window":
        return replace(cfg, flat_window=_parse_int(value, key))
    if key == "seed":
        return replace(cfg, seed=_parse_int(value, key))
    if key == "restarts":
        return replace(cfg, restarts=_parse_int(value, key))
    if key == "out":
        return replace(cfg, out_dir=value.strip())
    raise ConfigError(f"unknown config key {key!r}")


def _validate(cfg: ExperimentConfig) -> ExperimentConfig:
    if cfg.kick_strength < 0:
        raise ConfigError("field 'k': kick strength must be >= 0")
    if cfg.kick_values is not None and any(k < 0 for k in cfg.kick_values):
        raise ConfigError("field 'k': kick strengths must be >= 0")
    if cfg.kicks_per_leg < 1:
        raise ConfigError("field 'kicks': must be a positive integer")
    if cfg.window != "auto":
        if not isinstance(cfg.window, int) or cfg.window < 1:
            raise ConfigError("field 'window': must be 'auto' or a positive integer")
    if cfg.strategy not in ("cut", "subtract"):
        raise ConfigError("field 'strategy': must be 'cut' or 'subtract'")
    if cfg.cut_halfwidth is not None and cfg.cut_halfwidth < 0:
        raise ConfigError("field 'wcut': must be >= 0 (or 'none')")
    if cfg.flat_window < 0 or cfg.flat_window % 2:
        raise ConfigError("field 'flat_window': must be an even nonnegative integer")
    if cfg.restarts < 1:
        raise ConfigError("field 'restarts': must be >= 1")
    return cfg


def build_config(config_path: str | None, overrides: dict) -> ExperimentConfig:
    """File values first, then command-line overrides, then validation."""
    cfg = ExperimentConfig()
    if config_path is not None:
        for key, value in parse_config_file(config_path).items():
            cfg = _apply(cfg, key, value)
    for key, value in overrides.items():
        if value is not None:
            cfg = _apply(cfg, key, value)
    return _validate(cfg)
