"""Deterministic text serialization.

All floats print with 17 significant digits, enough for a float64 to survive
a write/read round trip bit exactly. Row orders are fixed, newlines are
always "\\n", and repeated writes of identical data are byte identical.
"""

from __future__ import annotations

import json
import os

from .errors import ConfigError
from .state import Distribution

__all__ = [
    "fmt_float",
    "write_timeseries_csv",
    "read_timeseries_csv",
    "write_json",
    "write_sweep_csv",
    "write_series_csv",
]

TIMESERIES_HEADER = "t,n,probability"


def fmt_float(x: float) -> str:
    return "%.17g" % float(x)


def _write_text(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_timeseries_csv(path: str, dists: list[Distribution] | dict[int, Distribution]) -> None:
    """Rows (t, n, probability), sorted by (t, n)."""
    if isinstance(dists, dict):
        items = sorted(dists.items())
    else:
        items = list(enumerate(dists))
    lines = [TIMESERIES_HEADER]
    for t, dist in items:
        probs = dist.probs
        for i, n in enumerate(dist.momenta):
            lines.append(f"{t},{n},{fmt_float(probs[i])}")
    _write_text(path, "\n".join(lines) + "\n")


def read_timeseries_csv(path: str) -> dict[int, dict[int, float]]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != TIMESERIES_HEADER:
            raise ConfigError(f"unexpected CSV header {header!r} in {path}")
        out: dict[int, dict[int, float]] = {}
        for line in fh:
            line = line.strip()
            if not line:
                continue
            t_s, n_s, p_s = line.split(",")
            out.setdefault(int(t_s), {})[int(n_s)] = float(p_s)
    return out


def _json_default(obj):
    raise TypeError(f"not JSON serializable: {type(obj)}")


def write_json(path: str, payload: dict) -> None:
    """Fixed key order (insertion), two-space indent, trailing newline."""
    _write_text(path, json.dumps(payload, indent=2, default=_json_default) + "\n")


_SWEEP_COLUMNS = ("n_t", "n_hat_flank", "flank_ok", "n_hat_refocus",
                  "refocus_ok", "weight")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def write_sweep_csv(path: str, rows: list[dict], with_k: bool = False) -> None:
    """Pinned sweep schema; a leading k column only for multi-k sweeps."""
    columns = (("k",) if with_k else ()) + _SWEEP_COLUMNS
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(row.get(c)) for c in columns))
    _write_text(path, "\n".join(lines) + "\n")


def write_series_csv(path: str, header: str, rows: list[tuple]) -> None:
    """Generic numeric series; ints verbatim, floats at full precision."""
    lines = [header]
    for row in rows:
        lines.append(",".join(
            str(v) if isinstance(v, int) else fmt_float(v) for v in row
        ))
    _write_text(path, "\n".join(lines) + "\n")
