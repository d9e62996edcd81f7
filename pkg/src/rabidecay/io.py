"""CSV trajectories and JSON manifests.

Trajectory files have a ``t,value`` header and one row per sample. Lines
starting with ``#`` are comments; a ``# grid`` line records the exact grid
so that a file re-reads into the same :class:`TimeSeries`.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .series import TimeSeries


def _fmt(x: float) -> str:
    return repr(float(x))


def write_csv(path, series: TimeSeries, trailer: dict | None = None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        f"# label={series.label}",
        f"# grid t0={_fmt(series.t0)} dt={_fmt(series.dt)} n={len(series)}",
        "t,value",
    ]
    lines += [f"{_fmt(t)},{_fmt(v)}" for t, v in zip(series.times, series.values)]
    if trailer:
        lines.append("# " + " ".join(f"{k}={_fmt(v) if isinstance(v, float) else v}" for k, v in trailer.items()))
    path.write_text("\n".join(lines) + "\n")
    return path


def _parse_comment(line: str) -> dict:
    out = {}
    for tok in line.lstrip("#").split():
        if "=" in tok:
            k, v = tok.split("=", 1)
            out[k] = v
    return out


def read_csv(path) -> TimeSeries:
    path = Path(path)
    meta = {}
    t, v = [], []
    header_seen = False
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            meta.update(_parse_comment(line))
            continue
        if not header_seen:
            if line.strip() != "t,value":
                raise ConfigError(f"{path}: expected header 't,value', got {line!r}")
            header_seen = True
            continue
        a, b = line.split(",")
        t.append(float(a))
        v.append(float(b))
    if not v:
        raise ConfigError(f"{path}: no samples")
    if "t0" in meta and "dt" in meta:
        t0, dt = float(meta["t0"]), float(meta["dt"])
    elif len(t) > 1:
        t0, dt = t[0], (t[-1] - t[0]) / (len(t) - 1)
    else:
        t0, dt = t[0], 1.0
    extra = {k: val for k, val in meta.items() if k not in ("t0", "dt", "n", "label")}
    return TimeSeries(t0=t0, dt=dt, values=np.array(v), label=meta.get("label", ""), meta=extra)


def write_json(path, data: dict):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
