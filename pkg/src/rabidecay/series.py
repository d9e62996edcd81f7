"""Uniformly sampled trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

LABELS = (
    "semiclassical-analytic",
    "semiclassical-ode",
    "quantum-ladder",
    "quantum-analytic-b0",
    "approx",
)


@dataclass
class TimeSeries:
    """Samples ``values[k]`` taken at ``t0 + k * dt``.

    ``label`` names the model that produced the data (one of ``LABELS``,
    or a free-form tag such as ``delta`` for difference curves). ``meta``
    carries per-run diagnostics like final trace accounting.
    """

    t0: float
    dt: float
    values: np.ndarray
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1:
            raise ConfigError("TimeSeries values must be one-dimensional")
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not np.all(np.isfinite(self.values)):
            raise ConfigError("TimeSeries values must be finite")

    def __len__(self):
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @classmethod
    def sample(cls, func, t_end, dt, label="", t0=0.0):
        """Evaluate a vectorized ``func(t)`` on the grid ``t0, t0+dt, ..., t_end``."""
        n = int(round((t_end - t0) / dt))
        t = t0 + dt * np.arange(n + 1)
        return cls(t0=t0, dt=dt, values=func(t), label=label)

    def window(self, lo, hi) -> "TimeSeries":
        """Samples with ``lo <= t <= hi`` (grid spacing preserved)."""
        t = self.times
        idx = np.flatnonzero((t >= lo) & (t <= hi))
        if idx.size == 0:
            raise ConfigError(f"window [{lo}, {hi}] contains no samples")
        return TimeSeries(
            t0=float(t[idx[0]]),
            dt=self.dt,
            values=self.values[idx[0] : idx[-1] + 1],
            label=self.label,
        )
