"""Difference curves, envelope peaks and damping-rate fits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import GuessMode, rho_ee_approx
from .errors import AlignmentError, InsufficientDataError
from .params import SystemParams
from .series import TimeSeries

MIN_PEAKS = 3


@dataclass(frozen=True)
class DampingFit:
    rate: float
    intercept: float
    r_squared: float
    n_peaks: int

    def summary(self, prefix="fit_") -> dict:
        return {
            f"{prefix}rate": self.rate,
            f"{prefix}intercept": self.intercept,
            f"{prefix}r_squared": self.r_squared,
            f"{prefix}n_peaks": self.n_peaks,
        }


def _same_grid(a: TimeSeries, b: TimeSeries) -> bool:
    return len(a) == len(b) and math.isclose(a.dt, b.dt, rel_tol=1e-12) and math.isclose(
        a.t0, b.t0, rel_tol=1e-12, abs_tol=1e-12 * a.dt
    )


def difference_series(a: TimeSeries, b: TimeSeries, label="delta") -> TimeSeries:
    """Pointwise ``a - b``; the grids must match exactly (no resampling)."""
    if not _same_grid(a, b):
        raise AlignmentError(
            f"grids differ: (t0={a.t0}, dt={a.dt}, n={len(a)}) vs (t0={b.t0}, dt={b.dt}, n={len(b)})"
        )
    return TimeSeries(t0=a.t0, dt=a.dt, values=a.values - b.values, label=label)


def envelope_peaks(series: TimeSeries, baseline: float = 0.0) -> list[tuple[float, float]]:
    """Local maxima of ``|value - baseline|`` as ``(t, amplitude)`` pairs.

    A sample is a peak when it is strictly above its left neighbour and not
    below its right one, so plateaus resolve to their first sample.
    """
    x = np.abs(series.values - baseline)
    if x.size < 3:
        raise InsufficientDataError("need at least 3 samples to locate peaks")
    mid = x[1:-1]
    idx = np.flatnonzero((mid > x[:-2]) & (mid >= x[2:])) + 1
    if idx.size < MIN_PEAKS:
        raise InsufficientDataError(f"found {idx.size} envelope peaks, need {MIN_PEAKS}")
    t = series.times
    return [(float(t[i]), float(x[i])) for i in idx]


def _loglinear_fit(t, amp) -> DampingFit:
    t = np.asarray(t, dtype=float)
    amp = np.asarray(amp, dtype=float)
    keep = amp > 0
    t, amp = t[keep], amp[keep]
    if t.size < MIN_PEAKS:
        raise InsufficientDataError(f"{t.size} positive envelope points, need {MIN_PEAKS}")
    y = np.log(amp)
    slope, intercept = np.polyfit(t, y, 1)
    resid = y - (slope * t + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return DampingFit(rate=-float(slope), intercept=float(intercept), r_squared=r2, n_peaks=int(t.size))


def fit_damping_rate(series: TimeSeries, baseline: float = 0.0, window=None) -> DampingFit:
    """Exponential envelope rate from a least-squares line through log peak heights."""
    if window is not None:
        series = series.window(*window)
    peaks = envelope_peaks(series, baseline)
    t, amp = zip(*peaks)
    return _loglinear_fit(t, amp)


def revival_window(params: SystemParams, count: int = 2) -> list[tuple[float, float]]:
    """Heuristic intervals around the first ``count`` revival times 2 pi k sqrt(n)/g."""
    if params.alpha_sq <= 0 or params.coupling <= 0:
        return []
    period = 2.0 * math.pi * math.sqrt(params.alpha_sq) / params.coupling
    half = period / 4.0
    return [(k * period - half, k * period + half) for k in range(1, count + 1)]


def max_abs(series: TimeSeries) -> tuple[float, float]:
    """``(t, value)`` at the first sample with the largest magnitude."""
    if len(series) == 0:
        raise InsufficientDataError("empty series")
    i = int(np.argmax(np.abs(series.values)))
    return float(series.times[i]), float(series.values[i])


def windowed_max_abs(series: TimeSeries, windows) -> list[tuple[float, float]]:
    return [max_abs(series.window(lo, hi)) for lo, hi in windows]


def _revival_peaks(series: TimeSeries, windows, baseline):
    peaks = []
    for lo, hi in windows:
        w = series.window(lo, hi)
        x = np.abs(w.values - baseline)
        i = int(np.argmax(x))
        peaks.append((float(w.times[i]), float(x[i])))
    return peaks


def revival_damping_rate(
    series: TimeSeries, params: SystemParams, baseline: float = 0.5, remove_dephasing: bool = True
) -> float:
    """Decay rate implied by the largest excursions in revival windows 1 and 2.

    Revivals also shrink without any dissipation because fewer manifolds
    rephase each time. With ``remove_dephasing`` the same ratio measured on
    the decay-free collapse-revival curve is subtracted, leaving the
    dissipative part. Diagnostic only.
    """
    windows = revival_window(params, 2)
    if len(windows) < 2:
        raise InsufficientDataError("no revivals for this field state")
    (t1, a1), (t2, a2) = _revival_peaks(series, windows, baseline)
    rate = math.log(a1 / a2) / (t2 - t1)
    if remove_dephasing:
        ref = TimeSeries(
            series.t0, series.dt, rho_ee_approx(series.times, params, GuessMode("explicit", 0.0))
        )
        (r1, b1), (r2, b2) = _revival_peaks(ref, windows, 0.5)
        rate -= math.log(b1 / b2) / (r2 - r1)
    return rate
