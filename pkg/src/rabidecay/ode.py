"""Fixed-step classical Runge-Kutta integration over flat real vectors.

Both physics engines pack their state into a 1-D float array and hand a
``rhs(t, y)`` callable to this module. The step size is never adapted; an
optional step-doubling estimate is reported for information only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DivergenceError
from .series import TimeSeries


@dataclass(frozen=True)
class IntegratorOptions:
    dt: float
    t_end: float
    sample_stride: int = 1
    check_stride: int = 100
    estimate_error: bool = False

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not self.t_end >= 0:
            raise ConfigError(f"t_end must be nonnegative, got {self.t_end}")
        if self.sample_stride < 1 or self.check_stride < 1:
            raise ConfigError("strides must be >= 1")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


def rk4_step(rhs, y, t, dt):
    """One classical 4-stage Runge-Kutta step of ``y' = rhs(t, y)``."""
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1)
    k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2)
    k4 = rhs(t + dt, y + dt * k3)
    y_new = y + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
    if not np.all(np.isfinite(y_new)):
        raise DivergenceError(f"non-finite state after step at t={t + dt:g}", t=t + dt)
    return y_new


def step_doubling_error(rhs, y, t, dt):
    """Max-norm difference between one full step and two half steps, scaled by 1/15."""
    full = rk4_step(rhs, y, t, dt)
    half = rk4_step(rhs, rk4_step(rhs, y, t, 0.5 * dt), t + 0.5 * dt, 0.5 * dt)
    return float(np.max(np.abs(half - full))) / 15.0


def iterate(rhs, y0, opts: IntegratorOptions, check=None, t0=0.0):
    """Yield ``(step, t, y)`` at every sampled step, starting with the initial state.

    ``check(t, y)`` is called every ``opts.check_stride`` steps and at the
    final step; it should raise :class:`DivergenceError` on violation.
    """
    y = np.array(y0, dtype=float)
    n = opts.n_steps
    if check is not None:
        check(t0, y)
    yield 0, t0, y
    for k in range(1, n + 1):
        t_prev = t0 + (k - 1) * opts.dt
        y = rk4_step(rhs, y, t_prev, opts.dt)
        t = t0 + k * opts.dt
        if check is not None and (k % opts.check_stride == 0 or k == n):
            check(t, y)
        if k % opts.sample_stride == 0:
            yield k, t, y


def integrate(rhs, y0, opts: IntegratorOptions, observer, label="", check=None, t0=0.0):
    """Integrate and record ``observer(y)`` at every sampled step.

    Returns a :class:`TimeSeries` on the grid ``t0 + k * dt * sample_stride``.
    ``meta["final_state"]`` holds the state at the last sampled step and, with
    ``opts.estimate_error``, ``meta["step_error_estimate"]`` the largest
    step-doubling estimate seen at sampled steps.
    """
    values = []
    y_last = None
    err = 0.0
    for _, t, y in iterate(rhs, y0, opts, check=check, t0=t0):
        values.append(float(observer(y)))
        y_last = y
        if opts.estimate_error:
            err = max(err, step_doubling_error(rhs, y, t, opts.dt))
    meta = {"final_state": y_last}
    if opts.estimate_error:
        meta["step_error_estimate"] = err
    return TimeSeries(
        t0=t0,
        dt=opts.dt * opts.sample_stride,
        values=np.array(values),
        label=label,
        meta=meta,
    )
