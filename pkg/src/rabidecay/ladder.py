"""Fully quantized drive: the atom coupled to a single field mode.

Only the elements reachable from ``|g> x |alpha>`` that feed populations are
tracked: the populations of ``|g,n>`` and ``|e,n>`` and the manifold
coherences ``rho_{g n+1, e n}``. Spontaneous decay ``|e,n> -> |g,n>``
(rate ``b*gamma``) moves population one manifold down and eventually into
the sink ``|g,0>``; the remainder ``(1-b)*gamma`` is booked as external leak.

Packed vector layout for ``N = n_max``::

    [0, N]            pop_g[0..N]
    [N+1, 2N+1]       pop_e[0..N]
    [2N+2, 3N+1]      Re coh[0..N-1]
    [3N+2, 4N+1]      Im coh[0..N-1]
    [4N+2]            external_leak
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy
from scipy.stats import poisson

from .errors import ConfigError, DivergenceError, InvalidStateError, RegimeError, TruncationError
from .ode import IntegratorOptions, integrate, iterate
from .params import SystemParams
from .series import TimeSeries

TRUNCATION_TOL = 1e-12
TRACE_TOL = 1e-6
POSITIVITY_TOL = 1e-9


def coherent_weights(alpha_sq: float, n_max: int, tol: float = TRUNCATION_TOL) -> np.ndarray:
    """Poisson photon-number distribution p_0..p_{n_max} of a coherent state."""
    if alpha_sq < 0:
        raise ConfigError(f"alpha_sq must be nonnegative, got {alpha_sq}")
    tail = float(poisson.sf(n_max, alpha_sq)) if alpha_sq > 0 else 0.0
    if tail > tol:
        suggested = int(poisson.isf(tol, alpha_sq)) + 1
        raise TruncationError(
            f"n_max={n_max} drops tail mass {tail:.3g} > {tol:g}; use n_max >= {suggested}",
            suggested_n_max=suggested,
        )
    n = np.arange(n_max + 1)
    return np.exp(xlogy(n, alpha_sq) - alpha_sq - gammaln(n + 1))


@dataclass
class LadderState:
    pop_g: np.ndarray
    pop_e: np.ndarray
    coh: np.ndarray
    external_leak: float = 0.0

    @property
    def n_max(self) -> int:
        return self.pop_g.size - 1

    @property
    def trace(self) -> float:
        return float(self.pop_g.sum() + self.pop_e.sum())

    @property
    def rho_ee(self) -> float:
        return float(self.pop_e.sum())

    @classmethod
    def coherent(cls, params: SystemParams) -> "LadderState":
        n = params.truncation
        return cls(
            pop_g=coherent_weights(params.alpha_sq, n),
            pop_e=np.zeros(n + 1),
            coh=np.zeros(n, dtype=complex),
        )

    def to_vector(self) -> np.ndarray:
        return np.concatenate(
            [self.pop_g, self.pop_e, self.coh.real, self.coh.imag, [self.external_leak]]
        ).astype(float)

    @classmethod
    def from_vector(cls, y) -> "LadderState":
        y = np.asarray(y, dtype=float)
        n = (y.size - 3) // 4
        if 4 * n + 3 != y.size:
            raise ConfigError(f"vector length {y.size} does not match any truncation")
        return cls(
            pop_g=y[: n + 1].copy(),
            pop_e=y[n + 1 : 2 * n + 2].copy(),
            coh=y[2 * n + 2 : 3 * n + 2] + 1j * y[3 * n + 2 : 4 * n + 2],
            external_leak=float(y[4 * n + 2]),
        )


def make_ladder_rhs(params: SystemParams, n_max: int | None = None):
    """Return ``rhs(t, y)`` on the packed layout for the given truncation."""
    n = params.truncation if n_max is None else n_max
    g, gamma, b = params.coupling, params.gamma, params.branching
    # coupling of manifold k = {|g,k+1>, |e,k>}
    s = g * np.sqrt(np.arange(1, n + 1))
    i_e = n + 1
    i_re = 2 * n + 2
    i_im = 3 * n + 2

    def rhs(t, y):
        pg = y[:i_e]
        pe = y[i_e:i_re]
        re = y[i_re:i_im]
        im = y[i_im : 4 * n + 2]
        out = np.empty_like(y)
        flow = 2.0 * s * im  # |g,k+1> -> |e,k>
        dpg = out[:i_e]
        dpg[:] = b * gamma * pe
        dpg[1:] -= flow
        dpe = out[i_e:i_re]
        dpe[:] = -gamma * pe
        dpe[:n] += flow
        out[i_re:i_im] = -0.5 * gamma * re
        out[i_im : 4 * n + 2] = s * (pg[1:] - pe[:n]) - 0.5 * gamma * im
        out[4 * n + 2] = (1.0 - b) * gamma * pe.sum()
        return out

    return rhs


def ladder_rhs(state: LadderState, params: SystemParams) -> LadderState:
    """Time derivative of ``state`` (truncation taken from the state)."""
    y = state.to_vector()
    if not np.all(np.isfinite(y)):
        raise InvalidStateError("non-finite ladder state")
    return LadderState.from_vector(make_ladder_rhs(params, state.n_max)(0.0, y))


def _invariant_check(n, trace_tol=TRACE_TOL, pos_tol=POSITIVITY_TOL):
    def check(t, y):
        pop = y[: 2 * n + 2]
        total = pop.sum() + y[4 * n + 2]
        if abs(total - 1.0) > trace_tol:
            raise DivergenceError(f"trace + leak = {total:.12g} at t={t:g}", t=t)
        if pop.min() < -pos_tol:
            raise DivergenceError(f"negative population {pop.min():.3g} at t={t:g}", t=t)
        coh_sq = y[2 * n + 2 : 3 * n + 2] ** 2 + y[3 * n + 2 : 4 * n + 2] ** 2
        bound = y[1 : n + 1] * y[n + 1 : 2 * n + 1]
        if np.any(coh_sq > bound + pos_tol):
            raise DivergenceError(f"coherence exceeds population bound at t={t:g}", t=t)

    return check


def max_stable_dt(params: SystemParams) -> float:
    """Largest step resolving the fastest manifold with 20 steps per period."""
    n = params.truncation
    top = 2.0 * params.coupling * math.sqrt(n + 1)
    return math.inf if top == 0 else 2.0 * math.pi / top / 20.0


def _check_dt(params, dt):
    if dt > max_stable_dt(params):
        raise ConfigError(
            f"dt={dt:g} under-resolves the fastest Rabi period; use dt <= {max_stable_dt(params):.3g}"
        )


def trajectory(params: SystemParams, t_end: float, dt: float, sample_stride=1, check_stride=100):
    """Yield ``(t, LadderState)`` at sampled steps of the RK4 trajectory."""
    _check_dt(params, dt)
    opts = IntegratorOptions(dt=dt, t_end=t_end, sample_stride=sample_stride, check_stride=check_stride)
    n = params.truncation
    y0 = LadderState.coherent(params).to_vector()
    for _, t, y in iterate(make_ladder_rhs(params), y0, opts, check=_invariant_check(n)):
        yield t, LadderState.from_vector(y)


def evolve(params: SystemParams, t_end: float = 8.0, dt: float = 5e-4, sample_stride=1, check_stride=100) -> TimeSeries:
    """Integrate the ladder from ``|g> x |alpha>`` and sample rho_ee(t).

    The returned series carries the final ``trace``, ``external_leak`` and
    ``pop_g0`` in ``meta``. Invariants are checked every ``check_stride``
    steps; a violation raises :class:`DivergenceError` with its time.
    """
    _check_dt(params, dt)
    n = params.truncation
    opts = IntegratorOptions(dt=dt, t_end=t_end, sample_stride=sample_stride, check_stride=check_stride)
    series = integrate(
        make_ladder_rhs(params),
        LadderState.coherent(params).to_vector(),
        opts,
        observer=lambda y: y[n + 1 : 2 * n + 2].sum(),
        label="quantum-ladder",
        check=_invariant_check(n),
    )
    final = LadderState.from_vector(series.meta.pop("final_state"))
    series.meta.update(
        trace=final.trace,
        external_leak=final.external_leak,
        pop_g0=population_g0(final),
        n_max=n,
    )
    return series


def rho_ee_quantum_b0(t, params: SystemParams):
    """Closed form for b = 0, truncated at ``params.truncation``."""
    n = params.truncation
    g2, gamma = params.coupling**2, params.gamma
    if 4.0 * g2 - gamma**2 / 4.0 <= 0:
        raise RegimeError("xi_0 is imaginary; coupling too weak for the closed form")
    p = coherent_weights(params.alpha_sq, n)
    k = np.arange(1, n + 1, dtype=float)
    xi_sq = 4.0 * g2 * k - gamma**2 / 4.0
    amp = 4.0 * g2 * k * p[1:] / xi_sq
    xi = np.sqrt(xi_sq)
    t = np.asarray(t, dtype=float)
    s = np.sin(0.5 * np.multiply.outer(t, xi)) ** 2 @ amp
    return np.exp(-0.5 * gamma * t) * s


def population_g0(state: LadderState) -> float:
    """Population of the sink ``|g,0>``."""
    return float(state.pop_g[0])
