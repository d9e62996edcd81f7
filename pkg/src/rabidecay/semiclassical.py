"""Semiclassical optical Bloch equations for a resonantly driven atom.

The excited level decays at total rate ``gamma``; a fraction ``branching``
of that returns to the ground level and the rest leaves the two-level
system. The drive amplitude |Omega| is ``params.rabi`` and is taken real.
The atom always starts in its ground state.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError, RegimeError
from .ode import IntegratorOptions, integrate
from .params import SystemParams
from .series import TimeSeries


@dataclass(frozen=True)
class BlochState:
    """Density-matrix elements; ``rho_eg`` is the conjugate of ``rho_ge``."""

    rho_gg: float
    rho_ee: float
    rho_ge: complex

    @classmethod
    def ground(cls) -> "BlochState":
        return cls(1.0, 0.0, 0j)

    def to_vector(self) -> np.ndarray:
        return np.array([self.rho_gg, self.rho_ee, self.rho_ge.real, self.rho_ge.imag])

    @classmethod
    def from_vector(cls, y) -> "BlochState":
        return cls(float(y[0]), float(y[1]), complex(y[2], y[3]))


@dataclass(frozen=True)
class FCoefficients:
    f1: float
    f2: float
    a_cubic: float


def bloch_rhs_vector(y, params: SystemParams):
    """Right-hand side on the packed layout ``[rho_gg, rho_ee, Re rho_ge, Im rho_ge]``."""
    gg, ee, re, im = y
    omega, gamma, b = params.rabi, params.gamma, params.branching
    # rho_ge - rho_eg = 2i Im(rho_ge)
    return np.array(
        [
            -2.0 * omega * im + b * gamma * ee,
            2.0 * omega * im - gamma * ee,
            -0.5 * gamma * re,
            -omega * (ee - gg) - 0.5 * gamma * im,
        ]
    )


def bloch_rhs(state: BlochState, params: SystemParams) -> BlochState:
    """Time derivative of ``state``, returned as a BlochState of rates."""
    y = state.to_vector()
    if not np.all(np.isfinite(y)):
        raise InvalidStateError(f"non-finite Bloch state {state}")
    return BlochState.from_vector(bloch_rhs_vector(y, params))


def integrate_bloch(params: SystemParams, t_end: float, dt: float, sample_stride=1) -> TimeSeries:
    """RK4 integration from the ground state; samples rho_ee(t)."""
    opts = IntegratorOptions(dt=dt, t_end=t_end, sample_stride=sample_stride)
    return integrate(
        lambda t, y: bloch_rhs_vector(y, params),
        BlochState.ground().to_vector(),
        opts,
        observer=lambda y: y[1],
        label="semiclassical-ode",
    )


def f_coefficients(params: SystemParams) -> FCoefficients:
    """Growth/frequency coefficients of the closed-form rho_ee(t)."""
    params.require_strong_coupling()
    w2 = params.rabi**2
    gamma, b = params.gamma, params.branching
    x = 16.0 * w2 - gamma**2
    a = 216.0 * b * gamma * w2 + 3.0 * math.sqrt(5184.0 * b**2 * gamma**2 * w2**2 + 3.0 * x**3)
    if b == 0.0:
        # exact cancellation in f1; avoid rounding residue
        return FCoefficients(f1=0.0, f2=math.sqrt(x / 3.0), a_cubic=a)
    root = np.cbrt(a)
    return FCoefficients(f1=root / 6.0 - x / (2.0 * root), f2=root / 6.0 + x / (2.0 * root), a_cubic=a)


def rho_ee_analytic(t, params: SystemParams):
    """Closed-form excited population for arbitrary branching ratio.

    The oscillatory bracket is damped by exp(-3 f1 t / 2) and the whole
    bracket is scaled by the prefactor; this bracketing reduces to the
    b=0 and b=1 special cases and agrees with direct integration.
    """
    c = f_coefficients(params)
    t = np.asarray(t, dtype=float)
    f1, f2 = c.f1, c.f2
    w = 0.5 * math.sqrt(3.0) * f2
    pref = 8.0 * params.rabi**2 / (3.0 * (3.0 * f1**2 + f2**2))
    osc = math.sqrt(3.0) * f1 / f2 * np.sin(w * t) + np.cos(w * t)
    return pref * np.exp((f1 - 0.5 * params.gamma) * t) * (1.0 - np.exp(-1.5 * f1 * t) * osc)


def rho_ee_b0(t, params: SystemParams):
    """No return decay (b = 0): damped sin^2 Rabi flopping."""
    zeta_sq = 4.0 * params.rabi**2 - params.gamma**2 / 4.0
    if zeta_sq <= 0:
        raise RegimeError(f"zeta^2 = {zeta_sq} <= 0; oscillation is overdamped")
    zeta = math.sqrt(zeta_sq)
    t = np.asarray(t, dtype=float)
    return 4.0 * params.rabi**2 / zeta_sq * np.exp(-0.5 * params.gamma * t) * np.sin(0.5 * zeta * t) ** 2


def steady_state_b1(params: SystemParams) -> float:
    w2 = params.rabi**2
    return 4.0 * w2 / (8.0 * w2 + params.gamma**2)


def rho_ee_b1(t, params: SystemParams):
    """Closed two-level system (b = 1)."""
    lam_sq = 4.0 * params.rabi**2 - params.gamma**2 / 16.0
    if lam_sq <= 0:
        raise RegimeError(f"lambda^2 = {lam_sq} <= 0; oscillation is overdamped")
    lam = math.sqrt(lam_sq)
    g = params.gamma
    t = np.asarray(t, dtype=float)
    osc = np.cos(lam * t) + 0.75 * g / lam * np.sin(lam * t)
    return steady_state_b1(params) * (1.0 - osc * np.exp(-0.75 * g * t))


def rho_ee_b1_strong(t, params: SystemParams):
    """b = 1 in the limit |Omega| >> gamma."""
    if params.rabi < 10.0 * params.gamma:
        warnings.warn(
            f"strong-drive limit used with rabi/gamma = {params.rabi / params.gamma:.3g} < 10",
            stacklevel=2,
        )
    t = np.asarray(t, dtype=float)
    return 0.5 * (1.0 - np.cos(2.0 * params.rabi * t) * np.exp(-0.75 * params.gamma * t))


def semiclassical_damping_rate(params: SystemParams) -> float:
    return 0.5 * (params.gamma + f_coefficients(params).f1)


def oscillation_frequency(params: SystemParams) -> float:
    """Angular frequency sqrt(3)/2 * f2 of the closed-form oscillation."""
    return 0.5 * math.sqrt(3.0) * f_coefficients(params).f2
