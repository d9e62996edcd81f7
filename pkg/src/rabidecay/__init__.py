"""Damped Rabi oscillation of a decaying two-level atom: semiclassical vs quantized drive."""

from .analysis import (
    DampingFit,
    difference_series,
    envelope_peaks,
    fit_damping_rate,
    max_abs,
    revival_window,
)
from .approx import GuessMode, guess_rate, rho_ee_approx
from .errors import (
    AlignmentError,
    ConfigError,
    DivergenceError,
    InsufficientDataError,
    InvalidStateError,
    RabiDecayError,
    RegimeError,
    TruncationError,
)
from .ladder import LadderState, coherent_weights, evolve, ladder_rhs, population_g0, rho_ee_quantum_b0
from .ode import IntegratorOptions, integrate, rk4_step
from .params import SystemParams
from .semiclassical import (
    BlochState,
    FCoefficients,
    bloch_rhs,
    f_coefficients,
    integrate_bloch,
    rho_ee_analytic,
    rho_ee_b0,
    rho_ee_b1,
    rho_ee_b1_strong,
    semiclassical_damping_rate,
)
from .series import TimeSeries

__version__ = "0.1.0"
