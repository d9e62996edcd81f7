import math

import numpy as np
import pytest

from rabidecay.errors import ConfigError, DivergenceError
from rabidecay.ode import IntegratorOptions, integrate, rk4_step, step_doubling_error


def decay(t, y):
    return -y


def oscillator(t, y):
    return np.array([y[1], -y[0]])


def max_decay_error(dt, t_end=5.0):
    s = integrate(decay, np.array([1.0]), IntegratorOptions(dt=dt, t_end=t_end), observer=lambda y: y[0])
    return np.max(np.abs(s.values - np.exp(-s.times)))


def oscillator_error(dt, t_end=2 * math.pi):
    s = integrate(oscillator, np.array([1.0, 0.0]), IntegratorOptions(dt=dt, t_end=t_end), observer=lambda y: y[0])
    return np.max(np.abs(s.values - np.cos(s.times)))


def test_constant_rhs_keeps_state():
    y = rk4_step(lambda t, y: np.zeros_like(y), np.array([1.0]), 0.0, 0.1)
    assert y[0] == 1.0


def test_single_decay_step_matches_taylor_polynomial():
    # RK4 reproduces the 4th-order Taylor polynomial of exp(-h) exactly
    h = 0.1
    y = rk4_step(decay, np.array([1.0]), 0.0, h)
    assert y[0] == pytest.approx(1 - h + h**2 / 2 - h**3 / 6 + h**4 / 24, abs=1e-15)
    assert y[0] == pytest.approx(0.9048375, abs=1e-7)
    assert abs(y[0] - math.exp(-h)) < h**5 / 120 * 1.01


def test_harmonic_oscillator_returns_after_one_period():
    n = 1000
    y = np.array([1.0, 0.0])
    dt = 2 * math.pi / n
    for k in range(n):
        y = rk4_step(oscillator, y, k * dt, dt)
    assert np.allclose(y, [1.0, 0.0], atol=1e-10)


def test_integrate_exponential_accuracy():
    assert max_decay_error(1e-3) < 1e-10


@pytest.mark.parametrize("err", [max_decay_error, oscillator_error])
def test_fourth_order_convergence(err):
    ratio = err(0.1) / err(0.05)
    assert 12 <= ratio <= 20


def test_zero_horizon_returns_initial_observation():
    s = integrate(decay, np.array([2.0]), IntegratorOptions(dt=0.1, t_end=0.0), observer=lambda y: y[0])
    assert s.values.tolist() == [2.0]


def test_sample_stride_thins_output():
    s = integrate(decay, np.array([1.0]), IntegratorOptions(dt=0.01, t_end=1.0, sample_stride=10), observer=lambda y: y[0])
    assert len(s) == 11
    assert s.dt == pytest.approx(0.1)
    assert s.values[-1] == pytest.approx(math.exp(-1.0), abs=1e-10)


def test_deterministic():
    a = integrate(oscillator, np.array([1.0, 0.0]), IntegratorOptions(dt=0.01, t_end=3.0), observer=lambda y: y[1])
    b = integrate(oscillator, np.array([1.0, 0.0]), IntegratorOptions(dt=0.01, t_end=3.0), observer=lambda y: y[1])
    assert np.array_equal(a.values, b.values)


def test_divergence_reports_time():
    with np.errstate(over="ignore"), pytest.raises(DivergenceError) as info:
        integrate(lambda t, y: y**2, np.array([1.0]), IntegratorOptions(dt=0.1, t_end=5.0), observer=lambda y: y[0])
    assert info.value.t is not None and 0 < info.value.t < 5.0


def test_step_doubling_estimate_is_reported_not_applied():
    opts = IntegratorOptions(dt=0.1, t_end=1.0, estimate_error=True)
    s = integrate(decay, np.array([1.0]), opts, observer=lambda y: y[0])
    plain = integrate(decay, np.array([1.0]), IntegratorOptions(dt=0.1, t_end=1.0), observer=lambda y: y[0])
    assert np.array_equal(s.values, plain.values)
    assert 0 < s.meta["step_error_estimate"] < 1e-6
    assert step_doubling_error(decay, np.array([1.0]), 0.0, 0.1) > 0


@pytest.mark.parametrize("kwargs", [{"dt": 0.0, "t_end": 1.0}, {"dt": 0.1, "t_end": -1.0}, {"dt": 0.1, "t_end": 1.0, "sample_stride": 0}])
def test_invalid_options(kwargs):
    with pytest.raises(ConfigError):
        IntegratorOptions(**kwargs)
