import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rabidecay.analysis import difference_series, max_abs
from rabidecay.approx import QUANTUM, SEMICLASSICAL, GuessMode, guess_rate, rho_ee_approx
from rabidecay.errors import ConfigError, TruncationError
from rabidecay.ladder import rho_ee_quantum_b0
from rabidecay.series import TimeSeries

from .conftest import DT


def test_guess_rates(paper_params):
    assert guess_rate(QUANTUM, paper_params) == 0.5
    assert guess_rate(SEMICLASSICAL, paper_params) == pytest.approx(0.75, rel=0.02)
    assert guess_rate(GuessMode("explicit", 0.6), paper_params) == 0.6


@pytest.mark.parametrize("text,kind,rate", [("quantum", "quantum", None), ("semiclassical", "semiclassical", None), ("0.6", "explicit", 0.6)])
def test_guess_parse(text, kind, rate):
    g = GuessMode.parse(text)
    assert g.kind == kind and g.rate == rate


@pytest.mark.parametrize("bad", ["fast", "-0.1"])
def test_guess_parse_rejects(bad):
    with pytest.raises(ConfigError):
        GuessMode.parse(bad)


def test_long_time_limit(paper_params):
    assert rho_ee_approx(200.0, paper_params) == pytest.approx(0.5, abs=1e-12)


def test_initial_value(paper_params):
    assert rho_ee_approx(0.0, paper_params) == pytest.approx(math.exp(-25) / 2, rel=1e-6, abs=1e-14)
    # the extra 1/2 on the sum leaves a quarter of the population excited at t=0
    assert rho_ee_approx(0.0, paper_params, form="as-printed") == pytest.approx(0.25, abs=1e-10)


def test_unknown_form(paper_params):
    with pytest.raises(ConfigError):
        rho_ee_approx(0.0, paper_params, form="other")


def test_truncation_gate(paper_params):
    with pytest.raises(TruncationError):
        rho_ee_approx(0.0, paper_params.with_(n_max=40))


def test_corrected_form_is_decay_free_closed_form(paper_params):
    p = paper_params.with_(gamma=0.0)
    t = np.linspace(0, 8, 4001)
    a = rho_ee_approx(t, p, GuessMode("explicit", 0.0))
    b = rho_ee_quantum_b0(t, p)
    assert np.max(np.abs(a - b)) < 1e-10


@settings(max_examples=50, deadline=None)
@given(t=st.floats(0.0, 20.0), rate=st.floats(0.5, 0.75), form=st.sampled_from(["corrected", "as-printed"]))
def test_bounded(paper_params, t, rate, form):
    v = float(rho_ee_approx(t, paper_params, GuessMode("explicit", rate), form))
    assert 0.0 <= v <= 1.0


def test_larger_guess_gives_smaller_revival(paper_params):
    t = np.linspace(math.pi - math.pi / 4, math.pi + math.pi / 4, 20001)
    r_q = np.ptp(rho_ee_approx(t, paper_params, QUANTUM))
    r_s = np.ptp(rho_ee_approx(t, paper_params, SEMICLASSICAL))
    assert r_q > r_s


def test_half_gamma_is_best_constant_guess(paper_params, exact_b1):
    # scan guesses; gamma/2 should minimize the worst-case deviation from the exact curve
    rates = np.round(np.arange(0.40, 0.80, 0.05), 2)
    errs = []
    for r in rates:
        s = TimeSeries(0.0, DT, rho_ee_approx(exact_b1.times, paper_params, GuessMode("explicit", r)))
        errs.append(abs(max_abs(difference_series(exact_b1, s))[1]))
    assert rates[int(np.argmin(errs))] == 0.5


def test_quantum_guess_residual_is_initial_collapse(exact_b1, approx_curves):
    # frozen measurement: max |delta_quant| = 7.61e-3 at t = 0.0925, inside the first collapse;
    # after the collapse the residual drops to the 1e-3 level
    quant, _ = approx_curves
    d = difference_series(exact_b1, quant)
    t, v = max_abs(d)
    assert abs(v) == pytest.approx(7.61e-3, rel=0.01)
    assert t < 0.5
    assert abs(max_abs(d.window(0.5, 8.0))[1]) < 2e-3
