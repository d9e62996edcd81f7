import numpy as np
import pytest

from rabidecay import SystemParams, TimeSeries
from rabidecay.approx import QUANTUM, SEMICLASSICAL, rho_ee_approx
from rabidecay.ladder import evolve

T_END = 8.0
DT = 5e-4


@pytest.fixture(scope="session")
def paper_params():
    # |g| = 10 gamma, <n> = 25, b = 1
    return SystemParams(rabi=10.0, coupling=10.0, gamma=1.0, branching=1.0, alpha_sq=25.0)


@pytest.fixture(scope="session")
def exact_b1(paper_params):
    return evolve(paper_params, T_END, DT)


@pytest.fixture(scope="session")
def exact_b0(paper_params):
    return evolve(paper_params.with_(branching=0.0), T_END, DT)


@pytest.fixture(scope="session")
def approx_curves(paper_params, exact_b1):
    t = exact_b1.times
    quant = TimeSeries(0.0, DT, rho_ee_approx(t, paper_params, QUANTUM), "approx")
    semi = TimeSeries(0.0, DT, rho_ee_approx(t, paper_params, SEMICLASSICAL), "approx")
    return quant, semi


def grid(t_end=T_END, dt=DT):
    n = int(round(t_end / dt))
    return dt * np.arange(n + 1)


B_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
ORACLE_DT = 1e-4


@pytest.fixture(scope="session")
def bloch_ode(paper_params):
    """RK4 integration of the Bloch equations at Omega = 10 gamma, keyed by b."""
    from rabidecay.semiclassical import integrate_bloch

    return {b: integrate_bloch(paper_params.with_(branching=b), T_END, ORACLE_DT) for b in B_GRID}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        ok, detail = results[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  ({detail})")
