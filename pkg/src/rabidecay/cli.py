"""Command-line front end.

    rabidecay run --model quantum --out exact.csv
    rabidecay run --model approx --guess quantum --exact exact.csv --out quant.csv
    rabidecay compare exact.csv quant.csv --out delta.csv --windows revival
    rabidecay reproduce fig5 --out results/

Summaries go to stdout as ``key=value`` lines. Time is measured in units
of 1/gamma with gamma = 1 unless ``--gamma`` says otherwise.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import analysis, approx, io, ladder, semiclassical
from .errors import ConfigError, RabiDecayError
from .params import SystemParams
from .series import TimeSeries

MODELS = ("semiclassical-analytic", "semiclassical-ode", "quantum", "quantum-analytic-b0", "approx")
FIGURES = ("fig4a", "fig4b", "fig5")

DEFAULT_T_END = 8.0
DEFAULT_DT = 5e-4
TOLERANCES = {
    "truncation_tail": ladder.TRUNCATION_TOL,
    "trace": ladder.TRACE_TOL,
    "positivity": ladder.POSITIVITY_TOL,
}

# flag name -> SystemParams field
PARAM_FLAGS = {
    "rabi": "rabi",
    "coupling": "coupling",
    "gamma": "gamma",
    "b": "branching",
    "alpha_sq": "alpha_sq",
    "n_max": "n_max",
}


@dataclass
class RunConfig:
    model: str = "quantum"
    params: SystemParams = field(default_factory=SystemParams)
    guess: str = "quantum"
    form: str = "corrected"
    t_end: float = DEFAULT_T_END
    dt: float = DEFAULT_DT
    output_path: str | None = None

    def validate(self):
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}; choose from {', '.join(MODELS)}")
        if not self.dt > 0 or not self.t_end >= 0:
            raise ConfigError(f"need dt > 0 and t_end >= 0 (dt={self.dt}, t_end={self.t_end})")
        if self.form not in approx.FORMS:
            raise ConfigError(f"form must be one of {approx.FORMS}")
        approx.GuessMode.parse(self.guess)
        if self.model in ("quantum", "quantum-analytic-b0", "approx"):
            # tail-mass gate before any integration
            ladder.coherent_weights(self.params.alpha_sq, self.params.truncation)
        if self.model == "quantum":
            if self.dt > ladder.max_stable_dt(self.params):
                raise ConfigError(
                    f"dt={self.dt:g} too coarse; need dt <= {ladder.max_stable_dt(self.params):.3g}"
                )
        if self.model == "semiclassical-analytic":
            self.params.require_strong_coupling()
        return self

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "params": self.params.to_dict(),
            "guess": str(self.guess),
            "form": self.form,
            "t_end": self.t_end,
            "dt": self.dt,
            "output_path": self.output_path,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data = dict(data)
        p = data.pop("params", None) or {}
        bad = set(p) - {f.name for f in fields(SystemParams)}
        if bad:
            raise ConfigError(f"unknown params keys: {sorted(bad)}")
        return cls(params=SystemParams(**p), **data)


def simulate(cfg: RunConfig) -> TimeSeries:
    """Produce the rho_ee series for one model on the grid ``0, dt, ..., t_end``."""
    p = cfg.params
    if cfg.model == "semiclassical-analytic":
        return TimeSeries.sample(lambda t: semiclassical.rho_ee_analytic(t, p), cfg.t_end, cfg.dt, cfg.model)
    if cfg.model == "semiclassical-ode":
        return semiclassical.integrate_bloch(p, cfg.t_end, cfg.dt)
    if cfg.model == "quantum":
        return ladder.evolve(p, cfg.t_end, cfg.dt)
    if cfg.model == "quantum-analytic-b0":
        return TimeSeries.sample(lambda t: ladder.rho_ee_quantum_b0(t, p), cfg.t_end, cfg.dt, cfg.model)
    guess = approx.GuessMode.parse(cfg.guess)
    series = TimeSeries.sample(
        lambda t: approx.rho_ee_approx(t, p, guess, cfg.form), cfg.t_end, cfg.dt, "approx"
    )
    series.meta["guess_rate"] = approx.guess_rate(guess, p)
    return series


def _emit(summary: dict, out=None):
    out = out or sys.stdout
    for k, v in summary.items():
        if isinstance(v, float):
            v = f"{v:.10g}"
        print(f"{k}={v}", file=out)


def _base_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("physical parameters")
    g.add_argument("--rabi", type=float, help="semiclassical |Omega| (units of gamma)")
    g.add_argument("--coupling", type=float, help="quantum |g| (units of gamma)")
    g.add_argument("--gamma", type=float, help="total decay rate")
    g.add_argument("--b", type=float, help="branching ratio into the ground state")
    g.add_argument("--alpha-sq", dest="alpha_sq", type=float, help="mean photon number |alpha|^2")
    g.add_argument("--n-max", dest="n_max", type=int, help="Fock truncation")
    g.add_argument("--t-end", dest="t_end", type=float)
    g.add_argument("--dt", type=float)
    g.add_argument("--guess", help="quantum | semiclassical | <rate>")
    g.add_argument("--form", choices=approx.FORMS)
    g.add_argument("--config", help="JSON file mirroring RunConfig; flags override it")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _base_parser()
    parser = argparse.ArgumentParser(prog="rabidecay", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="simulate one model and write a CSV trajectory")
    run.add_argument("--model", choices=MODELS)
    run.add_argument("--out", dest="output_path")
    run.add_argument("--exact", help="CSV of a prior quantum run to difference against")
    run.add_argument("--fit", action="store_true", help="fit an exponential envelope to the output")
    run.add_argument("--baseline", type=float, help="asymptote for --fit (model default otherwise)")
    run.add_argument("--fit-window", nargs=2, type=float, metavar=("LO", "HI"))

    cmp_ = sub.add_parser("compare", parents=[common], help="difference two CSV trajectories")
    cmp_.add_argument("first", metavar="A", help="CSV trajectory (minuend)")
    cmp_.add_argument("second", metavar="B", help="CSV trajectory (subtrahend)")
    cmp_.add_argument("--out", dest="output_path")
    cmp_.add_argument("--label", default="delta")
    cmp_.add_argument("--windows", choices=("revival",))

    rep = sub.add_parser("reproduce", parents=[common], help="regenerate the data behind a figure")
    rep.add_argument("figure", choices=FIGURES)
    rep.add_argument("--out", dest="output_path", default="results")
    rep.add_argument("--manifest", help="re-run with the settings stored in a previous manifest")
    return parser


def config_from_args(args) -> RunConfig:
    data = {}
    if getattr(args, "config", None):
        data = io.read_json(args.config)
    cfg = RunConfig.from_dict(data)
    overrides = {f: getattr(args, flag) for flag, f in PARAM_FLAGS.items() if getattr(args, flag, None) is not None}
    if overrides:
        cfg.params = cfg.params.with_(**overrides)
    for name in ("model", "guess", "form", "t_end", "dt", "output_path"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    return cfg


def _default_baseline(cfg: RunConfig) -> float:
    if cfg.model == "approx":
        return 0.5
    if cfg.model.startswith("semiclassical") and cfg.params.branching == 1.0:
        return semiclassical.steady_state_b1(cfg.params)
    if cfg.model == "quantum" and cfg.params.branching > 0:
        return 0.5
    return 0.0


def cmd_run(args) -> int:
    cfg = config_from_args(args).validate()
    series = simulate(cfg)
    summary = {
        "model": cfg.model,
        "n_samples": len(series),
        "max_value": float(series.values.max()),
        "t_at_max": float(series.times[series.values.argmax()]),
        "final_value": float(series.values[-1]),
    }
    trailer = None
    if cfg.model == "quantum":
        m = series.meta
        trailer = {
            "trace": m["trace"],
            "external_leak": m["external_leak"],
            "trace_plus_leak": m["trace"] + m["external_leak"],
            "trace_deviation": abs(m["trace"] - 1.0),
            "pop_g0": m["pop_g0"],
        }
        summary.update(trailer)
    if "guess_rate" in series.meta:
        summary["guess_rate"] = series.meta["guess_rate"]
    if args.exact:
        exact = io.read_csv(args.exact)
        t_d, d = analysis.max_abs(analysis.difference_series(exact, series))
        summary["max_abs_delta_vs_exact"] = abs(d)
        summary["t_at_max_delta"] = t_d
    if args.fit:
        baseline = args.baseline if args.baseline is not None else _default_baseline(cfg)
        fit = analysis.fit_damping_rate(series, baseline, args.fit_window)
        summary["fit_baseline"] = baseline
        summary.update(fit.summary())
    if cfg.output_path:
        io.write_csv(cfg.output_path, series, trailer)
        summary["output"] = cfg.output_path
    _emit(summary)
    return 0


def cmd_compare(args) -> int:
    cfg = config_from_args(args)
    a, b = io.read_csv(args.first), io.read_csv(args.second)
    delta = analysis.difference_series(a, b, label=args.label)
    t, v = analysis.max_abs(delta)
    summary = {"label": args.label, "max_abs_delta": abs(v), "t_at_max": t}
    if args.windows == "revival":
        for k, (lo, hi) in enumerate(analysis.revival_window(cfg.params), start=1):
            tw, vw = analysis.max_abs(delta.window(lo, hi))
            summary[f"window{k}"] = f"[{lo:.6g},{hi:.6g}]"
            summary[f"window{k}_max_abs_delta"] = abs(vw)
            summary[f"window{k}_t_at_max"] = tw
    if cfg.output_path:
        io.write_csv(cfg.output_path, delta)
        summary["output"] = cfg.output_path
    _emit(summary)
    return 0


def reproduce(figure: str, cfg: RunConfig, out_dir) -> dict:
    """Write the curves for ``figure`` plus ``manifest.json`` into ``out_dir``.

    Returns the summary statistics that are also stored in the manifest.
    """
    if figure not in FIGURES:
        raise ConfigError(f"figure must be one of {FIGURES}")
    out_dir = Path(out_dir)
    p = cfg.params
    base = dict(params=p, t_end=cfg.t_end, dt=cfg.dt, form=cfg.form)
    exact = simulate(RunConfig(model="quantum", **base).validate())
    semi = simulate(RunConfig(model="approx", guess="semiclassical", **base).validate())
    quant = simulate(RunConfig(model="approx", guess="quantum", **base).validate())
    d_semi = analysis.difference_series(exact, semi, "delta_semi")
    d_quant = analysis.difference_series(exact, quant, "delta_quant")
    windows = analysis.revival_window(p)
    summary = {
        "max_abs_delta_semi": abs(analysis.max_abs(d_semi)[1]),
        "t_at_max_delta_semi": analysis.max_abs(d_semi)[0],
        "max_abs_delta_quant": abs(analysis.max_abs(d_quant)[1]),
        "t_at_max_delta_quant": analysis.max_abs(d_quant)[0],
        "guess_rate_semi": semi.meta["guess_rate"],
        "guess_rate_quant": quant.meta["guess_rate"],
        "final_trace": exact.meta["trace"],
        "final_external_leak": exact.meta["external_leak"],
    }
    written = []
    if figure == "fig4a":
        for name, s in (("exact", exact), ("semi", semi), ("quant", quant)):
            written.append(io.write_csv(out_dir / f"{name}.csv", s))
    elif figure == "fig4b":
        for k, (lo, hi) in enumerate(windows, start=1):
            for name, s in (("exact", exact), ("semi", semi), ("quant", quant)):
                w = s.window(lo, hi)
                written.append(io.write_csv(out_dir / f"{name}_w{k}.csv", w))
                summary[f"window{k}_{name}_amplitude"] = float(w.values.max() - w.values.min())
            summary[f"window{k}_max_abs_delta_semi"] = abs(analysis.max_abs(d_semi.window(lo, hi))[1])
            summary[f"window{k}_max_abs_delta_quant"] = abs(analysis.max_abs(d_quant.window(lo, hi))[1])
    else:
        written.append(io.write_csv(out_dir / "delta_semi.csv", d_semi))
        written.append(io.write_csv(out_dir / "delta_quant.csv", d_quant))
    manifest = {
        "figure": figure,
        "params": p.to_dict(),
        "t_end": cfg.t_end,
        "dt": cfg.dt,
        "form": cfg.form,
        "integrator": "rk4-fixed-step",
        "tolerances": TOLERANCES,
        "revival_windows": windows,
        "outputs": sorted(x.name for x in written),
        "summary": summary,
    }
    io.write_json(out_dir / "manifest.json", manifest)
    return summary


def cmd_reproduce(args) -> int:
    cfg = config_from_args(args)
    if args.manifest:
        m = io.read_json(args.manifest)
        cfg = RunConfig(
            params=SystemParams(**m["params"]),
            t_end=m["t_end"],
            dt=m["dt"],
            form=m["form"],
            output_path=args.output_path,
        )
    summary = reproduce(args.figure, cfg, cfg.output_path)
    _emit({"figure": args.figure, **summary, "output": cfg.output_path})
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"run": cmd_run, "compare": cmd_compare, "reproduce": cmd_reproduce}[args.command]
    try:
        return handler(args)
    except (RabiDecayError, OSError) as exc:
        print(f"rabidecay: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
