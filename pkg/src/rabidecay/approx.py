"""Envelope approximation of the quantum excited population.

Each manifold contributes an undamped Rabi cosine at frequency
``2 g sqrt(n+1)`` weighted by the Poisson probability of ``n+1`` photons,
and the whole oscillating part is damped by a single guessed rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .ladder import coherent_weights
from .params import SystemParams
from .semiclassical import semiclassical_damping_rate

FORMS = ("corrected", "as-printed")


@dataclass(frozen=True)
class GuessMode:
    """Which damping rate to plug into the approximation.

    ``kind`` is ``"quantum"`` (gamma/2), ``"semiclassical"`` ((gamma + f1)/2
    evaluated at ``params.rabi``) or ``"explicit"`` (``rate`` as given).
    """

    kind: str = "quantum"
    rate: float | None = None

    def __post_init__(self):
        if self.kind not in ("quantum", "semiclassical", "explicit"):
            raise ConfigError(f"unknown guess mode {self.kind!r}")
        if self.kind == "explicit" and (self.rate is None or not self.rate >= 0):
            raise ConfigError(f"explicit guess needs a nonnegative rate, got {self.rate!r}")

    @classmethod
    def parse(cls, text) -> "GuessMode":
        """``"quantum"``, ``"semiclassical"`` or a number."""
        if isinstance(text, GuessMode):
            return text
        text = str(text).strip()
        if text in ("quantum", "semiclassical"):
            return cls(text)
        try:
            return cls("explicit", float(text))
        except ValueError:
            raise ConfigError(f"--guess expects quantum, semiclassical or a rate, got {text!r}") from None

    def __str__(self):
        return repr(self.rate) if self.kind == "explicit" else self.kind


QUANTUM = GuessMode("quantum")
SEMICLASSICAL = GuessMode("semiclassical")


def guess_rate(mode: GuessMode, params: SystemParams) -> float:
    if mode.kind == "quantum":
        return 0.5 * params.gamma
    if mode.kind == "semiclassical":
        return semiclassical_damping_rate(params)
    return float(mode.rate)


def rho_ee_approx(t, params: SystemParams, guess: GuessMode = QUANTUM, form: str = "corrected"):
    """Approximate rho_ee(t) = 1/2 (1 - sum_n p_{n+1} cos(2 g sqrt(n+1) t) e^{-rate t}).

    ``form="as-printed"`` keeps an extra factor 1/2 on the sum, which makes
    rho_ee(0) close to 1/4; it exists only for comparison.
    """
    if form not in FORMS:
        raise ConfigError(f"form must be one of {FORMS}, got {form!r}")
    rate = guess_rate(GuessMode.parse(guess), params)
    n = params.truncation
    p = coherent_weights(params.alpha_sq, n)
    freq = 2.0 * params.coupling * np.sqrt(np.arange(1, n + 1, dtype=float))
    t = np.asarray(t, dtype=float)
    osc = np.cos(np.multiply.outer(t, freq)) @ p[1:]
    if form == "as-printed":
        osc = 0.5 * osc
    return 0.5 * (1.0 - osc * np.exp(-rate * t))
