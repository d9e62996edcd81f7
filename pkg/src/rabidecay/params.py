"""Physical configuration of the driven, decaying two-level atom.

All rates and couplings are expressed in the same unit; by convention
``gamma = 1`` fixes the time unit.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

from scipy.stats import poisson

from .errors import ConfigError, RegimeError


def default_n_max(alpha_sq: float, tail_tol: float = 1e-12) -> int:
    """Poisson mean plus ten standard deviations, raised if needed so the
    discarded tail stays below ``tail_tol``."""
    n = max(1, math.ceil(alpha_sq + 10.0 * math.sqrt(alpha_sq)))
    if alpha_sq > 0:
        n = max(n, int(poisson.isf(tail_tol, alpha_sq)) + 1)
    return n


@dataclass(frozen=True)
class SystemParams:
    """Couplings, decay and field configuration.

    ``rabi`` is the classical Rabi coupling |Omega| used by the semiclassical
    engine; ``coupling`` is the single-photon coupling |g| used by the
    quantum ladder. Both are real and nonnegative (the phase of the coupling
    never shows up in populations).
    """

    rabi: float = 10.0
    coupling: float = 10.0
    gamma: float = 1.0
    branching: float = 1.0
    alpha_sq: float = 25.0
    n_max: int | None = None

    def __post_init__(self):
        for name in ("rabi", "coupling", "gamma", "branching", "alpha_sq"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value!r}")
        if self.rabi < 0 or self.coupling < 0:
            raise ConfigError("couplings must be nonnegative")
        if self.gamma < 0:
            raise ConfigError(f"gamma must be nonnegative, got {self.gamma}")
        if not 0.0 <= self.branching <= 1.0:
            raise ConfigError(f"branching must lie in [0, 1], got {self.branching}")
        if self.alpha_sq < 0:
            raise ConfigError(f"alpha_sq must be nonnegative, got {self.alpha_sq}")
        if self.n_max is not None and (int(self.n_max) != self.n_max or self.n_max < 1):
            raise ConfigError(f"n_max must be a positive integer, got {self.n_max}")

    @property
    def truncation(self) -> int:
        """Effective Fock truncation (explicit ``n_max`` or the default rule)."""
        if self.n_max is not None:
            return int(self.n_max)
        return default_n_max(self.alpha_sq)

    @property
    def strong_coupling(self) -> bool:
        return 16.0 * self.rabi**2 > self.gamma**2

    def require_strong_coupling(self):
        if not self.strong_coupling:
            raise RegimeError(
                f"analytic solution needs 16*rabi^2 > gamma^2 "
                f"(rabi={self.rabi}, gamma={self.gamma})"
            )

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_max"] = self.truncation
        return d
