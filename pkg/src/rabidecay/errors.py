"""Exception hierarchy shared by the engines, analysis and CLI."""


class RabiDecayError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(RabiDecayError, ValueError):
    """Invalid parameters or run configuration."""


class RegimeError(RabiDecayError, ValueError):
    """An analytic form was evaluated outside its domain of validity."""


class InvalidStateError(RabiDecayError, ValueError):
    """A state vector contains non-finite components."""


class TruncationError(RabiDecayError, ValueError):
    """The Fock truncation discards more probability than allowed."""

    def __init__(self, message, suggested_n_max=None):
        super().__init__(message)
        self.suggested_n_max = suggested_n_max


class DivergenceError(RabiDecayError, ArithmeticError):
    """Integration produced non-finite values or broke a physical invariant."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class AlignmentError(RabiDecayError, ValueError):
    """Two time series do not share the same sampling grid."""


class InsufficientDataError(RabiDecayError, ValueError):
    """Too few envelope points for a damping fit."""
