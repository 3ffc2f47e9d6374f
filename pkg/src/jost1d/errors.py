"""Exception hierarchy shared across the package.

Each class carries an ``exit_code`` used by the command-line front end.
"""

from __future__ import annotations


class JostError(Exception):
    exit_code = 3


class ConfigError(JostError, ValueError):
    exit_code = 2


class NearZeroMomentumError(JostError, ValueError):
    """Raised when an operation would divide by a vanishing momentum."""


class PoleError(JostError, ZeroDivisionError):
    """Evaluation landed on a pole; ``location`` holds the offending point."""

    def __init__(self, message: str, location: complex | None = None):
        super().__init__(message)
        self.location = location


class SMatrixPole(PoleError):
    """a(kappa) vanishes, so the S-matrix is singular at ``location``."""


class TailLimitedError(JostError, ValueError):
    """Momentum lies outside the strip where the amplitudes are analytic."""

    exit_code = 4

    def __init__(self, message: str, strip: tuple[float, float] | None = None):
        super().__init__(message)
        self.strip = strip


class IntegrationError(JostError, RuntimeError):
    pass


class ContourError(JostError, RuntimeError):
    pass


class ConvergenceError(JostError, RuntimeError):
    pass


class DivergenceError(ConvergenceError):
    pass


class NoReferenceError(JostError, LookupError):
    exit_code = 5
