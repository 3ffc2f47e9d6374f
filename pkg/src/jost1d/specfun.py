"""Complex special functions used by the closed-form amplitudes.

Only two primitives are needed: the principal branch of log-Gamma for complex
argument, and the regularized Bessel series

    Jhat_nu(z) = Gamma(nu + 1) (z/2)^(-nu) J_nu(z)
               = sum_k (-z^2/4)^k / (k! (nu + 1)_k),

together with its z-derivative.  Jhat depends on z only through z^2, so it is
single valued; its only singularities are the poles in ``nu`` at the negative
integers inherited from Gamma(nu + 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import JostError, PoleError

__all__ = [
    "SpecFunResult",
    "log_gamma",
    "gamma",
    "rgamma",
    "regular_bessel",
    "entire_bessel",
    "bessel_j",
]

_EPS = 2.220446049250313e-16
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

SERIES_MAX_ABS_Z = 50.0


@dataclass(frozen=True)
class SpecFunResult:
    value: complex
    error_estimate: float
    derivative: complex | None = None


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _lanczos_log_gamma(z: complex) -> complex:
    # valid for Re z >= 1/2
    zm = z - 1.0
    acc = _LANCZOS_P[0]
    for k in range(1, len(_LANCZOS_P)):
        acc += _LANCZOS_P[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(acc)


def log_gamma(z: complex) -> SpecFunResult:
    """Principal branch of ln Gamma(z).

    For Re z < 1/2 the argument is shifted up with the recurrence
    ln Gamma(z) = ln Gamma(z + n) - sum log(z + k), which preserves the
    principal branch exactly (unlike the reflection formula, whose logarithm of
    sin(pi z) needs an explicit branch correction).
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z={z.real:g}", location=z)
    shift = 0
    if z.real < 0.5:
        shift = int(math.ceil(0.5 - z.real))
    correction = 0j
    for k in range(shift):
        correction += cmath.log(z + k)
    value = _lanczos_log_gamma(z + shift) - correction
    err = 4.0 * _EPS * (1.0 + abs(value)) + 2.0 * _EPS * shift * (1.0 + abs(correction))
    return SpecFunResult(value, err)


def gamma(z: complex) -> complex:
    return cmath.exp(log_gamma(z).value)


def rgamma(z: complex) -> complex:
    """1/Gamma(z); entire, zero at the non-positive integers."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        return 0j
    return cmath.exp(-log_gamma(z).value)


def regular_bessel(nu: complex, z: complex) -> SpecFunResult:
    """Jhat_nu(z) and its z-derivative from the power series.

    Terms follow t_k = t_{k-1} * (-z^2/4) / (k (nu + k)), so the Pochhammer
    symbol never appears explicitly and cannot overflow on its own.
    """
    nu = complex(nu)
    z = complex(z)
    if abs(z) > SERIES_MAX_ABS_Z:
        raise JostError(f"series regime exceeded: |z|={abs(z):.3g} > {SERIES_MAX_ABS_Z}")
    q = -0.25 * z * z
    term = 1.0 + 0j
    total = term
    dsum = 0j  # sum of k * t_k
    k = 0
    # terms only start shrinking once k exceeds ~|z|/2 and |nu + k| is not small
    k_min = int(abs(z)) + 2
    while True:
        k += 1
        denom = k * (nu + k)
        if denom == 0:
            raise PoleError(f"Jhat has a pole at nu={nu}", location=nu)
        term = term * q / denom
        total += term
        dsum += k * term
        if k > k_min and abs(term) * k <= _EPS * max(abs(total), abs(dsum), 1e-300):
            break
        if k > 10000:
            raise JostError("Bessel series failed to converge")
    ratio = abs(q) / abs((k + 1) * (nu + k + 1))
    tail = abs(term) * ratio / max(1.0 - ratio, 0.5)
    error = tail + 4.0 * _EPS * k * max(abs(total), 1.0)
    derivative = 2.0 * dsum / z if z != 0 else 0j
    return SpecFunResult(total, error, derivative)


def entire_bessel(nu: complex, z: complex) -> complex:
    """(z/2)^(-nu) J_nu(z) = Jhat_nu(z) / Gamma(nu + 1), entire in nu and z."""
    nu = complex(nu)
    z = complex(z)
    q = -0.25 * z * z
    total = 0j
    term_num = 1.0 + 0j  # q^k / k!
    k = 0
    k_min = int(abs(z)) + int(abs(nu)) + 4
    while True:
        contrib = term_num * rgamma(nu + k + 1)
        total += contrib
        if k > k_min and abs(term_num) < _EPS * 1e-3 * max(abs(total), 1e-300):
            break
        k += 1
        term_num = term_num * q / k
        if k > 10000:
            raise JostError("Bessel series failed to converge")
    return total


def bessel_j(nu: complex, z: complex) -> tuple[complex, complex]:
    """J_nu(z) and dJ_nu/dz on the principal branch of (z/2)^nu.

    Built from the regularized series; only used for cross-checks and for the
    literal form of the closed-form amplitudes.
    """
    nu = complex(nu)
    z = complex(z)
    if z == 0:
        raise JostError("bessel_j: z = 0 is a branch point for non-integer order")
    res = regular_bessel(nu, z)
    scale = cmath.exp(nu * cmath.log(0.5 * z)) * rgamma(nu + 1)
    value = scale * res.value
    deriv = scale * (res.derivative + nu / z * res.value)
    return value, deriv
