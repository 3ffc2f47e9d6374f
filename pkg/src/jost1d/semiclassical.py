"""WKB approximation of a and b, and asymptotic locations of the zeros of a.

The phase integral is theta = int sqrt(kappa^2 - V) dx over the support; the
local momenta at the two ends fix the matching to free waves.  Away from
turning points this is accurate for large |kappa|, and it is exact for a
piecewise constant barrier with a single step in each direction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import ConfigError, IntegrationError, NearZeroMomentumError
from .potentials import DeltaSpike, Potential
from .transfer import JostCoefficients

__all__ = [
    "WkbData",
    "local_momentum",
    "wkb_theta",
    "wkb_jost",
    "asymptotic_zero_equation_residual",
    "square_barrier_zero_asymptotics",
    "TURNING_POINT_TOL",
]

TURNING_POINT_TOL = 1e-10
_SCAN_POINTS = 2001


@dataclass(frozen=True)
class WkbData:
    kappa: complex
    theta: complex
    p_minus: complex
    p_plus: complex
    x_minus: float
    x_plus: float
    error_estimate: float = 0.0


def local_momentum(kappa: complex, v):
    """sqrt(kappa^2 - V) on the branch that tends to kappa as V -> 0.

    For kappa in the right half-plane this is the principal root; the branch
    is then continued to the left half-plane by oddness in kappa.
    """
    k = complex(kappa)
    root = np.sqrt(k * k - np.asarray(v, dtype=complex))
    if k.real < 0 or (k.real == 0 and k.imag < 0):
        root = -root
    return root


def _check_turning_points(p: Potential, k: complex, x_lo: float, x_hi: float) -> None:
    h = _inset(x_lo, x_hi)
    xs = np.linspace(x_lo + h, x_hi - h, _SCAN_POINTS)
    q = k * k - np.asarray(p(xs), dtype=float)
    scale = max(abs(k * k), 1e-300)
    if np.min(np.abs(q)) < TURNING_POINT_TOL * scale:
        raise IntegrationError("turning-point crossing: branch ambiguous")
    if abs(k.imag) == 0.0 or abs((k * k).imag) <= TURNING_POINT_TOL * scale:
        re = q.real
        if np.any(re[:-1] * re[1:] < 0):
            raise IntegrationError("turning-point crossing: branch ambiguous")


def _inset(x_lo: float, x_hi: float) -> float:
    # one-sided limits from inside, so jumps at the ends are seen from within
    return 1e-12 * max(1.0, abs(x_lo), abs(x_hi), x_hi - x_lo)


def _edge_values(p: Potential, x_lo: float, x_hi: float) -> tuple[float, float]:
    h = _inset(x_lo, x_hi)
    v = np.asarray(p(np.array([x_lo + h, x_hi - h])), dtype=float)
    return float(v[0]), float(v[1])


def _breakpoints(p: Potential, x_lo: float, x_hi: float) -> list[float]:
    pts = set()
    try:
        for seg in p.segments():
            for x in (seg.start, seg.stop):
                if x_lo < x < x_hi:
                    pts.add(float(x))
    except (NotImplementedError, ValueError):
        pass
    return sorted(pts)


def wkb_theta(
    p: Potential,
    kappa: complex,
    x_minus: float | None = None,
    x_plus: float | None = None,
    rel_tol: float = 1e-12,
) -> WkbData:
    """Phase integral and edge momenta over [x_minus, x_plus] (default: the support)."""
    if isinstance(p, DeltaSpike) or p.spikes():
        raise ConfigError("WKB needs a regular potential, not delta spikes")
    k = complex(kappa)
    if k == 0:
        raise NearZeroMomentumError("WKB phase integral needs kappa != 0")
    if x_minus is None or x_plus is None:
        lo, hi = p.support()
        x_minus = lo if x_minus is None else x_minus
        x_plus = hi if x_plus is None else x_plus
    if not (math.isfinite(x_minus) and math.isfinite(x_plus)) or x_plus <= x_minus:
        raise ConfigError(f"WKB needs a finite interval, got [{x_minus}, {x_plus}]")
    _check_turning_points(p, k, x_minus, x_plus)

    def integrand(x):
        return complex(local_momentum(k, p(np.array([x]))[0]))

    points = _breakpoints(p, x_minus, x_plus)
    theta, err = quad(
        integrand,
        x_minus,
        x_plus,
        complex_func=True,
        points=points or None,
        epsabs=0.0,
        epsrel=rel_tol,
        limit=500,
    )
    v_lo, v_hi = _edge_values(p, x_minus, x_plus)
    p_lo = complex(local_momentum(k, v_lo))
    p_hi = complex(local_momentum(k, v_hi))
    return WkbData(k, complex(theta), p_lo, p_hi, x_minus, x_plus, float(abs(err)))


def _sqrt_product(p_lo: complex, p_hi: complex, k: complex) -> complex:
    # root of p_lo * p_hi on the branch of the momenta themselves: equal to p
    # when p_lo == p_hi, so the free case gives exactly kappa
    if p_lo == p_hi:
        return p_lo
    r = cmath.sqrt(p_lo * p_hi)
    if (r * (p_lo + p_hi).conjugate()).real < 0:
        r = -r
    return r


def _wkb_values(w: WkbData, k: complex) -> tuple[complex, complex]:
    pm, pp = w.p_minus, w.p_plus
    if pm == 0 or pp == 0:
        raise IntegrationError("grazing energy: an edge momentum vanishes")
    root = _sqrt_product(pm, pp, k)
    s, c = cmath.sin(w.theta), cmath.cos(w.theta)
    pref = 1.0 / (2j * k * root)
    a = cmath.exp(1j * k * (w.x_plus - w.x_minus)) * pref * (
        (k * k + pm * pp) * s + 1j * k * (pm + pp) * c
    )
    b = cmath.exp(1j * k * (w.x_plus + w.x_minus)) * pref * (
        (k * k - pm * pp) * s - 1j * k * (pm - pp) * c
    )
    return a, b


def wkb_jost(wkb: WkbData, kappa: complex | None = None) -> JostCoefficients:
    k = wkb.kappa if kappa is None else complex(kappa)
    a, b = _wkb_values(wkb, k)
    # at -kappa theta and the momenta flip sign with the branch
    mirrored = WkbData(-k, -wkb.theta, -wkb.p_minus, -wkb.p_plus, wkb.x_minus, wkb.x_plus)
    a_bar, b_bar = _wkb_values(mirrored, -k)
    return JostCoefficients(k, a, b, a_bar, b_bar)


def asymptotic_zero_equation_residual(kappa: complex, wkb: WkbData) -> complex:
    """exp(-2i theta) - (k - p-)(k - p+)/((k + p-)(k + p+)).

    Zeros of the WKB ``a`` (with the free-wave prefactor removed) are the
    roots of this function.
    """
    k = complex(kappa)
    pm, pp = wkb.p_minus, wkb.p_plus
    rhs = (k - pm) * (k - pp) / ((k + pm) * (k + pp))
    return cmath.exp(-2j * wkb.theta) - rhs


def square_barrier_zero_asymptotics(V0: float, x0: float, n_range, signs=(1, -1)) -> list[complex]:
    """Large-n zeros of a for the square barrier of height V0 on |x| < x0.

    p = +-pi n/(2 x0) - (i/x0) ln(2 Re p / sqrt(V0)) and kappa^2 = p^2 + V0,
    with the root of kappa taken on the side of Re p (lower half-plane).
    """
    if V0 <= 0 or x0 <= 0:
        raise ConfigError("square barrier needs V0 > 0 and x0 > 0")
    out = []
    for n in n_range:
        if n < 5:
            raise ConfigError(f"asymptotic zero formula needs n >= 5, got {n}")
        for sgn in signs:
            re_p = sgn * math.pi * n / (2 * x0)
            im_p = -math.log(2 * abs(re_p) / math.sqrt(V0)) / x0
            p = complex(re_p, im_p)
            k = cmath.sqrt(p * p + V0)
            if k.real * re_p < 0:
                k = -k
            out.append(k)
    return out
