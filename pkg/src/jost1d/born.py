"""Perturbative and iterative series for alpha and beta.

First and second Born terms, and the Volterra iteration obtained after the
diagonal part of the first-order system is absorbed into the phase

    w(x) = (1 / 2 kappa) int_{-inf}^x V.

With P+ = V/(2i kappa) e^{2i(kappa x - w)} and P- = -V/(2i kappa) e^{-2i(kappa x - w)}
the pair (f, g) obeys

    f' = V e^{-iw} + P+ g,        g' = V e^{-2i kappa x + iw} + P- f,

and alpha = f(inf) e^{iw(inf)}, beta = g(inf) e^{-iw(inf)}.  Iterating from
f = g = 0 gives f = sum f_n, g = sum g_n, each term a nested integral that is
bounded factorially in n; those bounds drive the stopping rule.

Cumulative integrals are taken on Gauss-Legendre panels with a Legendre
integration matrix, so every order costs one matrix product per panel.
"""

from __future__ import annotations

import cmath
import functools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import legendre as L
from scipy.integrate import IntegrationWarning, quad

from .errors import ConfigError, ConvergenceError, DivergenceError, IntegrationError
from .potentials import DeltaSpike, Exponential, Potential, SuperExponential
from .solver import check_strip
from .transfer import AmplitudePair

__all__ = [
    "SeriesResult",
    "born_first_order",
    "born_second_order",
    "second_order_terms",
    "volterra_series",
    "series_bounds",
    "PanelGrid",
    "panel_grid",
]

DEFAULT_NODES = 20
STRIP_MARGIN = 1e-3


# ---------------------------------------------------------------------------
# quadrature grid
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=8)
def _legendre_rule(n: int):
    t, wt = L.leggauss(n)
    # values -> Legendre coefficients -> antiderivative from -1 -> values at t
    vander = L.legvander(t, n - 1)
    to_coef = np.linalg.inv(vander)
    anti = L.legint(np.eye(n), lbnd=-1, axis=0)
    cum = L.legvander(t, n) @ anti @ to_coef
    return t, wt, cum


@dataclass(frozen=True)
class PanelGrid:
    """Nodes grouped in panels; ``cumulative`` integrates from the left end."""

    x: np.ndarray  # shape (panels, nodes)
    half_width: np.ndarray  # shape (panels, 1)
    weights: np.ndarray  # shape (panels, nodes), includes half widths
    cum_matrix: np.ndarray  # shape (nodes, nodes)

    def cumulative(self, f: np.ndarray, start: complex = 0j) -> np.ndarray:
        local = self.half_width * (f @ self.cum_matrix.T)
        totals = np.sum(f * self.weights, axis=1)
        offsets = start + np.concatenate(([0.0], np.cumsum(totals)[:-1]))
        return local + offsets[:, None]

    def integral(self, f: np.ndarray) -> complex:
        return complex(np.sum(f * self.weights))


def panel_grid(p: Potential, kappa: complex, eps: float, nodes: int = DEFAULT_NODES,
               max_width: float | None = None) -> tuple[PanelGrid, np.ndarray]:
    """Panels over the smooth segments of ``p``; returns the grid and V on it."""
    t, wt, cum = _legendre_rule(nodes)
    k = abs(complex(kappa))
    width = 4.0 / max(k, 1e-12)
    if max_width is not None:
        width = min(width, max_width)
    xs, hs, vs = [], [], []
    for seg in p.segments(eps):
        length = seg.stop - seg.start
        if length <= 0:
            continue
        count = max(8, int(math.ceil(length / width)))
        edges = np.linspace(seg.start, seg.stop, count + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * np.diff(edges)
        x = mid[:, None] + half[:, None] * t[None, :]
        xs.append(x)
        hs.append(half)
        vs.append(np.asarray(seg.func(x), dtype=float).reshape(x.shape))
    if not xs:
        empty = np.zeros((0, nodes))
        return PanelGrid(empty, np.zeros((0, 1)), empty, cum), empty
    x = np.vstack(xs)
    half = np.concatenate(hs)[:, None]
    grid = PanelGrid(x, half, half * wt[None, :], cum)
    return grid, np.vstack(vs)


def _series_eps(p: Potential, kappa: complex, base: float | None) -> float:
    vmax = p.max_value
    eps = base if base is not None else 1e-14 * max(vmax, 1e-300)
    # e^{-2i kappa x} grows to the right for Im k > 0, e^{2i kappa x} to the
    # left for Im k < 0; either way the truncation must beat exp(2|Im k||x|)
    g = abs(complex(kappa).imag)
    if g == 0:
        return eps
    slopes = [t.slope for t in p.tails if isinstance(t, Exponential)]
    if slopes and g < min(slopes):
        s = min(slopes)
        # the integrands grow like exp(2|Im k||x|) against the decay exp(-2s|x|)
        eps = math.exp(math.log(eps / max(vmax, 1e-300)) * s / (s - g)) * max(vmax, 1e-300)
        eps = max(eps, 1e-300)
    if any(isinstance(t, SuperExponential) for t in p.tails):
        lo, hi = p.support(eps)
        eps = max(eps * math.exp(-2.0 * g * max(abs(lo), abs(hi))), 1e-300)
    return eps


def _tail_integral(p: Potential, c: complex, lo: float, hi: float) -> complex:
    """Analytic contribution of exponential tails beyond [lo, hi] to int V e^{cx}."""
    left, right = p.tails
    total = 0j
    if isinstance(left, Exponential):
        total += left.integral(c, lo, "left")
    if isinstance(right, Exponential):
        total += right.integral(c, hi, "right")
    return complex(total)


def _reject_spikes(p: Potential, what: str) -> None:
    if p.spikes():
        raise ConfigError(f"{what} is not defined for delta spikes; use the solver or the oracle")


# ---------------------------------------------------------------------------
# Born terms
# ---------------------------------------------------------------------------


def born_first_order(p: Potential, kappa: complex, rel_tol: float = 1e-12) -> AmplitudePair:
    """alpha_1 = int V and beta_1 = int V e^{-2i kappa x}."""
    k = complex(kappa)
    check_strip(p, k, need_beta=True, margin=STRIP_MARGIN)
    eps = _series_eps(p, k, None)
    alpha = beta = 0j
    err = 0.0
    span = 20.0 / max(abs(k), 1e-12)
    segments = p.segments(eps) if not isinstance(p, DeltaSpike) else []
    for seg in segments:
        f = seg.func
        pieces = max(1, int(math.ceil((seg.stop - seg.start) / span)))
        edges = np.linspace(seg.start, seg.stop, pieces + 1)
        for x0, x1 in zip(edges[:-1], edges[1:]):
            with warnings.catch_warnings():
                # cancellation in a part that is zero by symmetry trips the
                # roundoff detector; the returned error estimate is kept
                warnings.simplefilter("ignore", IntegrationWarning)
                a_val, a_err = quad(lambda x: float(f(x)), x0, x1, epsabs=0.0, epsrel=rel_tol, limit=200)
                b_val, b_err = quad(
                    lambda x: complex(f(x)) * cmath.exp(-2j * k * x),
                    x0, x1, complex_func=True, epsabs=0.0, epsrel=rel_tol, limit=200,
                )
            alpha += a_val
            beta += b_val
            err += abs(a_err) + abs(b_err)
    for pos, v0 in p.spikes():
        alpha += v0
        beta += v0 * cmath.exp(-2j * k * pos)
    if not p.is_finite_range and not isinstance(p, DeltaSpike):
        lo, hi = p.support(eps)
        alpha += _tail_integral(p, 0j, lo, hi)
        beta += _tail_integral(p, -2j * k, lo, hi)
    return AmplitudePair(k, complex(alpha), complex(beta), error_estimate=err)


def _second_order_on(grid: PanelGrid, v: np.ndarray, k: complex) -> tuple[complex, complex]:
    e_minus = np.exp(-2j * k * grid.x)
    c0 = grid.cumulative(v.astype(complex))
    cm = grid.cumulative(v * e_minus)
    a2 = grid.integral(v * (cm / e_minus - c0)) / (2j * k)
    b2 = grid.integral(v * (cm - e_minus * c0)) / (2j * k)
    return a2, b2


def second_order_terms(p: Potential, kappa: complex, tol: float = 1e-10,
                       max_refinements: int = 6) -> tuple[complex, complex, float]:
    """(alpha_2, beta_2, error estimate) from the ordered double integrals.

    The inner integrals are cumulative on the panel grid; the grid is halved
    until two successive results agree to ``tol`` (relative to the first order
    scale).
    """
    _reject_spikes(p, "the second Born term")
    k = complex(kappa)
    if k == 0:
        raise ConfigError("second Born term needs kappa != 0")
    check_strip(p, k, need_beta=True, margin=STRIP_MARGIN)
    eps = _series_eps(p, k, None)
    width = None
    prev = None
    for _ in range(max_refinements):
        grid, v = panel_grid(p, k, eps, max_width=width)
        cur = _second_order_on(grid, v, k)
        if width is None:
            width = float(np.max(2 * grid.half_width)) if grid.x.size else 1.0
        if prev is not None:
            diff = max(abs(cur[0] - prev[0]), abs(cur[1] - prev[1]))
            scale = max(abs(cur[0]), abs(cur[1]), 1e-300)
            if diff <= tol * scale:
                return cur[0], cur[1], diff
        prev = cur
        width *= 0.5
    raise IntegrationError(f"second Born term did not converge to {tol:g} at kappa={k}")


def born_second_order(p: Potential, kappa: complex, tol: float = 1e-10) -> AmplitudePair:
    """First plus second Born approximation."""
    first = born_first_order(p, kappa)
    a2, b2, err = second_order_terms(p, kappa, tol)
    return AmplitudePair(
        first.kappa,
        first.alpha + a2,
        first.beta + b2,
        error_estimate=(first.error_estimate or 0.0) + err,
    )


# ---------------------------------------------------------------------------
# Volterra iteration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesResult:
    kappa: complex
    alpha: complex
    beta: complex
    f_partial: list[complex]  # partial sums of f(inf) by order
    g_partial: list[complex]
    f_terms: list[complex]  # f_n(inf)
    g_terms: list[complex]
    w_inf: complex
    u_minus: complex
    u_plus: complex
    converged: bool
    terms_used: int
    remainder_bound: float
    bounds: list[dict[str, float]] = field(default_factory=list)


def _phase_data(p: Potential, k: complex, eps: float):
    grid, v = panel_grid(p, k, eps)
    lo, hi = p.support(eps)
    left, _ = p.tails
    w_start = 0j
    if isinstance(left, Exponential):
        w_start = complex(left.integral(0j, lo, "left")) / (2 * k)
    w = grid.cumulative(v.astype(complex)) / (2 * k) + w_start
    w_inf = complex(grid.integral(v) / (2 * k) + _tail_integral(p, 0j, lo, hi) / (2 * k))
    u_minus = (grid.integral(v * np.exp(-2j * k * grid.x)) + _tail_integral(p, -2j * k, lo, hi)) / (2 * k)
    u_plus = (grid.integral(v * np.exp(2j * k * grid.x)) + _tail_integral(p, 2j * k, lo, hi)) / (2 * k)
    return grid, v, w, w_inf, complex(u_minus), complex(u_plus), lo, hi


def _bound_terms(kappa: complex, n: int, w_abs: float, u_minus: float, u_plus: float) -> dict[str, float]:
    k2 = 2 * abs(kappa)

    def power(m: int) -> float:
        if m < 0:
            return math.nan
        return w_abs**m / math.factorial(m)

    return {
        "f_upper": k2 * power(n),
        "g_upper": k2 * power(n - 1) * u_minus,
        "f_lower": k2 * power(n - 2) * u_minus * u_plus,
        "g_lower": k2 * power(n - 1) * u_minus,
    }


def series_bounds(p: Potential, kappa: complex, n: int) -> dict[str, float]:
    """Majorants for the n-th terms (see ``SeriesResult``).

    Keys: ``f_upper`` = |2k||w|^n/n!, ``g_upper`` = |2k||w|^(n-1)/(n-1)! |u-|
    bound |f_n| and |g_n e^{-2iw}| for Im k >= 0; ``f_lower`` =
    |2k||w|^(n-2)/(n-2)! |u- u+| and ``g_lower`` = |2k||w|^(n-1)/(n-1)! |u-|
    bound |f_n e^{2iw}| and |g_n| for Im k < 0.  Also returns ``w``,
    ``u_minus``, ``u_plus`` (moduli).
    """
    if n < 1:
        raise ConfigError("series order starts at n = 1")
    k = complex(kappa)
    _reject_spikes(p, "the Volterra series")
    check_strip(p, k, need_beta=True, margin=STRIP_MARGIN)
    eps = _series_eps(p, k, None)
    _, _, _, w_inf, u_m, u_p, _, _ = _phase_data(p, k, eps)
    out = _bound_terms(k, n, abs(w_inf), abs(u_m), abs(u_p))
    out.update(w=abs(w_inf), u_minus=abs(u_m), u_plus=abs(u_p))
    return out


def _remainder(k: complex, n: int, w_abs: float, u_m: float, u_p: float, w_inf: complex) -> float:
    """Bound on |alpha - partial| + |beta - partial| after n orders."""
    tail_f = tail_g = 0.0
    upper = k.imag >= 0
    m = n + 1
    while True:
        b = _bound_terms(k, m, w_abs, u_m, u_p)
        bf = b["f_upper"] if upper else b["f_lower"]
        bg = b["g_upper"] if upper else b["g_lower"]
        tail_f += bf
        tail_g += bg
        if m > w_abs + 2 and max(bf, bg) <= 1e-17 * max(tail_f + tail_g, 1e-300):
            break
        m += 1
        if m > n + 10000:
            break
    ew = abs(cmath.exp(1j * w_inf))
    if upper:
        # alpha = f e^{iw}; beta = (g e^{-2iw}) e^{iw}
        return ew * (tail_f + tail_g)
    # alpha = (f e^{2iw}) e^{-iw}; beta = g e^{-iw}
    return (tail_f + tail_g) / ew


def volterra_series(p: Potential, kappa: complex, n_max: int = 200, tol: float = 1e-12) -> SeriesResult:
    """Iterate the f/g Volterra equations until the remainder bound is below ``tol``."""
    _reject_spikes(p, "the Volterra series")
    k = complex(kappa)
    if k == 0:
        raise ConfigError("Volterra series needs kappa != 0")
    try:
        check_strip(p, k, need_beta=True, margin=STRIP_MARGIN)
    except Exception as exc:
        raise DivergenceError(f"series diverges outside the convergence strip: {exc}") from exc
    eps = _series_eps(p, k, None)
    grid, v, w, w_inf, u_m, u_p, lo, hi = _phase_data(p, k, eps)
    if not grid.x.size:
        zero = [0j]
        return SeriesResult(k, 0j, 0j, zero, zero, zero, zero, 0j, 0j, 0j, True, 0, 0.0, [])

    phase = np.exp(2j * (k * grid.x - w))
    p_plus = v / (2j * k) * phase
    p_minus = -v / (2j * k) / phase
    f0 = v * np.exp(-1j * w)
    g0 = v * np.exp(-2j * k * grid.x + 1j * w)
    left, _ = p.tails
    f_start = g_start = 0j
    if isinstance(left, Exponential):
        f_start = complex(left.integral(0j, lo, "left"))
        g_start = complex(left.integral(-2j * k, lo, "left"))
    f_int, g_int = f0, g0
    # right tail at first order, with w frozen at w(inf)
    _, right = p.tails
    f_end = g_end = 0j
    if isinstance(right, Exponential):
        f_end = complex(right.integral(0j, hi, "right")) * cmath.exp(-1j * w_inf)
        g_end = complex(right.integral(-2j * k, hi, "right")) * cmath.exp(1j * w_inf)

    w_abs, um_abs, up_abs = abs(w_inf), abs(u_m), abs(u_p)
    f_terms, g_terms, f_part, g_part, bounds = [], [], [], [], []
    f_sum = g_sum = 0j
    growth = 0
    last = math.inf
    converged = False
    remainder = math.inf
    for n in range(1, n_max + 1):
        f0_n, g0_n = (f_start, g_start) if n == 1 else (0j, 0j)
        f_n = grid.cumulative(f_int, f0_n)
        g_n = grid.cumulative(g_int, g0_n)
        # Gauss nodes are interior, so the value at the right end is a full integral
        fi = f0_n + grid.integral(f_int) + (f_end if n == 1 else 0j)
        gi = g0_n + grid.integral(g_int) + (g_end if n == 1 else 0j)
        f_terms.append(fi)
        g_terms.append(gi)
        f_sum += fi
        g_sum += gi
        f_part.append(f_sum)
        g_part.append(g_sum)
        bounds.append(_bound_terms(k, n, w_abs, um_abs, up_abs))
        remainder = _remainder(k, n, w_abs, um_abs, up_abs, w_inf)
        # the majorants are not strict for complex u-, so the last term must
        # be small as well
        if remainder < tol and abs(fi) + abs(gi) < tol:
            converged = True
            break
        size = abs(fi) + abs(gi)
        if n > 2 * w_abs + 5 and size > last:
            growth += 1
            if growth >= 3:
                raise DivergenceError(f"series terms grow at order {n} (kappa={k})")
        else:
            growth = 0
        last = size
        if not (np.all(np.isfinite(f_n)) and np.all(np.isfinite(g_n))):
            raise DivergenceError(f"series terms overflowed at order {n} (kappa={k})")
        f_int, g_int = p_plus * g_n, p_minus * f_n
    if not converged:
        raise ConvergenceError(
            f"Volterra series: remainder bound {remainder:.3g} > tol {tol:.3g} after {n_max} terms"
        )
    alpha = f_sum * cmath.exp(1j * w_inf)
    beta = g_sum * cmath.exp(-1j * w_inf)
    return SeriesResult(
        k, alpha, beta, f_part, g_part, f_terms, g_terms, w_inf, u_m, u_p,
        converged, len(f_terms), remainder, bounds,
    )
