"""Zeros of analytic handles in the complex kappa-plane.

Zeros are counted with the argument principle: the change of arg f along a
closed contour, tracked by adaptive bisection of the contour until every step
changes the phase by less than ``arg_step``.  ``find_zeros`` quadrisects a
rectangle down to cells holding a single zero and polishes each one with a
secant iteration.  Known poles (for example the lattices of an exactly
solvable tail) can be declared so that cells containing them are counted
correctly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

import numpy as np

from .errors import ConfigError, ContourError, ConvergenceError, JostError

__all__ = [
    "Rectangle",
    "Circle",
    "HalfDisc",
    "WindingOptions",
    "Zero",
    "ZeroReport",
    "winding_number",
    "find_zeros",
    "refine_zero",
    "upper_half_zero_count",
]

Handle = Callable[[complex], complex]


# ---------------------------------------------------------------------------
# contours
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rectangle:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ConfigError(f"degenerate rectangle {self}")

    @property
    def size(self) -> float:
        return max(self.re_max - self.re_min, self.im_max - self.im_min)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return (
            self.re_min - slack <= z.real <= self.re_max + slack
            and self.im_min - slack <= z.imag <= self.im_max + slack
        )

    def corners(self) -> list[complex]:
        return [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]

    def pieces(self):
        c = self.corners()
        return [_line(c[i], c[(i + 1) % 4]) for i in range(4)]

    def split(self, fx: float = 0.5, fy: float = 0.5) -> list["Rectangle"]:
        xm = self.re_min + fx * (self.re_max - self.re_min)
        ym = self.im_min + fy * (self.im_max - self.im_min)
        return [
            Rectangle(self.re_min, xm, self.im_min, ym),
            Rectangle(xm, self.re_max, self.im_min, ym),
            Rectangle(self.re_min, xm, ym, self.im_max),
            Rectangle(xm, self.re_max, ym, self.im_max),
        ]

    def grown(self, frac: float) -> "Rectangle":
        dx = frac * (self.re_max - self.re_min)
        dy = frac * (self.im_max - self.im_min)
        return Rectangle(self.re_min - dx, self.re_max + dx, self.im_min - dy, self.im_max + dy)


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def pieces(self):
        c, r = complex(self.center), self.radius
        return [
            _arc(c, r, 2 * math.pi * i / 4, 2 * math.pi * (i + 1) / 4) for i in range(4)
        ]

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + slack


@dataclass(frozen=True)
class HalfDisc:
    """Upper half-disc of radius R whose flat side runs along Im kappa = offset."""

    radius: float
    offset: float = 1e-2

    def pieces(self):
        r, c = self.radius, complex(0.0, self.offset)
        return [_line(c - r, c + r), _arc(c, r, 0.0, math.pi / 2), _arc(c, r, math.pi / 2, math.pi)]

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return z.imag >= self.offset - slack and abs(z - 1j * self.offset) <= self.radius + slack


def _line(z0: complex, z1: complex):
    return lambda t: z0 + (z1 - z0) * t


def _arc(c: complex, r: float, t0: float, t1: float):
    return lambda t: c + r * cmath.exp(1j * (t0 + (t1 - t0) * t))


# ---------------------------------------------------------------------------
# winding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WindingOptions:
    initial_points: int = 16  # per contour piece
    arg_step: float = math.pi / 4
    min_param_step: float = 1e-12
    max_samples: int = 200_000
    # a sample below boundary_rel times the median |f| flags a zero on the contour
    boundary_rel: float = 1e-3


DEFAULT_WINDING = WindingOptions()


class _Evaluator:
    """Caches f and counts distinct evaluations."""

    def __init__(self, f: Handle):
        self.f = f
        self.cache: dict[complex, complex] = {}

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        try:
            return self.cache[z]
        except KeyError:
            pass
        try:
            v = complex(self.f(z))
        except JostError as exc:
            raise ContourError(f"handle failed at kappa={z}: {exc}") from exc
        if not cmath.isfinite(v):
            raise ContourError(f"handle is not finite at kappa={z}; a pole on the contour?")
        self.cache[z] = v
        return v

    @property
    def count(self) -> int:
        return len(self.cache)


def _track_piece(ev: _Evaluator, path, opts: WindingOptions, budget: list[int]):
    """Total arg change along one piece, and the sampled |f| values."""
    ts = np.linspace(0.0, 1.0, opts.initial_points + 1)
    stack = [(float(ts[i]), float(ts[i + 1])) for i in range(len(ts) - 1)][::-1]
    total = 0.0
    mags = []
    while stack:
        t0, t1 = stack.pop()
        f0, f1 = ev(path(t0)), ev(path(t1))
        if f0 == 0 or f1 == 0:
            raise ContourError("zero on the contour: shift contour")
        step = cmath.phase(f1 / f0)
        if abs(step) > opts.arg_step:
            if t1 - t0 < opts.min_param_step:
                raise ContourError("phase cannot be resolved: zero on or near the contour, shift contour")
            tm = 0.5 * (t0 + t1)
            stack.append((tm, t1))
            stack.append((t0, tm))
            budget[0] += 1
            if budget[0] > opts.max_samples:
                raise ContourError("sample budget exhausted while tracking the phase")
            continue
        total += step
        mags.append(abs(f0))
    mags.append(abs(ev(path(1.0))))
    return total, mags


def _winding(ev: _Evaluator, contour, opts: WindingOptions) -> int:
    total = 0.0
    mags: list[float] = []
    budget = [0]
    for piece in contour.pieces():
        d, m = _track_piece(ev, piece, opts, budget)
        total += d
        mags.extend(m)
    turns = total / (2 * math.pi)
    n = round(turns)
    if abs(turns - n) > 0.05:
        raise ContourError(f"non-integer winding {turns:.4f}: shift contour")
    if opts.boundary_rel > 0 and mags:
        if min(mags) < opts.boundary_rel * float(np.median(mags)):
            raise ContourError("|f| nearly vanishes on the contour: shift contour")
    return int(n)


def winding_number(f: Handle, contour, opts: WindingOptions = DEFAULT_WINDING) -> int:
    """Zeros minus poles of ``f`` inside ``contour`` (Rectangle, Circle or HalfDisc)."""
    return _winding(_Evaluator(f), contour, opts)


# ---------------------------------------------------------------------------
# refinement
# ---------------------------------------------------------------------------


def refine_zero(
    f: Handle,
    seed: complex,
    tol: float = 1e-12,
    max_iter: int = 100,
    max_distance: float | None = None,
    step: float | None = None,
) -> complex:
    """Secant iteration from ``seed``; stops when |f| < tol or the step is below tol.

    The iterate may not wander more than ``max_distance`` from the seed
    (default max(1, |seed|)); leaving that disc counts as non-convergence.
    """
    z0 = complex(seed)
    h = step if step is not None else 1e-4 * max(1.0, abs(z0))
    reach = max_distance if max_distance is not None else max(1.0, abs(z0))
    z1 = z0 + h
    f0, f1 = complex(f(z0)), complex(f(z1))
    for _ in range(max_iter):
        if abs(f1) < tol:
            return z1
        denom = f1 - f0
        if denom == 0:
            raise ConvergenceError(f"secant stalled near {z1} (flat function)")
        z2 = z1 - f1 * (z1 - z0) / denom
        if not cmath.isfinite(z2) or abs(z2 - seed) > reach:
            raise ConvergenceError(f"secant iteration left the search region from seed {seed}")
        z0, f0 = z1, f1
        z1, f1 = z2, complex(f(z2))
        if abs(z1 - z0) < tol * max(1.0, abs(z1)):
            return z1
    raise ConvergenceError(f"secant iteration did not converge from seed {seed} in {max_iter} steps")


# ---------------------------------------------------------------------------
# recursive search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    location: complex
    multiplicity: int
    residual: float
    cluster: bool = False  # cell could not be resolved further

    def __iter__(self):
        return iter((self.location, self.multiplicity, self.residual))


@dataclass
class ZeroReport:
    zeros: list[Zero] = field(default_factory=list)
    poles: list[tuple[complex, int]] = field(default_factory=list)
    total_winding: int = 0
    contour_samples_used: int = 0
    unresolved: list[Rectangle] = field(default_factory=list)

    @property
    def locations(self) -> list[complex]:
        return [z.location for z in self.zeros]

    @property
    def zero_count(self) -> int:
        return sum(z.multiplicity for z in self.zeros)


_SPLIT_OFFSETS = (0.0271, -0.0313, 0.0419, -0.0157, 0.0607)


def _pole_order_inside(poles, cell: Rectangle) -> int:
    return sum(m for z, m in poles if cell.contains(z))


def find_zeros(
    f: Handle,
    rect: Rectangle,
    max_depth: int = 12,
    tol: float = 1e-10,
    poles: Iterable[tuple[complex, int]] = (),
    opts: WindingOptions = DEFAULT_WINDING,
) -> ZeroReport:
    """All zeros of ``f`` in ``rect`` with multiplicities.

    ``poles`` lists known poles as (location, order); they must not lie on
    the rectangle's boundary.  A cell whose zero count stays above one until
    its size drops below 10*tol, or until ``max_depth``, is reported as a
    cluster at its centre.
    """
    ev = _Evaluator(f)
    pole_list = [(complex(z), int(m)) for z, m in poles]
    report = ZeroReport(poles=[(z, m) for z, m in pole_list if rect.contains(z)])

    base = None
    for grow in (0.0, 0.01, -0.01):
        cell = rect.grown(grow) if grow else rect
        try:
            w = _winding(ev, cell, opts)
        except ContourError:
            continue
        base = (cell, w)
        break
    if base is None:
        raise ContourError("zero on the rectangle boundary: shift contour")
    cell, w = base
    report.total_winding = w
    count = w + _pole_order_inside(pole_list, cell)
    _search(ev, cell, count, 0, max_depth, tol, pole_list, opts, report)
    report.contour_samples_used = ev.count
    report.zeros = _ordered(report.zeros, max(100 * tol, 1e-9))
    return report


def _ordered(zeros, gap):
    """Sort by Im then Re, treating imaginary parts closer than gap as equal."""
    by_im = sorted(zeros, key=lambda z: z.location.imag)
    out, row = [], []
    for z in by_im:
        if row and z.location.imag - row[-1].location.imag > gap:
            out.extend(sorted(row, key=lambda w: w.location.real))
            row = []
        row.append(z)
    out.extend(sorted(row, key=lambda w: w.location.real))
    return out


def _search(ev, cell, count, depth, max_depth, tol, poles, opts, report):
    if count <= 0:
        if count < 0:
            report.unresolved.append(cell)
        return
    if count >= 1 and _try_refine(ev, cell, count, tol, opts, report):
        return
    if depth >= max_depth or cell.size < 10 * tol:
        c = cell.center
        report.zeros.append(Zero(c, count, abs(ev(c)), cluster=True))
        return
    for off in _SPLIT_OFFSETS:
        kids = cell.split(0.5 + off, 0.5 - 0.7 * off)
        try:
            counts = [_winding(ev, k, opts) + _pole_order_inside(poles, k) for k in kids]
        except ContourError:
            continue
        if sum(counts) != count:
            continue
        for k, n in zip(kids, counts):
            _search(ev, k, n, depth + 1, max_depth, tol, poles, opts, report)
        return
    report.unresolved.append(cell)


def _try_refine(ev, cell: Rectangle, count: int, tol: float, opts, report) -> bool:
    try:
        z = refine_zero(ev, cell.center, tol=tol * 1e-2, max_distance=cell.size,
                        step=1e-3 * cell.size)
    except (ConvergenceError, ContourError):
        return False
    if not cell.contains(z):
        return False
    if count > 1:
        # a multiple zero is accepted only if a small circle around it
        # accounts for the whole cell
        r = max(10 * tol, 1e-6 * cell.size)
        try:
            m = _winding(ev, Circle(z, r), replace(opts, boundary_rel=0.0))
        except ContourError:
            return False
        if m != count:
            return False
    report.zeros.append(Zero(z, count, abs(ev(z))))
    return True


# ---------------------------------------------------------------------------
# upper half-plane
# ---------------------------------------------------------------------------


def upper_half_zero_count(
    p,
    radius: float = 20.0,
    source: str = "solver",
    offset: float = 1e-2,
    opts: WindingOptions = DEFAULT_WINDING,
    solver_options=None,
) -> int:
    """Winding of a(kappa) around the upper half-disc of radius ``radius``.

    ``p`` is a Potential (``source`` = "solver" or "oracle") or directly a
    handle kappa -> a.  The flat side sits at Im kappa = ``offset`` because a
    has a pole at kappa = 0.
    """
    if callable(p) and not hasattr(p, "tails"):
        handle = p
    elif source == "solver":
        from .solver import SolverOptions, jost_a

        # the winding only needs a to a few digits
        counting = SolverOptions(ode_rel_tol=1e-8, ode_abs_tol=1e-10, phase_step=8.0)
        handle = jost_a(p, solver_options or counting)
    elif source == "oracle":
        from .errors import NoReferenceError
        from .oracles import oracle_for

        orc = oracle_for(p)
        if orc is None:
            raise NoReferenceError("no closed form known for this potential")
        handle = lambda k: orc(k).a  # noqa: E731
    else:
        raise ConfigError(f"unknown source {source!r}; use 'solver' or 'oracle'")
    return winding_number(handle, HalfDisc(radius, offset), opts)
