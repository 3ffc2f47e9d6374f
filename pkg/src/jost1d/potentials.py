"""Local barrier potentials V(x) >= 0.

Four shapes are supported: closed-form ``AnalyticPotential`` objects (the
builtin families), sampled ``GridPotential`` data, zero-width ``DeltaSpike``
barriers and ``CompositePotential`` sums of displaced, non-overlapping parts.

Every potential knows how its tails decay (``TailKind``) so that the solvers
can truncate the real line and decide where in the complex momentum plane the
amplitudes remain analytic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import ConfigError

__all__ = [
    "CompactSupport",
    "Exponential",
    "SuperExponential",
    "TailKind",
    "Potential",
    "AnalyticPotential",
    "GridPotential",
    "DeltaSpike",
    "CompositePotential",
    "Segment",
    "evaluate",
    "effective_support",
    "displace",
    "builtin",
    "from_config",
    "BUILTIN_FAMILIES",
    "DEFAULT_EPS_REL",
]

DEFAULT_EPS_REL = 1e-12


# ---------------------------------------------------------------------------
# Tail classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompactSupport:
    pass


@dataclass(frozen=True)
class Exponential:
    """Tail of the form ``amplitude * exp(-2 * slope * |x - edge|)``.

    ``slope`` is the decay constant s of the amplitude analysis: the strip of
    analyticity in kappa has half-width s.
    """

    slope: float
    amplitude: float
    edge: float = 0.0

    def __post_init__(self):
        if not self.slope > 0:
            raise ValueError("exponential tail slope must be positive")
        if self.amplitude < 0:
            raise ValueError("exponential tail amplitude must be non-negative")

    def shifted(self, d: float) -> "Exponential":
        return replace(self, edge=self.edge + d)

    def integral(self, c: complex, cut: float, side: str) -> complex:
        """Integral of tail(x) * exp(c x) beyond ``cut`` (towards +/- infinity)."""
        s2 = 2.0 * self.slope
        if side == "right":
            rate = c - s2
            if rate.real >= 0:
                return complex("nan")
            return -self.amplitude * np.exp(-s2 * (cut - self.edge) + c * cut) / rate
        rate = c + s2
        if rate.real <= 0:
            return complex("nan")
        return self.amplitude * np.exp(s2 * (cut - self.edge) + c * cut) / rate


@dataclass(frozen=True)
class SuperExponential:
    pass


TailKind = CompactSupport | Exponential | SuperExponential


def _shift_tail(t: TailKind, d: float) -> TailKind:
    return t.shifted(d) if isinstance(t, Exponential) else t


@dataclass(frozen=True)
class Segment:
    """Interval on which V is smooth, with a vectorized evaluator."""

    start: float
    stop: float
    func: Callable[[np.ndarray], np.ndarray]


# ---------------------------------------------------------------------------
# Potential variants
# ---------------------------------------------------------------------------


class Potential:
    """Common interface.  Instances are immutable."""

    tails: tuple[TailKind, TailKind] = (CompactSupport(), CompactSupport())
    family: str | None = None
    params: Mapping[str, float] = {}
    displacement: float = 0.0

    def __call__(self, x):
        raise NotImplementedError

    @property
    def max_value(self) -> float:
        raise NotImplementedError

    def support(self, eps_v: float | None = None) -> tuple[float, float]:
        raise NotImplementedError

    def displaced(self, d: float) -> "Potential":
        raise NotImplementedError

    def segments(self, eps_v: float | None = None) -> list[Segment]:
        raise NotImplementedError

    def spikes(self) -> list[tuple[float, float]]:
        """(position, strength) of delta spikes; empty for regular potentials."""
        return []

    @property
    def is_even(self) -> bool:
        return False

    @property
    def is_finite_range(self) -> bool:
        return all(isinstance(t, CompactSupport) for t in self.tails)

    def analyticity_strip(self) -> tuple[float, float]:
        """(lower, upper) bounds on Im kappa inside which alpha and beta are analytic.

        alpha and a are analytic above ``-min(s_left, s_right)``; beta and b are
        confined to ``-s_left < Im kappa < s_right``.
        """
        left, right = self.tails
        lo = -left.slope if isinstance(left, Exponential) else -math.inf
        hi = right.slope if isinstance(right, Exponential) else math.inf
        return lo, hi

    def alpha_strip_lower(self) -> float:
        slopes = [t.slope for t in self.tails if isinstance(t, Exponential)]
        return -min(slopes) if slopes else -math.inf

    def _default_eps(self, eps_v: float | None) -> float:
        if eps_v is not None:
            if not eps_v > 0:
                raise ValueError("eps_v must be positive")
            return eps_v
        return DEFAULT_EPS_REL * max(self.max_value, 1e-300)


@dataclass(frozen=True, eq=False)
class AnalyticPotential(Potential):
    """Closed-form potential.

    ``func`` must accept numpy arrays.  ``window`` is the exact support for
    compact tails; for decaying tails it is the core region and the effective
    support is found by solving ``tail(x) = eps_v``.  ``breakpoints`` lists
    points where V or its derivatives jump (integrators stop there).
    """

    func: Callable[[np.ndarray], np.ndarray]
    window: tuple[float, float]
    tails: tuple[TailKind, TailKind] = (CompactSupport(), CompactSupport())
    breakpoints: tuple[float, ...] = ()
    peak: float = 1.0
    family: str | None = None
    params: Mapping[str, float] = field(default_factory=dict)
    displacement: float = 0.0
    even: bool = False
    # only used for SuperExponential tails: solves V(x) = eps on each side
    tail_solver: Callable[[float], tuple[float, float]] | None = None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.func(x - self.displacement), dtype=float)
        lo, hi = self.window
        left, right = self.tails
        d = self.displacement
        if isinstance(left, CompactSupport):
            out = np.where(x < lo + d, 0.0, out)
        if isinstance(right, CompactSupport):
            out = np.where(x > hi + d, 0.0, out)
        return out if out.ndim else float(out)

    @property
    def max_value(self) -> float:
        return self.peak

    @property
    def is_even(self) -> bool:
        return self.even and self.displacement == 0.0

    def support(self, eps_v=None):
        eps = self._default_eps(eps_v)
        d = self.displacement
        lo, hi = self.window[0] + d, self.window[1] + d
        left, right = self.tails
        # exponential tail edges are already displaced
        if isinstance(left, Exponential):
            lo = min(lo, _exp_cutoff(left, eps, "left"))
        if isinstance(right, Exponential):
            hi = max(hi, _exp_cutoff(right, eps, "right"))
        if self.tail_solver is not None and (
            isinstance(left, SuperExponential) or isinstance(right, SuperExponential)
        ):
            slo, shi = self.tail_solver(eps)
            if isinstance(left, SuperExponential):
                lo = min(lo, slo + d)
            if isinstance(right, SuperExponential):
                hi = max(hi, shi + d)
        return (lo, hi)

    def displaced(self, d):
        if d == 0:
            return self
        return replace(
            self,
            displacement=self.displacement + d,
            tails=(_shift_tail(self.tails[0], d), _shift_tail(self.tails[1], d)),
        )

    def segments(self, eps_v=None):
        lo, hi = self.support(eps_v)
        cuts = sorted({lo, hi, *(b + self.displacement for b in self.breakpoints)})
        cuts = [c for c in cuts if lo <= c <= hi]
        return [Segment(a, b, self) for a, b in zip(cuts[:-1], cuts[1:]) if b > a]


def _exp_cutoff(tail: Exponential, eps: float, side: str) -> float:
    if tail.amplitude <= eps:
        return tail.edge
    dist = math.log(tail.amplitude / eps) / (2.0 * tail.slope)
    return tail.edge - dist if side == "left" else tail.edge + dist


@dataclass(frozen=True, eq=False)
class GridPotential(Potential):
    """Sampled potential with monotone cubic Hermite (PCHIP) interpolation.

    PCHIP never overshoots the sample range on an interval, so non-negative
    samples give a non-negative interpolant.  Outside the sampled range V is
    zero when ``zero_outside`` is set, otherwise evaluation is an error.
    """

    x: tuple[float, ...]
    v: tuple[float, ...]
    zero_outside: bool = False
    displacement: float = 0.0
    family: str | None = "grid"

    def __post_init__(self):
        xs = np.asarray(self.x, dtype=float)
        vs = np.asarray(self.v, dtype=float)
        if xs.ndim != 1 or xs.size < 2 or xs.size != vs.size:
            raise ValueError("grid needs matching x and v arrays with at least 2 points")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("grid abscissas must be strictly increasing")
        if np.any(vs < 0) or not np.all(np.isfinite(vs)):
            raise ValueError("grid potential samples must be finite and non-negative")
        object.__setattr__(self, "_interp", PchipInterpolator(xs, vs, extrapolate=False))

    @property
    def params(self):
        return {}

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        u = x - self.displacement
        lo, hi = self.x[0], self.x[-1]
        outside = (u < lo) | (u > hi)
        if np.any(outside) and not self.zero_outside:
            raise ValueError(
                f"x outside grid range [{lo + self.displacement}, {hi + self.displacement}] "
                "and no tail model: extrapolation refused"
            )
        out = np.where(outside, 0.0, np.clip(self._interp(np.clip(u, lo, hi)), 0.0, None))
        return out if out.ndim else float(out)

    @property
    def max_value(self):
        return float(max(self.v))

    def support(self, eps_v=None):
        eps = self._default_eps(eps_v)
        xs = np.asarray(self.x)
        above = np.nonzero(np.asarray(self.v) >= eps)[0]
        d = self.displacement
        if above.size == 0:
            mid = 0.5 * (xs[0] + xs[-1]) + d
            return (mid, mid)
        i0 = max(above[0] - 1, 0)
        i1 = min(above[-1] + 1, xs.size - 1)
        return (float(xs[i0]) + d, float(xs[i1]) + d)

    def displaced(self, d):
        return self if d == 0 else replace(self, displacement=self.displacement + d)

    def segments(self, eps_v=None):
        lo, hi = self.support(eps_v)
        if hi <= lo:
            return []
        return [Segment(lo, hi, self)]


@dataclass(frozen=True, eq=False)
class DeltaSpike(Potential):
    """v0 * delta(x - position).  Never sampled; solvers apply a derivative jump."""

    strength: float
    position: float = 0.0
    family: str | None = "delta"

    def __post_init__(self):
        if not self.strength > 0:
            raise ValueError("delta spike strength must be positive")

    @property
    def params(self):
        return {"v0": self.strength}

    @property
    def displacement(self):
        return self.position

    def __call__(self, x):
        raise ValueError("delta spike is not pointwise evaluable")

    @property
    def max_value(self):
        return math.inf

    @property
    def is_even(self):
        return self.position == 0.0

    def support(self, eps_v=None):
        return (self.position, self.position)

    def displaced(self, d):
        return self if d == 0 else replace(self, position=self.position + d)

    def segments(self, eps_v=None):
        return []

    def spikes(self):
        return [(self.position, self.strength)]


@dataclass(frozen=True, eq=False)
class CompositePotential(Potential):
    """Sum of displaced parts with pairwise disjoint effective supports."""

    parts: tuple[tuple[Potential, float], ...]
    eps_v: float | None = None
    family: str | None = "composite"

    def __post_init__(self):
        if not self.parts:
            raise ValueError("composite potential needs at least one part")
        spans = sorted(
            (p.displaced(d).support(self._part_eps(p)), i) for i, (p, d) in enumerate(self.parts)
        )
        for (s1, _), (s2, _) in zip(spans[:-1], spans[1:]):
            if s2[0] < s1[1] or (s2[0] == s1[1] and s1[1] > s1[0] and s2[1] > s2[0]):
                raise ValueError(
                    "composite parts overlap; the superposition rule needs a forceless gap"
                )

    def _part_eps(self, p: Potential) -> float | None:
        return None if isinstance(p, DeltaSpike) else self.eps_v

    @property
    def params(self):
        return {}

    @property
    def placed(self) -> list[Potential]:
        """Parts with their displacement applied, sorted left to right."""
        items = [p.displaced(d) for p, d in self.parts]
        return sorted(items, key=lambda q: q.support(self._part_eps(q))[0])

    @property
    def tails(self):
        placed = self.placed
        return (placed[0].tails[0], placed[-1].tails[1])

    def __call__(self, x):
        # the regular part only; spikes are reported by spikes()
        x = np.asarray(x, dtype=float)
        total = np.zeros_like(x)
        for q in self.placed:
            if not isinstance(q, DeltaSpike):
                total = total + q(x)
        return total if total.ndim else float(total)

    @property
    def max_value(self):
        return max(p.max_value for p, _ in self.parts if not isinstance(p, DeltaSpike)) if any(
            not isinstance(p, DeltaSpike) for p, _ in self.parts
        ) else math.inf

    def support(self, eps_v=None):
        spans = [q.support(eps_v if not isinstance(q, DeltaSpike) else None) for q in self.placed]
        return (min(s[0] for s in spans), max(s[1] for s in spans))

    def displaced(self, d):
        if d == 0:
            return self
        return replace(self, parts=tuple((p, dd + d) for p, dd in self.parts))

    def segments(self, eps_v=None):
        out: list[Segment] = []
        for q in self.placed:
            out.extend(q.segments(eps_v))
        return sorted(out, key=lambda s: s.start)

    def spikes(self):
        out = []
        for q in self.placed:
            out.extend(q.spikes())
        return sorted(out)

    @property
    def is_even(self):
        return False

    def analyticity_strip(self):
        lo, hi = -math.inf, math.inf
        for q in self.placed:
            l2, h2 = q.analyticity_strip()
            lo, hi = max(lo, l2), min(hi, h2)
        return lo, hi

    def alpha_strip_lower(self):
        return max(q.alpha_strip_lower() for q in self.placed)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def evaluate(p: Potential, x: float) -> float:
    return float(p(x))


def effective_support(p: Potential, eps_v: float | None = None) -> tuple[float, float]:
    return p.support(eps_v)


def displace(p: Potential, d: float) -> Potential:
    return p.displaced(d)


def _require(params: Mapping[str, Any], *names: str) -> list[float]:
    out = []
    for n in names:
        if n not in params:
            raise ConfigError(f"missing parameter {n!r}")
        try:
            val = float(params[n])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"parameter {n!r} must be a number") from exc
        if not math.isfinite(val):
            raise ConfigError(f"parameter {n!r} must be finite")
        out.append(val)
    return out


def _positive(name: str, val: float, allow_zero: bool = False) -> None:
    if val < 0 or (val == 0 and not allow_zero):
        raise ConfigError(f"parameter {name!r} must be {'non-negative' if allow_zero else 'positive'}")


def square(V0: float, x0: float) -> AnalyticPotential:
    return AnalyticPotential(
        func=lambda x: np.where(np.abs(x) <= x0, V0, 0.0),
        window=(-x0, x0),
        breakpoints=(-x0, x0),
        peak=V0,
        family="square",
        params={"V0": V0, "x0": x0},
        even=True,
    )


def exponential(V0: float, x0: float) -> AnalyticPotential:
    tail = dict(slope=1.0 / (2.0 * x0), amplitude=V0, edge=0.0)
    return AnalyticPotential(
        func=lambda x: V0 * np.exp(-np.abs(x) / x0),
        window=(0.0, 0.0),
        tails=(Exponential(**tail), Exponential(**tail)),
        breakpoints=(0.0,),
        peak=V0,
        family="exponential",
        params={"V0": V0, "x0": x0},
        even=True,
    )


def poschl_teller(V0: float, x0: float) -> AnalyticPotential:
    # 1/cosh^2(u) ~ 4 exp(-2|u|)
    tail = dict(slope=1.0 / x0, amplitude=4.0 * V0, edge=0.0)
    return AnalyticPotential(
        func=lambda x: V0 / np.cosh(np.clip(x / x0, -350, 350)) ** 2,
        window=(0.0, 0.0),
        tails=(Exponential(**tail), Exponential(**tail)),
        peak=V0,
        family="poschl_teller",
        params={"V0": V0, "x0": x0},
        even=True,
    )


def gaussian(V0: float, x0: float) -> AnalyticPotential:
    def reach(eps):
        if V0 <= eps:
            return (0.0, 0.0)
        r = x0 * math.sqrt(math.log(V0 / eps))
        return (-r, r)

    return AnalyticPotential(
        func=lambda x: V0 * np.exp(-((x / x0) ** 2)),
        window=(0.0, 0.0),
        tails=(SuperExponential(), SuperExponential()),
        peak=V0,
        family="gaussian",
        params={"V0": V0, "x0": x0},
        even=True,
        tail_solver=reach,
    )


def zero_potential() -> AnalyticPotential:
    return AnalyticPotential(
        func=lambda x: np.zeros_like(x),
        window=(0.0, 0.0),
        peak=0.0,
        family="zero",
        params={},
        even=True,
    )


def _build_square(params):
    V0, x0 = _require(params, "V0", "x0")
    _positive("V0", V0, allow_zero=True)
    _positive("x0", x0)
    return square(V0, x0)


def _build_exponential(params):
    V0, x0 = _require(params, "V0", "x0")
    _positive("V0", V0)
    _positive("x0", x0)
    return exponential(V0, x0)


def _build_pt(params):
    V0, x0 = _require(params, "V0", "x0")
    _positive("V0", V0)
    _positive("x0", x0)
    return poschl_teller(V0, x0)


def _build_gaussian(params):
    V0, x0 = _require(params, "V0", "x0")
    _positive("V0", V0)
    _positive("x0", x0)
    return gaussian(V0, x0)


def _build_delta(params):
    (v0,) = _require(params, "v0")
    _positive("v0", v0)
    (pos,) = _require({"position": params.get("position", 0.0)}, "position")
    return DeltaSpike(v0, pos)


def _build_double(params):
    """Two identical square barriers centred at -d/2 and +d/2."""
    V0, x0, d = _require(params, "V0", "x0", "d")
    _positive("V0", V0)
    _positive("x0", x0)
    if d <= 2 * x0:
        raise ConfigError("double barrier needs d > 2*x0 (non-overlapping)")
    part = square(V0, x0)
    return CompositePotential(((part, -d / 2), (part, d / 2)))


def _build_zero(params):
    if params:
        raise ConfigError("the zero potential takes no parameters")
    return zero_potential()


BUILTIN_FAMILIES: dict[str, Callable[[Mapping[str, Any]], Potential]] = {
    "square": _build_square,
    "exponential": _build_exponential,
    "poschl_teller": _build_pt,
    "gaussian": _build_gaussian,
    "delta": _build_delta,
    "double": _build_double,
    "zero": _build_zero,
}


def builtin(name: str, params: Mapping[str, Any]) -> Potential:
    try:
        factory = BUILTIN_FAMILIES[name]
    except KeyError:
        raise ConfigError(
            f"unknown potential family {name!r}; choose from {sorted(BUILTIN_FAMILIES)}"
        ) from None
    return factory(params)


def from_config(cfg: Mapping[str, Any]) -> Potential:
    """Build a potential from its JSON configuration mapping.

    Schema: ``{"family": ..., "params": {...}, "displacement": number}``;
    ``"composite"`` holds ``"parts": [config, ...]``, ``"grid"`` holds
    ``"x"`` and ``"v"`` arrays (optional ``"zero_outside"``).
    """
    if not isinstance(cfg, Mapping):
        raise ConfigError("potential config must be a JSON object")
    family = cfg.get("family")
    if not isinstance(family, str):
        raise ConfigError("potential config needs a string 'family'")
    try:
        shift = float(cfg.get("displacement", 0.0))
    except (TypeError, ValueError) as exc:
        raise ConfigError("displacement must be a number") from exc
    try:
        if family == "composite":
            parts = cfg.get("parts")
            if not isinstance(parts, Sequence) or not parts:
                raise ConfigError("composite config needs a non-empty 'parts' list")
            pot: Potential = CompositePotential(tuple((from_config(c), 0.0) for c in parts))
        elif family == "grid":
            if "x" not in cfg or "v" not in cfg:
                raise ConfigError("grid config needs 'x' and 'v'")
            pot = GridPotential(
                tuple(map(float, cfg["x"])),
                tuple(map(float, cfg["v"])),
                zero_outside=bool(cfg.get("zero_outside", False)),
            )
        else:
            params = cfg.get("params", {})
            if not isinstance(params, Mapping):
                raise ConfigError("'params' must be an object")
            pot = builtin(family, params)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return pot.displaced(shift)
