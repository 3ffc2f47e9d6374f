"""Closed-form scattering coefficients for exactly solvable barriers.

These are the references the numerical routes are tested against.  All of
them are valid at complex kappa; where the closed form has poles, the nearest
ones are reported alongside the value.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import NearZeroMomentumError, PoleError
from .potentials import AnalyticPotential, CompositePotential, DeltaSpike, Potential
from .specfun import log_gamma, regular_bessel
from .transfer import JostCoefficients, compose_many, displace_jost

__all__ = [
    "OracleResult",
    "square_barrier",
    "square_barrier_zero_residual",
    "exponential_barrier",
    "exponential_barrier_bessel_form",
    "poschl_teller",
    "poschl_teller_zeros",
    "poschl_teller_poles",
    "delta_barrier",
    "exp_tail_matching",
    "double_barrier_symmetric",
    "oracle_for",
    "a_pole_lattice",
]

POLE_RADIUS = 1e-12


@dataclass(frozen=True)
class OracleResult:
    kappa: complex
    jost: JostCoefficients
    nearest_singularities: list[complex] = field(default_factory=list)
    notes: str = ""

    @property
    def a(self) -> complex:
        return self.jost.a

    @property
    def b(self) -> complex:
        return self.jost.b

    @property
    def alpha(self) -> complex:
        return 2j * self.kappa * (1 - self.jost.a)

    @property
    def beta(self) -> complex:
        return 2j * self.kappa * self.jost.b


def _nonzero(kappa: complex) -> complex:
    k = complex(kappa)
    if k == 0:
        raise NearZeroMomentumError("kappa = 0 is a pole of a and b")
    return k


def _nearest(kappa: complex, candidates: list[complex], count: int = 4) -> list[complex]:
    return sorted(candidates, key=lambda c: abs(c - kappa))[:count]


def _check_lattice(kappa: complex, poles: list[complex], what: str) -> None:
    for pole in poles:
        if abs(kappa - pole) <= POLE_RADIUS * max(1.0, abs(pole)):
            raise PoleError(f"{what} has a pole at kappa={pole}", location=pole)


# ---------------------------------------------------------------------------
# square barrier
# ---------------------------------------------------------------------------


def _cos_sinc(p_sq: complex, x0: float) -> tuple[complex, complex]:
    """cos(2 x0 p) and sin(2 x0 p)/p as functions of p^2 (no branch cut)."""
    z_sq = 4.0 * x0 * x0 * p_sq
    if abs(z_sq) < 1e-6:
        # series in z^2 up to z^6
        c = 1 - z_sq / 2 + z_sq * z_sq / 24 - z_sq**3 / 720
        sinc = 1 - z_sq / 6 + z_sq * z_sq / 120 - z_sq**3 / 5040
        return c, 2.0 * x0 * sinc
    p = cmath.sqrt(p_sq)
    return cmath.cos(2 * x0 * p), cmath.sin(2 * x0 * p) / p


def _square_ab(V0: float, x0: float, k: complex) -> tuple[complex, complex]:
    p_sq = k * k - V0
    c, s_over_p = _cos_sinc(p_sq, x0)
    a = cmath.exp(2j * k * x0) * (c - 1j * (k * k + p_sq) / (2 * k) * s_over_p)
    b = V0 * s_over_p / (2j * k)
    return a, b


def square_barrier(V0: float, x0: float, kappa: complex) -> OracleResult:
    """V = V0 on |x| < x0.  a and beta are entire functions of kappa."""
    k = _nonzero(kappa)
    a, b = _square_ab(V0, x0, k)
    a_bar, b_bar = _square_ab(V0, x0, -k)
    return OracleResult(k, JostCoefficients(k, a, b, a_bar, b_bar), [], "entire")


def square_barrier_zero_residual(V0: float, x0: float, kappa: complex) -> complex:
    """exp(-4ipx0) - ((k - p)/(k + p))^2; its roots contain the zeros of a.

    Invariant under p -> -p.  The point p = 0 (kappa^2 = V0) is a spurious
    root that is not a zero of a.
    """
    k = complex(kappa)
    p = cmath.sqrt(k * k - V0)
    return cmath.exp(-4j * p * x0) - ((k - p) / (k + p)) ** 2


# ---------------------------------------------------------------------------
# exponential tails
# ---------------------------------------------------------------------------


def _tail_poles(s_lo: float, s_hi: float, n_max: int = 6) -> tuple[list[complex], list[complex]]:
    a_poles, b_poles = [], []
    for n in range(1, n_max + 1):
        if s_lo > 0:
            a_poles.append(-1j * n * s_lo)
            b_poles.append(-1j * n * s_lo)
        if s_hi > 0:
            a_poles.append(-1j * n * s_hi)
            b_poles.append(1j * n * s_hi)
    return sorted(set(a_poles), key=abs), sorted(set(b_poles), key=abs)


def _exp_tail_values(zeta, v_lo, v_hi, s_lo, s_hi, x_lo, x_hi, k):
    z0, dz0, z1, dz1 = zeta
    ik = 1j * k
    # left: y_- = exp(-ikx) Jhat_{nu-}(sigma- exp(s-(x - x-)))
    if v_lo == 0:
        jl, djl = 1 + 0j, 0j
        sig_l = 0j
    else:
        nu_l = -ik / s_lo
        sig_l = 1j * v_lo / s_lo
        res = regular_bessel(nu_l, sig_l)
        jl, djl = res.value, res.derivative
    e_lo = cmath.exp(-ik * x_lo)
    y0 = e_lo * jl
    dy0 = e_lo * (-ik * jl + (s_lo * sig_l * djl if v_lo else 0))
    Y = y0 * z0 + dy0 * z1
    dY = y0 * dz0 + dy0 * dz1
    # right: y_- = a exp(-ikx) Jhat_{-nu+}(u) + b exp(ikx) Jhat_{nu+}(u)
    if v_hi == 0:
        jp, djp, jm, djm = 1 + 0j, 0j, 1 + 0j, 0j
        sig_r = 0j
    else:
        nu_r = -ik / s_hi
        sig_r = 1j * v_hi / s_hi
        rp = regular_bessel(nu_r, sig_r)
        jp, djp = rp.value, rp.derivative
        try:
            rm = regular_bessel(-nu_r, sig_r)
            jm, djm = rm.value, rm.derivative
        except PoleError:
            jm = djm = complex("nan")
    e_p = cmath.exp(ik * x_hi)
    F = e_p * jp
    dF = e_p * (ik * jp - (s_hi * sig_r * djp if v_hi else 0))
    G = jm / e_p
    dG = (-ik * jm - (s_hi * sig_r * djm if v_hi else 0)) / e_p
    w = 2j * k
    a = (Y * dF - dY * F) / w
    b = (G * dY - dG * Y) / w
    return a, b


def exp_tail_matching(
    zeta: tuple[complex, complex, complex, complex],
    v_lo: float,
    v_hi: float,
    s_lo: float,
    s_hi: float,
    x_lo: float,
    x_hi: float,
    kappa: complex,
) -> OracleResult:
    """a, b for a potential with exact exponential tails outside [x_lo, x_hi].

    V = v_lo^2 exp(2 s_lo (x - x_lo)) for x < x_lo and
    V = v_hi^2 exp(-2 s_hi (x - x_hi)) for x > x_hi; ``zeta`` holds the
    interior end values (z0, z0', z1, z1') at x_hi.  The tail solutions are
    written through the regularized Bessel series, whose Gamma-function poles
    in the order produce the pole lattices kappa = -i n s (a) and
    kappa = -i n s_lo, +i n s_hi (b).
    """
    k = _nonzero(kappa)
    a_poles, b_poles = _tail_poles(s_lo if v_lo else 0.0, s_hi if v_hi else 0.0)
    _check_lattice(k, a_poles, "a")
    # on the b lattice the Bessel series of order -nu is singular; b comes
    # back as nan there while a stays valid
    a, b = _exp_tail_values(zeta, v_lo, v_hi, s_lo, s_hi, x_lo, x_hi, k)
    try:
        a_bar, b_bar = _exp_tail_values(zeta, v_lo, v_hi, s_lo, s_hi, x_lo, x_hi, -k)
    except PoleError:
        a_bar = b_bar = None
    sing = _nearest(k, a_poles + [p for p in b_poles if p not in a_poles])
    return OracleResult(k, JostCoefficients(k, a, b, a_bar, b_bar), sing, "poles on the imaginary axis")


def exponential_barrier(V0: float, x0: float, kappa: complex) -> OracleResult:
    """V = V0 exp(-|x|/x0): exponential tails meeting at x = 0 (empty interior)."""
    s = 1.0 / (2.0 * x0)
    v = math.sqrt(V0)
    return exp_tail_matching((1 + 0j, 0j, 0j, 1 + 0j), v, v, s, s, 0.0, 0.0, kappa)


def exponential_barrier_bessel_form(V0: float, x0: float, kappa: complex) -> tuple[complex, complex]:
    """The exponential barrier written with ordinary Bessel functions.

    With nu = -2i kappa x0 and z = 2i x0 sqrt(V0):

        a = i Gamma(1 + nu)^2 (z/2)^(1 - 2 nu) J_nu(z) J'_nu(z) / (kappa x0)
        b = pi x0 sqrt(V0) (J'_nu J_-nu + J_nu J'_-nu) / sinh(2 pi kappa x0)

    Independent of the regularized series route except for the shared
    power series, so it serves as a cross-check of ``exponential_barrier``.
    """
    from .specfun import bessel_j

    k = _nonzero(kappa)
    nu = -2j * k * x0
    z = 2j * x0 * math.sqrt(V0)
    jn, djn = bessel_j(nu, z)
    jm, djm = bessel_j(-nu, z)
    g2 = cmath.exp(2 * log_gamma(1 + nu).value + (1 - 2 * nu) * cmath.log(z / 2))
    a = 1j * g2 * jn * djn / (k * x0)
    b = math.pi * x0 * math.sqrt(V0) * (djn * jm + jn * djm) / cmath.sinh(2 * math.pi * k * x0)
    return a, b


# ---------------------------------------------------------------------------
# Poschl-Teller
# ---------------------------------------------------------------------------


def _is_pole_of_gamma(z: complex, tol: float = 1e-13) -> bool:
    n = round(z.real)
    return n <= 0 and abs(z - n) <= tol


def _pt_ab(V0: float, x0: float, k: complex) -> tuple[complex, complex]:
    sigma = cmath.sqrt(V0 * x0 * x0 - 0.25)
    u = k * x0
    num = 1 - 1j * u
    if _is_pole_of_gamma(num):
        raise PoleError(f"a has a double pole at kappa={k}", location=k)
    d1 = 0.5 + 1j * sigma - 1j * u
    d2 = 0.5 - 1j * sigma - 1j * u
    if _is_pole_of_gamma(d1) or _is_pole_of_gamma(d2):
        a = 0j
    else:
        lg = 2 * log_gamma(num).value - log_gamma(d1).value - log_gamma(d2).value
        a = 1j * cmath.exp(lg) / u
    sh = cmath.sinh(math.pi * u)
    n = round(u.imag)
    if abs(u - 1j * n) <= 1e-13:
        # a is regular here; b is reported as infinite rather than refused
        return a, complex("inf")
    b = -1j * cmath.cosh(math.pi * sigma) / sh
    return a, b


def poschl_teller(V0: float, x0: float, kappa: complex) -> OracleResult:
    """V = V0 / cosh^2(x/x0), Gamma ratios evaluated through log-Gamma."""
    k = _nonzero(kappa)
    a, b = _pt_ab(V0, x0, k)
    try:
        a_bar, b_bar = _pt_ab(V0, x0, -k)
    except PoleError:
        a_bar = b_bar = None
    sigma = cmath.sqrt(V0 * x0 * x0 - 0.25)
    sing = _nearest(k, poschl_teller_poles(x0, 6)["a"] + poschl_teller_poles(x0, 6)["b"])
    return OracleResult(
        k, JostCoefficients(k, a, b, a_bar, b_bar), sing, f"sigma={sigma}"
    )


def poschl_teller_zeros(V0: float, x0: float, n_max: int) -> list[complex]:
    """Zeros of a: kappa x0 = -i(n + 1/2) +/- sigma, n = 0..n_max."""
    sigma = cmath.sqrt(V0 * x0 * x0 - 0.25)
    out = []
    for n in range(n_max + 1):
        for sgn in (1, -1):
            out.append((-1j * (n + 0.5) + sgn * sigma) / x0)
    return out


def poschl_teller_poles(x0: float, n_max: int) -> dict[str, list[complex]]:
    """Double poles of a at kappa x0 = -i(n+1); simple poles of b at kappa x0 = +/- i n."""
    a = [-1j * (n + 1) / x0 for n in range(n_max)]
    b = [sgn * 1j * n / x0 for n in range(1, n_max + 1) for sgn in (1, -1)]
    return {"a": a, "b": b}


# ---------------------------------------------------------------------------
# delta and double barriers
# ---------------------------------------------------------------------------


def delta_barrier(v0: float, kappa: complex) -> OracleResult:
    k = _nonzero(kappa)
    a = 1 - v0 / (2j * k)
    b = v0 / (2j * k)
    return OracleResult(
        k,
        JostCoefficients(k, a, b, 1 + v0 / (2j * k), -v0 / (2j * k)),
        [-0.5j * v0],
        "single zero of a at -i v0/2",
    )


def double_barrier_symmetric(rho: float, delta: float, gamma: float, d: float, kappa: complex) -> OracleResult:
    """Mirror-symmetric pair of barriers, centres at -d/2 and +d/2.

    The left barrier has a1 = cosh(rho) exp(-i delta), b1 = i sinh(rho)
    exp(i gamma); the right one is its mirror image (a2 = a1, b2 = -conj(b1)).
    Then a = cosh^2 rho e^{-2i delta} + sinh^2 rho e^{2i(kd + gamma)} and
    b = i sinh(2 rho) cos(kd + delta + gamma).  The single-barrier parameters
    are held fixed, so the result is meant for real kappa.
    """
    k = complex(kappa)
    ch2 = math.cosh(rho) ** 2
    sh2 = math.sinh(rho) ** 2
    a = ch2 * cmath.exp(-2j * delta) + sh2 * cmath.exp(2j * (k * d + gamma))
    b = 1j * math.sinh(2 * rho) * cmath.cos(k * d + delta + gamma)
    return OracleResult(k, JostCoefficients(k, a, b), [], "reflectionless when kd+delta+gamma = pi/2 mod pi")


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def oracle_for(p: Potential) -> Callable[[complex], JostCoefficients] | None:
    """Closed-form kappa -> JostCoefficients for ``p`` if one is known."""
    if isinstance(p, DeltaSpike):
        v0, pos = p.strength, p.position
        return lambda k: displace_jost(delta_barrier(v0, k).jost, pos)
    if isinstance(p, CompositePotential):
        parts = []
        for q in p.placed:  # left to right
            f = oracle_for(q)
            if f is None:
                return None
            parts.append(f)
        return lambda k: compose_many([(f(k), 0.0) for f in parts])
    if isinstance(p, AnalyticPotential):
        fam, prm, shift = p.family, p.params, p.displacement
        table = {
            "square": lambda k: square_barrier(prm["V0"], prm["x0"], k),
            "exponential": lambda k: exponential_barrier(prm["V0"], prm["x0"], k),
            "poschl_teller": lambda k: poschl_teller(prm["V0"], prm["x0"], k),
            "zero": lambda k: OracleResult(complex(k), JostCoefficients(complex(k), 1 + 0j, 0j, 1 + 0j, 0j)),
        }
        if fam not in table:
            return None
        f = table[fam]
        return lambda k: displace_jost(f(k).jost, shift)
    return None


def a_pole_lattice(p: Potential, im_min: float) -> list[tuple[complex, int]] | None:
    """Poles of the closed-form a above ``im_min`` as (location, order).

    Returns None when the closed form is not known or its poles are not
    tabulated (composites whose parts have tail poles).
    """
    if isinstance(p, DeltaSpike):
        return []
    if isinstance(p, CompositePotential):
        lattices = [a_pole_lattice(q, im_min) for q, _ in p.parts]
        if any(lat is None for lat in lattices):
            return None
        return [] if all(not lat for lat in lattices) else None
    if not isinstance(p, AnalyticPotential):
        return None
    fam, prm = p.family, p.params
    if fam in ("square", "zero"):
        return []
    if fam == "poschl_teller":
        step = 1.0 / prm["x0"]
    elif fam == "exponential":
        step = 1.0 / (2.0 * prm["x0"])
    else:
        return None
    count = int(math.floor(-im_min / step))
    return [(-1j * n * step, 2) for n in range(1, count + 1)]
