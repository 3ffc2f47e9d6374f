"""On-shell amplitude algebra.

The scattering data at momentum kappa are carried by two numbers: the
amplitudes ``alpha`` and ``beta`` (regular at kappa = 0) or, equivalently, the
Jost-like coefficients

    a = 1 - alpha / (2i kappa),      b = beta / (2i kappa).

Everything else (S-matrix, on-shell T-matrix, monodromy matrix, displacement
and composition rules) is algebra on these.

Conjugated quantities at complex kappa are the analytic continuation of the
real-axis conjugate, i.e. ``abar(kappa) = a(-kappa)``.  Producers attach these
values (``a_bar``, ``b_bar``) when kappa is off the real axis; on the real axis
plain complex conjugation is used.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NearZeroMomentumError, SMatrixPole

__all__ = [
    "AmplitudePair",
    "JostCoefficients",
    "SMatrix",
    "MonodromyMatrix",
    "to_jost",
    "to_amplitudes",
    "s_matrix",
    "t_matrix",
    "monodromy",
    "transmission_reflection",
    "displace_jost",
    "compose",
    "compose_many",
    "symmetry_defects",
    "unitarity_defect",
    "alpha_unitarity_defect",
    "monodromy_defect",
    "s_unitarity_defect",
    "free",
    "MIN_KAPPA",
    "ALGEBRAIC_TOL",
    "SOLVER_TOL",
]

MIN_KAPPA = 1e-8
ALGEBRAIC_TOL = 1e-12
SOLVER_TOL = 1e-8
POLE_TOL = 1e-300


def _is_real(kappa: complex) -> bool:
    return complex(kappa).imag == 0.0


@dataclass(frozen=True)
class AmplitudePair:
    kappa: complex
    alpha: complex
    beta: complex
    alpha_bar: complex | None = None
    beta_bar: complex | None = None
    error_estimate: float | None = None

    @property
    def alpha_conj(self) -> complex:
        if self.alpha_bar is not None:
            return self.alpha_bar
        if _is_real(self.kappa):
            return self.alpha.conjugate()
        raise ValueError("conjugate continuation needs alpha at -kappa")

    @property
    def beta_conj(self) -> complex:
        if self.beta_bar is not None:
            return self.beta_bar
        if _is_real(self.kappa):
            return self.beta.conjugate()
        raise ValueError("conjugate continuation needs beta at -kappa")


@dataclass(frozen=True)
class JostCoefficients:
    kappa: complex
    a: complex
    b: complex
    a_bar: complex | None = None
    b_bar: complex | None = None

    @property
    def a_conj(self) -> complex:
        """abar(kappa) = a(-kappa); plain conjugate on the real axis."""
        if self.a_bar is not None:
            return self.a_bar
        if _is_real(self.kappa):
            return self.a.conjugate()
        raise ValueError("conjugate continuation needs a at -kappa")

    @property
    def b_conj(self) -> complex:
        if self.b_bar is not None:
            return self.b_bar
        if _is_real(self.kappa):
            return self.b.conjugate()
        raise ValueError("conjugate continuation needs b at -kappa")

    @property
    def has_conjugates(self) -> bool:
        return _is_real(self.kappa) or (self.a_bar is not None and self.b_bar is not None)

    def at_minus_kappa(self) -> "JostCoefficients":
        return JostCoefficients(-self.kappa, self.a_conj, self.b_conj, self.a, self.b)


@dataclass(frozen=True)
class SMatrix:
    kappa: complex
    matrix: np.ndarray

    @property
    def transmission(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def reflection(self) -> complex:
        return complex(self.matrix[0, 1])


@dataclass(frozen=True)
class MonodromyMatrix:
    kappa: complex
    matrix: np.ndarray


def free(kappa: complex) -> JostCoefficients:
    return JostCoefficients(complex(kappa), 1 + 0j, 0j, 1 + 0j, 0j)


def _check_kappa(kappa: complex, min_kappa: float = MIN_KAPPA) -> complex:
    kappa = complex(kappa)
    if abs(kappa) < min_kappa:
        raise NearZeroMomentumError(
            f"near-zero momentum |kappa|={abs(kappa):.3g}: a and b diverge; "
            "use the AmplitudePair (alpha, beta) directly"
        )
    return kappa


def to_jost(ap: AmplitudePair, min_kappa: float = MIN_KAPPA) -> JostCoefficients:
    k = _check_kappa(ap.kappa, min_kappa)
    a = 1 - ap.alpha / (2j * k)
    b = ap.beta / (2j * k)
    a_bar = b_bar = None
    if ap.alpha_bar is not None:
        a_bar = 1 + ap.alpha_bar / (2j * k)
    if ap.beta_bar is not None:
        b_bar = -ap.beta_bar / (2j * k)
    return JostCoefficients(k, a, b, a_bar, b_bar)


def to_amplitudes(jc: JostCoefficients) -> AmplitudePair:
    k = complex(jc.kappa)
    alpha = 2j * k * (1 - jc.a)
    beta = 2j * k * jc.b
    alpha_bar = beta_bar = None
    if jc.a_bar is not None:
        alpha_bar = -2j * k * (1 - jc.a_bar)
    if jc.b_bar is not None:
        beta_bar = -2j * k * jc.b_bar
    return AmplitudePair(k, alpha, beta, alpha_bar, beta_bar)


def _check_pole(a: complex, kappa: complex) -> None:
    if abs(a) <= POLE_TOL or not cmath.isfinite(1 / a if a != 0 else complex("inf")):
        raise SMatrixPole(f"S-matrix pole: a(kappa)=0 at kappa={kappa}", location=kappa)


def s_matrix(jc: JostCoefficients) -> SMatrix:
    """S = (1/a) [[1, b], [-bbar, 1]]."""
    _check_pole(jc.a, jc.kappa)
    m = np.array([[1.0, jc.b], [-jc.b_conj, 1.0]], dtype=complex) / jc.a
    return SMatrix(jc.kappa, m)


def t_matrix(ap: AmplitudePair, min_kappa: float = MIN_KAPPA) -> np.ndarray:
    """On-shell T = (1/(2 pi a)) [[alpha, beta], [betabar, alpha]].

    Normalized so that S = I - (2 pi i / v) T with v = 2 kappa.
    """
    jc = to_jost(ap, min_kappa)
    _check_pole(jc.a, jc.kappa)
    m = np.array([[ap.alpha, ap.beta], [ap.beta_conj, ap.alpha]], dtype=complex)
    return m / (2 * math.pi * jc.a)


def monodromy(jc: JostCoefficients) -> MonodromyMatrix:
    m = np.array([[jc.a_conj, -jc.b_conj], [-jc.b, jc.a]], dtype=complex)
    return MonodromyMatrix(jc.kappa, m)


def transmission_reflection(jc: JostCoefficients) -> tuple[float, float]:
    k = complex(jc.kappa)
    if k.imag != 0 or k.real <= 0:
        raise ValueError("transmission/reflection probabilities need real kappa > 0")
    _check_pole(jc.a, k)
    return abs(1 / jc.a) ** 2, abs(jc.b / jc.a) ** 2


def displace_jost(jc: JostCoefficients, d: float) -> JostCoefficients:
    """Coefficients of V(x - d): a unchanged, b -> b exp(-2i kappa d)."""
    k = complex(jc.kappa)
    b_bar = None if jc.b_bar is None else jc.b_bar * cmath.exp(2j * k * d)
    return JostCoefficients(k, jc.a, jc.b * cmath.exp(-2j * k * d), jc.a_bar, b_bar)


def _compose_values(k, a1, b1, a2, b2, a2_bar, b2_bar, d1, d2):
    a = a1 * a2 + b1 * b2_bar * cmath.exp(2j * k * (d2 - d1))
    b = a1 * b2 * cmath.exp(-2j * k * d2) + a2_bar * b1 * cmath.exp(-2j * k * d1)
    return a, b


def compose(
    jc1: JostCoefficients, d1: float, jc2: JostCoefficients, d2: float, rtol: float = 1e-14
) -> JostCoefficients:
    """Superposition rule for V1(x - d1) + V2(x - d2) with d2 > d1.

    ``jc1`` and ``jc2`` are the coefficients of the undisplaced parts.  The
    supports must not overlap after displacement; that is the caller's job.
    """
    k = complex(jc1.kappa)
    if abs(complex(jc2.kappa) - k) > rtol * max(1.0, abs(k)):
        raise ValueError(f"mismatched kappa: {jc1.kappa} vs {jc2.kappa}")
    a, b = _compose_values(k, jc1.a, jc1.b, jc2.a, jc2.b, jc2.a_conj, jc2.b_conj, d1, d2)
    a_bar = b_bar = None
    if jc1.has_conjugates and jc2.has_conjugates and not _is_real(k):
        m1, m2 = jc1.at_minus_kappa(), jc2.at_minus_kappa()
        a_bar, b_bar = _compose_values(-k, m1.a, m1.b, m2.a, m2.b, m2.a_conj, m2.b_conj, d1, d2)
    return JostCoefficients(k, a, b, a_bar, b_bar)


def compose_many(items: list[tuple[JostCoefficients, float]]) -> JostCoefficients:
    """Fold ``compose`` over parts ordered left to right.

    The running composite is already placed, so it enters with displacement 0.
    """
    if not items:
        raise ValueError("nothing to compose")
    jc, d = items[0]
    acc = displace_jost(jc, d)
    for jc_next, d_next in items[1:]:
        acc = compose(acc, 0.0, jc_next, d_next)
    return acc


def symmetry_defects(
    jc_plus: JostCoefficients, jc_minus: JostCoefficients, symmetric: bool = False
) -> dict[str, float]:
    """Defects of conj(a(k)) = a(-k), conj(b(k)) = b(-k) and, for even V, Re b = 0."""
    k = complex(jc_plus.kappa)
    if k.imag != 0 or abs(complex(jc_minus.kappa) + k) > 1e-14 * max(1.0, abs(k)):
        raise ValueError("symmetry_defects needs coefficients at real kappa and -kappa")
    out = {
        "a_conjugation": abs(jc_plus.a.conjugate() - jc_minus.a),
        "b_conjugation": abs(jc_plus.b.conjugate() - jc_minus.b),
    }
    if symmetric:
        out["re_b"] = abs(jc_plus.b.real)
    return out


def unitarity_defect(jc: JostCoefficients) -> float:
    return abs(abs(jc.a) ** 2 - abs(jc.b) ** 2 - 1.0)


def alpha_unitarity_defect(ap: AmplitudePair) -> float:
    k = complex(ap.kappa)
    al, be = ap.alpha, ap.beta
    lhs = al - al.conjugate()
    rhs = 1j / (2 * k) * (abs(al) ** 2 - abs(be) ** 2)
    return abs(lhs - rhs)


def monodromy_defect(jc: JostCoefficients) -> float:
    m = monodromy(jc).matrix
    e = np.diag([1.0, -1.0])
    return float(np.max(np.abs(m @ e @ m.conj().T - e)))


def s_unitarity_defect(jc: JostCoefficients) -> tuple[float, float]:
    """(max |S S^dagger - I|, |det S - abar/a|)."""
    s = s_matrix(jc).matrix
    unit = float(np.max(np.abs(s @ s.conj().T - np.eye(2))))
    det = abs(np.linalg.det(s) - jc.a_conj / jc.a)
    return unit, float(det)
