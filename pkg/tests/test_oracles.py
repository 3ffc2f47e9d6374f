import cmath
import math

import numpy as np
import pytest

from jost1d import oracles, solver
from jost1d.complexplane import Circle, Rectangle, find_zeros, winding_number
from jost1d.errors import NearZeroMomentumError, PoleError
from jost1d.potentials import CompositePotential, DeltaSpike, builtin, displace, square
from jost1d.specfun import bessel_j, gamma
from jost1d.transfer import JostCoefficients, compose, unitarity_defect

KAPPAS = np.linspace(0.2, 10, 25)


def _rel(x, ref):
    return abs(x - ref) / max(1.0, abs(ref))


# square barrier


def test_square_free_limit():
    r = oracles.square_barrier(1e-300, 1, 1.3)
    assert abs(r.a - 1) < 1e-15 and abs(r.b) < 1e-15


def test_square_at_barrier_top():
    r = oracles.square_barrier(2.0, 0.7, math.sqrt(2.0))
    assert r.beta == pytest.approx(2 * 0.7 * 2.0, rel=1e-14)
    with pytest.raises(NearZeroMomentumError):
        oracles.square_barrier(1, 1, 0)


def test_square_matches_solver():
    r = oracles.square_barrier(1, 1, 2.0)
    ap = solver.amplitudes(square(1, 1), 2.0)
    assert _rel(ap.alpha, r.alpha) < 1e-9 and _rel(ap.beta, r.beta) < 1e-9


def test_square_zero_residual():
    f = lambda k: oracles.square_barrier(1, 1, k).a
    zeros = find_zeros(f, Rectangle(2.1, 9.3, -3.1, -0.9)).locations
    assert len(zeros) >= 2
    for z in zeros:
        assert abs(oracles.square_barrier_zero_residual(1, 1, z)) < 1e-8
    for re in np.linspace(-6, 6, 13):
        for im in (0.1, 0.5, 2.0):
            assert abs(oracles.square_barrier_zero_residual(1, 1, complex(re, im))) > 1e-2


def test_square_small_barrier_two_imaginary_zeros():
    f = lambda k: oracles.square_barrier(0.1, 1, k).a
    zeros = find_zeros(f, Rectangle(-0.6, 0.6, -3, -0.01)).locations
    assert len(zeros) == 2
    for z in zeros:
        assert abs(z.real) < 1e-10
        # both terms of the residual are of size exp(4 |p| x0) here
        scale = math.exp(4 * abs(cmath.sqrt(z * z - 0.1)))
        assert abs(oracles.square_barrier_zero_residual(0.1, 1, z)) < 1e-8 * scale


# exponential barrier


def test_exponential_free_limit():
    assert abs(oracles.exponential_barrier(1e-30, 1, 1.2).a - 1) < 1e-14


@pytest.mark.parametrize("k", [0.3, 1.5, 4.0, 1 - 0.2j, 2 + 0.4j])
def test_exponential_matches_solver_and_bessel_form(k):
    p = builtin("exponential", {"V0": 1, "x0": 1})
    r = oracles.exponential_barrier(1, 1, k)
    jc = solver.jost(p, k)
    assert _rel(jc.a, r.a) < 1e-8 and _rel(jc.b, r.b) < 1e-8
    a2, b2 = oracles.exponential_barrier_bessel_form(1, 1, k)
    assert _rel(a2, r.a) < 1e-10 and _rel(b2, r.b) < 1e-10


def test_exponential_printed_form_does_not_reproduce_solver():
    # the literal display with nu = -2i kappa and (z/2i)^(1 - 4 nu) is off by a kappa-dependent factor
    V0, x0 = 1.0, 1.0
    ratios = []
    for k in (0.7, 1.5):
        nu, z = -2j * k, 2j * x0 * math.sqrt(V0)
        J, dJ = bessel_j(nu, z)
        printed = -gamma(1 + nu) ** 2 / (x0 * k) * cmath.exp((1 - 4 * nu) * cmath.log(z / 2j)) * dJ * J
        ratios.append(printed / oracles.exponential_barrier(V0, x0, k).a)
    assert all(abs(r - 1) > 1 for r in ratios)
    assert abs(ratios[0] - ratios[1]) > 1


def test_exponential_poles():
    with pytest.raises(PoleError) as err:
        oracles.exponential_barrier(1, 1, -0.5j)
    assert err.value.location == pytest.approx(-0.5j)
    r = oracles.exponential_barrier(1, 1, 1 - 0.2j)
    assert -0.5j in [pytest.approx(s) for s in r.nearest_singularities]


# Poschl-Teller


def test_poschl_teller_matches_solver():
    p = builtin("poschl_teller", {"V0": 1, "x0": 1})
    r = oracles.poschl_teller(1, 1, 1.0)
    ap = solver.amplitudes(p, 1.0)
    assert _rel(ap.alpha, r.alpha) < 1e-6 and _rel(ap.beta, r.beta) < 1e-6


def test_poschl_teller_b_imaginary_and_zeros():
    for k in (0.3, 1.0, 4.0):
        assert abs(oracles.poschl_teller(1, 1, k).b.real) < 1e-14
    sigma = math.sqrt(3) / 2
    f = lambda k: oracles.poschl_teller(1, 1, k).a
    z = find_zeros(f, Rectangle(0.5, 1.2, -0.8, -0.2)).locations
    assert len(z) == 1 and abs(z[0] - (sigma - 0.5j)) < 1e-8
    assert oracles.poschl_teller_zeros(1, 1, 0) == [pytest.approx(-0.5j + sigma), pytest.approx(-0.5j - sigma)]


def test_poschl_teller_imaginary_sigma():
    # V0 x0^2 < 1/4: sigma imaginary, zeros on the imaginary axis
    zs = oracles.poschl_teller_zeros(0.16, 1, 1)
    assert all(abs(z.real) < 1e-15 for z in zs)
    for z in zs:
        assert abs(oracles.poschl_teller(0.16, 1, z + 1e-3).a) < 1e-2


def test_poschl_teller_pole_windings():
    a = lambda k: oracles.poschl_teller(1, 1, k).a
    b = lambda k: oracles.poschl_teller(1, 1, k).b
    for n in range(3):
        assert winding_number(a, Circle(-1j * (n + 1), 0.2)) == -2
    for n in (1, 2):
        assert winding_number(b, Circle(1j * n, 0.2)) == -1
        assert winding_number(b, Circle(-1j * n, 0.2)) == -1
    with pytest.raises(PoleError):
        oracles.poschl_teller(1, 1, -1j)


# delta


def test_delta_barrier():
    r = oracles.delta_barrier(2, 1.0)
    assert r.a == 1 + 1j and r.b == -1j
    assert r.alpha == 2 and r.beta == 2
    assert r.nearest_singularities == [-1j]
    assert abs(oracles.delta_barrier(2, -1j).a) < 1e-15
    for k in np.linspace(0.1, 5, 20):
        assert unitarity_defect(oracles.delta_barrier(2, k).jost) < 1e-13


# exponential-tail matching


def test_tail_matching_without_tails_is_interior():
    p = square(1, 1)
    k = 1.3 - 0.2j
    zeta = solver.interior_basis(p, k * k, -1.0, 1.0)
    r = oracles.exp_tail_matching(zeta, 0, 0, 1, 1, -1.0, 1.0, k)
    ref = solver.jost_from_interior(zeta, k, -1.0, 1.0)
    assert r.a == pytest.approx(ref.a, rel=1e-14) and r.b == pytest.approx(ref.b, rel=1e-14)


def test_tail_matching_empty_interior_is_exponential_barrier():
    for k in (0.4, 2.5, 1 - 0.3j):
        r = oracles.exp_tail_matching((1, 0, 0, 1), 1, 1, 0.5, 0.5, 0, 0, k)
        a2, b2 = oracles.exponential_barrier_bessel_form(1, 1, k)
        assert _rel(r.a, a2) < 1e-10 and _rel(r.b, b2) < 1e-10


def test_tail_matching_square_core_with_tails():
    # V = 1 on [-1, 1] with tails exp(-2|x| + 2): continuous at the edges
    from jost1d.potentials import AnalyticPotential, Exponential

    tail_l = Exponential(1.0, 1.0, -1.0)
    tail_r = Exponential(1.0, 1.0, 1.0)
    p = AnalyticPotential(
        func=lambda x: np.where(np.abs(x) <= 1, 1.0, np.exp(-2 * (np.abs(x) - 1))),
        window=(-1.0, 1.0),
        tails=(tail_l, tail_r),
        breakpoints=(-1.0, 1.0),
        peak=1.0,
    )
    for k in (0.8, 2.2):
        zeta = solver.interior_basis(p, k * k, -1.0, 1.0, check_support=False)
        r = oracles.exp_tail_matching(zeta, 1, 1, 1, 1, -1.0, 1.0, k)
        jc = solver.jost(p, k)
        assert _rel(jc.a, r.a) < 1e-8 and _rel(jc.b, r.b) < 1e-8
        assert unitarity_defect(r.jost) < 1e-9


# double barrier


def test_double_barrier():
    r = oracles.double_barrier_symmetric(0.0, 0.3, 0.1, 2.0, 1.1)
    assert r.a == pytest.approx(cmath.exp(-0.6j)) and abs(r.b) < 1e-15
    rho, delta, gamma_, d = 0.8, 0.4, 0.2, 3.0
    k = (math.pi / 2 - delta - gamma_) / d
    assert abs(oracles.double_barrier_symmetric(rho, delta, gamma_, d, k).b) < 1e-14
    # equals the superposition of a single barrier and its mirror image
    for k in (0.3, 1.7):
        a1 = math.cosh(rho) * cmath.exp(-1j * delta)
        b1 = 1j * math.sinh(rho) * cmath.exp(1j * gamma_)
        left = JostCoefficients(k, a1, b1)
        right = JostCoefficients(k, a1, -b1.conjugate())
        out = compose(left, 0.0, right, d)
        ref = oracles.double_barrier_symmetric(rho, delta, gamma_, d, k)
        assert abs(out.a - ref.a) < 1e-12 and abs(out.b * cmath.exp(1j * k * d) - ref.b) < 1e-12


# invariants over all oracles


ORACLES = {
    "square": lambda k: oracles.square_barrier(1.5, 0.8, k),
    "exponential": lambda k: oracles.exponential_barrier(1, 1, k),
    "poschl_teller": lambda k: oracles.poschl_teller(2, 0.7, k),
    "delta": lambda k: oracles.delta_barrier(1.5, k),
    "double": lambda k: oracles.double_barrier_symmetric(0.7, 0.2, 0.5, 2.0, k),
}


@pytest.mark.parametrize("name", sorted(ORACLES))
def test_oracle_unitarity(name):
    for k in KAPPAS:
        assert unitarity_defect(ORACLES[name](k).jost) < 1e-10


@pytest.mark.parametrize("name", ["square", "exponential", "poschl_teller", "delta"])
def test_oracle_conjugation_symmetry(name):
    f = ORACLES[name]
    for k in (0.7 - 0.2j, 2.1 + 0.3j, 0.4 - 0.6j):
        r, m = f(k), f(-k.conjugate())
        assert abs(r.a.conjugate() - m.a) < 1e-10 * max(1, abs(m.a))
        assert abs(r.b.conjugate() - m.b) < 1e-10 * max(1, abs(m.b))


# dispatch


def test_oracle_for_and_pole_lattice():
    pt = builtin("poschl_teller", {"V0": 1, "x0": 1})
    handle = oracles.oracle_for(displace(pt, 0.5))
    k = 1.3
    ref = solver.jost(displace(pt, 0.5), k)
    assert abs(handle(k).b - ref.b) < 1e-8
    assert oracles.oracle_for(builtin("gaussian", {"V0": 1, "x0": 1})) is None
    comp = CompositePotential(((DeltaSpike(2.0), -1.0), (square(1, 0.5), 2.0)))
    assert abs(oracles.oracle_for(comp)(k).a - solver.jost(comp, k).a) < 1e-9
    assert oracles.a_pole_lattice(square(1, 1), -5) == []
    assert oracles.a_pole_lattice(pt, -3.5) == [(-1j, 2), (-2j, 2), (-3j, 2)]
    assert oracles.a_pole_lattice(builtin("gaussian", {"V0": 1, "x0": 1}), -1) is None
