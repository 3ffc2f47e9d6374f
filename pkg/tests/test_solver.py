import cmath
import math

import numpy as np
import pytest

from jost1d import oracles, solver
from jost1d.errors import NearZeroMomentumError, TailLimitedError
from jost1d.potentials import CompositePotential, DeltaSpike, builtin, gaussian, square, zero_potential
from jost1d.solver import SolverOptions


def test_free_particle_amplitudes_vanish():
    ap = solver.amplitudes(zero_potential(), 1.0)
    assert ap.alpha == 0 and ap.beta == 0


def test_square_matches_closed_form():
    ap = solver.amplitudes(square(1, 1), 2.0)
    ref = oracles.square_barrier(1, 1, 2.0)
    assert abs(ap.alpha - ref.alpha) < 1e-9 * abs(ref.alpha)
    assert abs(ap.beta - ref.beta) < 1e-9 * abs(ref.beta)


def test_delta_spike():
    ap = solver.amplitudes(DeltaSpike(2.0), 1.0)
    assert ap.alpha == pytest.approx(2.0, abs=1e-14)
    assert ap.beta == pytest.approx(2.0, abs=1e-14)


def test_near_zero_kappa_rejected():
    with pytest.raises(NearZeroMomentumError):
        solver.amplitudes(square(1, 1), 0.0)


def test_tail_limited_region():
    pt = builtin("poschl_teller", {"V0": 1, "x0": 1})
    with pytest.raises(TailLimitedError) as err:
        solver.amplitudes(pt, 1 - 1.5j)
    assert err.value.exit_code == 4
    # alpha alone continues further up, beta stops at the upper strip edge
    solver.amplitudes(pt, 1 + 3j, need_beta=False)
    with pytest.raises(TailLimitedError):
        solver.amplitudes(pt, 1 + 3j)


def test_options_validated():
    with pytest.raises(ValueError):
        SolverOptions(ode_rel_tol=0)


@pytest.mark.parametrize("k", [1.7, 0.4 - 0.2j])
def test_a_equals_c_square(k):
    left, right = solver.amplitudes_both_sides(square(1, 1), k)
    assert abs(left.alpha - right.alpha) / abs(2 * k) < 1e-9
    assert abs(left.beta - right.beta) / abs(2 * k) < 1e-9


def test_a_equals_c_asymmetric_composite():
    p = CompositePotential(((square(1, 0.5), -1.5), (gaussian(2, 0.3), 2.0)))
    left, right = solver.amplitudes_both_sides(p, 2.3)
    assert abs(left.alpha - right.alpha) < 1e-9
    assert abs(left.beta - right.beta) < 1e-9


def test_both_sides_free():
    left, right = solver.amplitudes_both_sides(zero_potential(), 1.0)
    assert left.alpha == left.beta == right.alpha == right.beta == 0


def test_interior_basis_free():
    z0, dz0, z1, dz1 = solver.interior_basis(zero_potential(), 1.0, 0.0, 2.0)
    assert z0 == pytest.approx(math.cos(2), abs=1e-12)
    assert dz0 == pytest.approx(-math.sin(2), abs=1e-12)
    assert z1 == pytest.approx(math.sin(2), abs=1e-12)
    assert dz1 == pytest.approx(math.cos(2), abs=1e-12)
    for ksq in (0.3 + 0.4j, -2.0, 25.0):
        z0, dz0, z1, dz1 = solver.interior_basis(zero_potential(), ksq, -1.0, 2.5)
        assert z0 * dz1 - dz0 * z1 == pytest.approx(1.0, abs=1e-10)


def test_interior_basis_at_barrier_top():
    _, _, z1, _ = solver.interior_basis(square(1, 1), 1.0, -1.0, 1.0)
    assert z1 == pytest.approx(2.0, abs=1e-12)


def test_jost_from_interior_free():
    k = 0.8 - 0.3j
    L = 1.7
    zeta = (cmath.cos(k * L), -k * cmath.sin(k * L), cmath.sin(k * L) / k, cmath.cos(k * L))
    jc = solver.jost_from_interior(zeta, k, -0.5, L - 0.5)
    assert abs(jc.a - 1) < 1e-14 and abs(jc.b) < 1e-14
    with pytest.raises(NearZeroMomentumError):
        solver.jost_from_interior(zeta, 0, 0, 1)


@pytest.mark.parametrize("k", [0.3, 2.0, 7.5, 1.2 - 0.8j, 3 - 2j])
def test_interior_route_square(k):
    jc = solver.jost_interior(square(1, 1), k)
    ref = oracles.square_barrier(1, 1, k)
    assert abs(jc.a - ref.a) < 1e-10 * max(1, abs(ref.a))
    assert abs(jc.b - ref.b) < 1e-10 * max(1, abs(ref.b))


@pytest.mark.parametrize("k", [0.5, 3.0, 1.0 - 0.5j, 5.0 - 0.5j])
def test_route_equivalence_gaussian(k):
    p = gaussian(1.5, 0.8)
    a = solver.jost(p, k)
    b = solver.jost_interior(p, k)
    assert abs(a.a - b.a) < 1e-8 and abs(a.b - b.b) < 1e-8


def test_low_energy_alpha_minus_beta_shrinks():
    p = square(1, 1)
    d1 = [abs(ap.alpha - ap.beta) for ap in (solver.amplitudes(p, k) for k in (1e-3, 2e-3))]
    assert d1[0] < d1[1]
    assert d1[0] / d1[1] == pytest.approx(0.5, abs=0.01)


def test_cauchy_riemann_interior():
    p = gaussian(1.0, 1.0)
    h = 1e-5
    for k in (0.7 - 0.2j, 2.0 - 0.5j, 3.0 + 0.4j):
        def a(z):
            return solver.jost_interior(p, z).a

        d_re = (a(k + h) - a(k - h)) / (2 * h)
        d_im = (a(k + 1j * h) - a(k - 1j * h)) / (2j * h)
        assert abs(d_re - d_im) < 1e-5 * max(1, abs(d_re))


def test_error_estimate_bounds_tolerance_change():
    p = builtin("poschl_teller", {"V0": 1, "x0": 1})
    loose = SolverOptions(ode_rel_tol=1e-9, ode_abs_tol=1e-12, estimate_error=True)
    ap = solver.amplitudes(p, 1.3, loose)
    tight = solver.amplitudes(p, 1.3, loose.tightened(2.0))
    assert ap.error_estimate is not None
    assert abs(tight.alpha - ap.alpha) + abs(tight.beta - ap.beta) <= max(ap.error_estimate, 1e-13) * 2


def test_fundamental_solution_wronskian_and_asymptotics():
    p = square(2, 0.5)
    k = 1.1
    xs = np.linspace(-3, 3, 61)
    ym = solver.fundamental_solution(p, k, -1, x=xs)
    yp = solver.fundamental_solution(p, k, +1, x=xs)
    w = ym.wronskian_with(yp)
    a = solver.jost(p, k).a
    np.testing.assert_allclose(w, -2j * k * a, atol=1e-9)
    # y_- is a pure incoming wave to the left of the barrier
    left = ym.x < -0.5
    np.testing.assert_allclose(ym.y[left], np.exp(-1j * k * ym.x[left]), atol=1e-12)


def test_fundamental_solution_on_step_grid():
    fs = solver.fundamental_solution(square(1, 1), 0.9)
    assert fs.x[0] == -1.0 and fs.x[-1] == 1.0
    ap = solver.amplitudes(square(1, 1), 0.9)
    assert abs(fs.A_end - ap.alpha) < 1e-14


def test_jost_a_handle_upper_half_plane():
    p = builtin("exponential", {"V0": 1, "x0": 1})
    a = solver.jost_a(p)
    for k in (20j, 14 + 14j, 2 - 0.3j):
        ref = oracles.exponential_barrier(1, 1, k).a
        assert abs(a(k) - ref) < 1e-10 * max(1, abs(ref))
