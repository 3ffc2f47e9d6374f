import cmath
import math

import pytest

from jost1d import oracles, solver
from jost1d.complexplane import (
    Circle,
    HalfDisc,
    Rectangle,
    find_zeros,
    refine_zero,
    upper_half_zero_count,
    winding_number,
)
from jost1d.errors import ConfigError, ContourError, ConvergenceError
from jost1d.potentials import DeltaSpike, builtin, square
from jost1d.semiclassical import square_barrier_zero_asymptotics


def test_winding_examples():
    f = lambda k: k - (1 + 1j)
    assert winding_number(f, Rectangle(0, 2, 0, 2)) == 1
    assert winding_number(f, Rectangle(2, 3, 0, 1)) == 0
    assert winding_number(lambda k: (k + 1j) ** 2, Rectangle(-1, 1, -2, 0)) == 2
    assert winding_number(lambda k: 1 / (k - 0.3j), Circle(0, 1)) == -1


def test_winding_additivity():
    f = lambda k: oracles.square_barrier(1, 1, k).a
    rect = Rectangle(0.31, 9.17, -3.13, -0.21)
    total = winding_number(f, rect)
    parts = sum(winding_number(f, q) for q in rect.split(0.5, 0.5))
    assert total == parts and total > 0


def test_zero_on_boundary_detected():
    with pytest.raises(ContourError, match="shift contour"):
        winding_number(lambda k: k - 1.0, Rectangle(0, 1, -1, 1))


def test_degenerate_rectangle():
    with pytest.raises(ConfigError):
        Rectangle(1, 1, 0, 1)


def test_delta_zero():
    rep = find_zeros(lambda k: oracles.delta_barrier(2, k).a, Rectangle(-1, 1, -3, -0.1))
    assert rep.zero_count == 1 and rep.total_winding == 1
    assert abs(rep.zeros[0].location + 1j) < 1e-6
    assert rep.zeros[0].residual < 1e-10


def test_poschl_teller_zeros_with_declared_poles():
    f = lambda k: oracles.poschl_teller(1, 1, k).a
    rect = Rectangle(-2, 2, -2.2, -0.1)
    rep = find_zeros(f, rect, poles=oracles.a_pole_lattice(builtin("poschl_teller", {"V0": 1, "x0": 1}), -2.2))
    sigma = math.sqrt(3) / 2
    expected = [complex(s * sigma, -(n + 0.5)) for n in (0, 1) for s in (1, -1)]
    for z in expected:
        assert min(abs(z - w) for w in rep.locations) < 1e-8
    assert rep.poles == [(-1j, 2), (-2j, 2)]


def test_free_particle_empty_report():
    rep = find_zeros(lambda k: 1.0 + 0j, Rectangle(-2, 2, -2, -0.1))
    assert rep.zeros == [] and rep.total_winding == 0


def test_double_zero_multiplicity():
    rep = find_zeros(lambda k: (k + 1j) ** 2 * (k - 2), Rectangle(-1.3, 1.1, -2.2, 0.4))
    assert len(rep.zeros) == 1
    z = rep.zeros[0]
    assert z.multiplicity == 2 and abs(z.location + 1j) < 1e-5


def test_square_zero_set_symmetric_and_verified():
    f = lambda k: oracles.square_barrier(1, 1, k).a
    rep = find_zeros(f, Rectangle(-9.3, 9.3, -3.3, -0.2))
    locs = rep.locations
    assert len(locs) >= 6 and sum(z.multiplicity for z in rep.zeros) == rep.total_winding
    # zeros come in pairs k, -conj(k)
    for z in locs:
        assert min(abs(-z.conjugate() - w) for w in locs) < 1e-8
    # ordering by Im then Re
    keys = [(round(z.imag, 6), z.real) for z in locs]
    assert keys == sorted(keys)
    for z in rep.zeros:
        assert winding_number(f, Circle(z.location, 1e-4)) == z.multiplicity


def test_solver_and_oracle_zero_lists_agree():
    p = square(1, 1)
    rect = Rectangle(2.1, 6.3, -2.2, -0.6)
    a_solver = solver.jost_a(p)
    rep_s = find_zeros(a_solver, rect, tol=1e-9)
    rep_o = find_zeros(lambda k: oracles.square_barrier(1, 1, k).a, rect)
    assert len(rep_s.locations) == len(rep_o.locations) > 0
    for z, w in zip(rep_s.locations, rep_o.locations):
        assert abs(z - w) < 1e-7


def test_refine_zero():
    assert abs(refine_zero(lambda k: k + 1j, -0.9j) + 1j) < 1e-12
    f = lambda k: oracles.square_barrier(1, 1, k).a
    (seed,) = square_barrier_zero_asymptotics(1, 1, [12], signs=(1,))
    z = refine_zero(f, seed, tol=1e-13)
    assert abs(f(z)) < 1e-10
    assert abs(oracles.square_barrier_zero_residual(1, 1, z)) < 1e-8
    with pytest.raises(ConvergenceError):
        refine_zero(lambda k: cmath.exp(k), 1.0)


@pytest.mark.parametrize(
    "p, radius",
    [
        (square(1, 1), 20),
        (builtin("poschl_teller", {"V0": 1, "x0": 1}), 10),
        (DeltaSpike(2.0), 10),
    ],
)
def test_upper_half_plane_free_of_zeros(p, radius):
    assert upper_half_zero_count(p, radius, source="oracle") == 0


def test_upper_half_count_via_solver():
    assert upper_half_zero_count(square(1, 1), 20) == 0


def test_half_disc_counts_a_planted_zero():
    assert winding_number(lambda k: k - (0.5 + 2j), HalfDisc(5.0)) == 1
    assert winding_number(lambda k: k - (0.5 - 2j), HalfDisc(5.0)) == 0
