import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jost1d.errors import ConfigError
from jost1d.potentials import (
    CompactSupport,
    CompositePotential,
    DeltaSpike,
    Exponential,
    GridPotential,
    SuperExponential,
    builtin,
    displace,
    effective_support,
    evaluate,
    from_config,
    square,
)


def test_square_values():
    p = builtin("square", {"V0": 1, "x0": 1})
    assert evaluate(p, 0.0) == 1.0
    assert evaluate(p, 2.0) == 0.0
    assert p.tails == (CompactSupport(), CompactSupport())


def test_poschl_teller_peak_and_tails():
    p = builtin("poschl_teller", {"V0": 1, "x0": 1})
    assert evaluate(p, 0.0) == 1.0
    left, right = p.tails
    assert isinstance(left, Exponential) and isinstance(right, Exponential)
    # V ~ 4 V0 exp(-2|x|/x0): decay exponent 2 s = 2/x0
    assert 2 * right.slope == pytest.approx(2.0)
    x = 30.0
    assert evaluate(p, x) == pytest.approx(4 * math.exp(-2 * x), rel=1e-12)


def test_exponential_and_gaussian_tails():
    e = builtin("exponential", {"V0": 1, "x0": 2})
    assert 2 * e.tails[1].slope == pytest.approx(0.5)
    g = builtin("gaussian", {"V0": 1, "x0": 1})
    assert g.tails == (SuperExponential(), SuperExponential())


def test_effective_support_square_is_exact():
    assert effective_support(square(1, 1), 1e-12) == (-1.0, 1.0)


def test_effective_support_exponential_cutoff():
    lo, hi = effective_support(builtin("exponential", {"V0": 1, "x0": 1}), 1e-12)
    assert hi == pytest.approx(math.log(1e12), rel=1e-12)
    assert lo == pytest.approx(-hi, rel=1e-12)
    assert hi == pytest.approx(27.63, abs=5e-3)


def test_delta_support_is_a_point():
    d = DeltaSpike(2.0, 0.5)
    assert effective_support(d, 1e-12) == (0.5, 0.5)


def test_delta_not_evaluable():
    with pytest.raises(ValueError, match="not pointwise evaluable"):
        evaluate(builtin("delta", {"v0": 2}), 0.0)


def test_displace():
    p = square(1, 1)
    assert displace(p, 0) is p
    q = displace(p, 3)
    assert evaluate(q, 3.0) == 1.0
    assert evaluate(q, 0.0) == 0.0
    assert q.support() == (2.0, 4.0)
    d = displace(DeltaSpike(2.0, 0.0), 1.0)
    assert isinstance(d, DeltaSpike)
    assert (d.strength, d.position) == (2.0, 1.0)


def test_builtin_delta():
    d = builtin("delta", {"v0": 2})
    assert isinstance(d, DeltaSpike)
    assert (d.strength, d.position) == (2.0, 0.0)


@pytest.mark.parametrize(
    "name, params",
    [
        ("nonsense", {}),
        ("square", {"V0": 1}),
        ("square", {"V0": -1, "x0": 1}),
        ("gaussian", {"V0": 1, "x0": 0}),
        ("delta", {"v0": "abc"}),
        ("double", {"V0": 1, "x0": 1, "d": 1.5}),
    ],
)
def test_builtin_rejects_bad_input(name, params):
    with pytest.raises(ConfigError):
        builtin(name, params)


def test_grid_interpolation():
    xs = np.linspace(-2, 2, 21)
    vs = np.exp(-xs**2)
    g = GridPotential(tuple(xs), tuple(vs))
    np.testing.assert_allclose(g(xs), vs, rtol=0, atol=1e-15)
    fine = np.linspace(-2, 2, 1001)
    assert np.all(g(fine) >= 0)
    with pytest.raises(ValueError, match="extrapolation"):
        g(3.0)
    h = GridPotential(tuple(xs), tuple(vs), zero_outside=True)
    assert h(3.0) == 0.0


@pytest.mark.parametrize(
    "x, v",
    [((0.0,), (1.0,)), ((0.0, 0.0, 1.0), (1.0, 1.0, 1.0)), ((0.0, 1.0), (1.0, -0.1))],
)
def test_grid_rejects_bad_samples(x, v):
    with pytest.raises(ValueError):
        GridPotential(x, v)


def test_composite_rejects_overlap():
    with pytest.raises(ValueError, match="overlap"):
        CompositePotential(((square(1, 1), 0.0), (square(1, 1), 1.5)))
    c = CompositePotential(((square(1, 1), -2.0), (square(2, 0.5), 2.0)))
    assert evaluate(c, -2.0) == 1.0 and evaluate(c, 2.0) == 2.0 and evaluate(c, 0.0) == 0.0


def test_from_config_roundtrip():
    cfg = {
        "family": "composite",
        "parts": [
            {"family": "square", "params": {"V0": 1, "x0": 0.5}, "displacement": -2},
            {"family": "delta", "params": {"v0": 3}, "displacement": 2},
        ],
    }
    p = from_config(cfg)
    assert evaluate(p, -2.0) == 1.0
    assert p.spikes() == [(2.0, 3.0)]
    with pytest.raises(ConfigError):
        from_config({"family": "composite", "parts": []})
    with pytest.raises(ConfigError):
        from_config({"params": {}})


_families = st.sampled_from(["square", "exponential", "poschl_teller", "gaussian"])
_pos = st.floats(0.1, 5.0)


@settings(max_examples=60, deadline=None)
@given(_families, _pos, _pos, st.floats(-50, 50))
def test_values_non_negative(name, V0, x0, x):
    assert evaluate(builtin(name, {"V0": V0, "x0": x0}), x) >= 0.0


@settings(max_examples=60, deadline=None)
@given(_families, st.floats(-10, 10), st.floats(-10, 10), st.floats(-20, 20))
def test_displacement_composes(name, d1, d2, x):
    p = builtin(name, {"V0": 1.0, "x0": 1.0})
    a = evaluate(displace(displace(p, d1), d2), x)
    b = evaluate(displace(p, d1 + d2), x)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-300) or (
        # a jump of the square edge can land between the two roundings
        name == "square" and abs(abs(x - d1 - d2) - 1.0) < 1e-12
    )


@settings(max_examples=40, deadline=None)
@given(_families, st.floats(1e-14, 1e-3), st.floats(0.01, 0.99))
def test_support_monotone_in_eps(name, eps, shrink):
    p = builtin(name, {"V0": 1.0, "x0": 1.0})
    lo1, hi1 = effective_support(p, eps)
    lo2, hi2 = effective_support(p, eps * shrink)
    assert lo2 <= lo1 and hi2 >= hi1
    # outside the interval V is below the threshold
    for x in (hi1 + 1e-9, lo1 - 1e-9, hi1 + 3.0):
        assert evaluate(p, x) < eps
