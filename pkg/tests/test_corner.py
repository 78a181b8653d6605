import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaremba_heat.corner import C_RIGHT_ANGLE, CornerAngle, corner_c, zaremba_sigma_constant


def _oracle(gamma: float) -> float:
    g = mp.mpf(gamma)
    f = lambda s: 4 * mp.sinh((mp.pi - g) * s) / (mp.sinh(mp.pi * s) * mp.cosh(g * s))  # noqa: E731
    return float(mp.quad(f, [0, 1, 5, mp.inf]))


def test_full_angle_value_and_speed():
    import time

    t0 = time.perf_counter()
    c = corner_c(2 * math.pi).value
    assert time.perf_counter() - t0 < 1.0
    assert abs(c + 1.0) <= 1e-10
    assert zaremba_sigma_constant() == pytest.approx(-0.5, abs=1e-10)


def test_right_angle_closed_form():
    assert corner_c(math.pi / 2).value == pytest.approx(C_RIGHT_ANGLE, abs=1e-12)


def test_straight_angle_vanishes():
    assert corner_c(math.pi).value == 0.0


@given(st.floats(min_value=0.2, max_value=2 * math.pi))
@settings(max_examples=25, deadline=None)
def test_matches_mpmath_and_routes_agree(gamma):
    a = corner_c(gamma, route="exp_sinh").value
    b = corner_c(gamma, route="split").value
    assert abs(a - b) <= 1e-10
    assert a == pytest.approx(_oracle(gamma), abs=1e-10)


def test_monotone_decreasing_in_angle():
    vals = [corner_c(g).value for g in (0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_invalid_angle_and_route():
    with pytest.raises(ValueError):
        CornerAngle(0.0)
    with pytest.raises(ValueError):
        corner_c(7.0)
    with pytest.raises(ValueError):
        corner_c(1.0, route="nope")


def test_fifty_point_grid_monotone_and_routes_agree():
    import numpy as np

    gs = np.linspace(2 * math.pi / 50, 2 * math.pi, 50)
    a = np.array([corner_c(g).value for g in gs])
    b = np.array([corner_c(g, route="split").value for g in gs])
    assert np.max(np.abs(a - b)) <= 1e-10
    assert np.all(np.diff(a) <= 1e-11)
