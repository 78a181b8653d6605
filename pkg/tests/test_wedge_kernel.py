import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaremba_heat import wedge_kernel as wk
from zaremba_heat.heat_fd import GridSpec, solve
from zaremba_heat.invariants import Arc, DataSpec, DomainSpec, Field
from zaremba_heat.numerics import gauss_legendre

SQRT_PI = math.sqrt(math.pi)


@pytest.fixture(scope="module")
def cases():
    return {k: wk.standard_case(k) for k in ("const", "sin", "cos")}


# ----------------------------------------------------------------------------
# angular data
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("kind", ["Const", "SinPhi", "CosPhi"])
def test_angular_coeffs_against_quadrature(kind):
    om = wk.AngularProfile(kind)
    x, w = gauss_legendre(200, 0.0, math.pi)
    for k in (0, 1, 2, 7, 30):
        ref = float(np.sum(w * om(x) * np.sin((k + 0.5) * x)))
        assert wk.angular_coeff(om, k) == pytest.approx(ref, abs=1e-13)


@given(st.lists(st.floats(min_value=-3, max_value=3), min_size=2, max_size=9))
@settings(max_examples=30, deadline=None)
def test_custom_coeffs_exact_for_piecewise_linear(samples):
    om = wk.AngularProfile("Custom", tuple(samples))
    nodes = np.linspace(0, math.pi, len(samples))
    k = 3
    total = 0.0
    for a, b in zip(nodes[:-1], nodes[1:]):
        x, w = gauss_legendre(30, a, b)
        total += float(np.sum(w * om(x) * np.sin((k + 0.5) * x)))
    assert wk.angular_coeff(om, k) == pytest.approx(total, abs=1e-12)


def test_custom_constant_matches_const():
    om = wk.AngularProfile("Custom", (1.0, 1.0, 1.0))
    np.testing.assert_allclose(wk.angular_coeffs(om, 10), wk.angular_coeffs(wk.AngularProfile("Const"), 10), rtol=1e-13)


@pytest.mark.parametrize("kind", ["const", "sin", "cos"])
def test_angular_correlation_closed_vs_quadrature_and_series(kind, cases):
    case = cases[kind]
    th = np.linspace(0.1, 3.0, 7)
    closed = wk.angular_correlation(case, th)
    quad = wk._correlation_quadrature(case.omega1, case.omega2, th)
    np.testing.assert_allclose(closed, quad, atol=1e-12)
    # the cosine series converges like 1/k^2
    a1 = wk.angular_coeffs(case.omega1, 20000)
    a2 = wk.angular_coeffs(case.omega2, 20000)
    k = np.arange(20001) + 0.5
    series = np.array([np.sum(a1 * a2 * np.cos(k * t)) for t in th])
    np.testing.assert_allclose(closed, series, atol=5e-4)


@pytest.mark.parametrize("kind", ["const", "sin", "cos"])
def test_sigma_kernel_closed_matches_k_sum(kind, cases):
    case = cases[kind]
    tau = np.array([0.05, 0.3, 1.0, 4.0])
    a = wk.angular_coeffs(case.omega1, 400000) * wk.angular_coeffs(case.omega2, 400000)
    k = np.arange(len(a))
    sgn = np.where(k % 2 == 0, 1.0, -1.0)
    num = np.array([np.sum(sgn * a * np.exp(-(k + 0.5) * t)) for t in tau])
    np.testing.assert_allclose(wk.sigma_kernel_closed(case, tau), num, atol=1e-9)


def test_const_with_odd_profile_rejected():
    with pytest.raises(ValueError):
        wk.WedgeCase(wk.AngularProfile("Const"), wk.AngularProfile("Const"), wk.RadialProfile.gaussian(), wk.RadialProfile.linear_gaussian())


def test_unsupported_leading_law():
    with pytest.raises(wk.UnsupportedCase):
        wk.sigma_leading("custom")
    assert wk.sigma_leading("const")[:2] == (1.0, -0.5)
    assert wk.sigma_leading("sin")[1] == pytest.approx(-2 / (3 * SQRT_PI))
    assert wk.sigma_leading("cos")[1] == pytest.approx(1 / (2 * SQRT_PI))


# ----------------------------------------------------------------------------
# heat content
# ----------------------------------------------------------------------------


def test_beta_full_small_time_limit(cases):
    # pi/2 = (pi)(1/2) for a unit Gaussian; the leading boundary term of the
    # Dirichlet ray is -sqrt(t) * int_0^inf exp(-r^2) dr * 2/sqrt(pi) = -sqrt(t).
    t = 1e-6
    b = wk.beta_full(cases["const"], t).value
    assert abs(b - math.pi / 2) / (math.pi / 2) < 1e-3
    assert abs(b + math.sqrt(t) - math.pi / 2) / (math.pi / 2) < 1e-4


def test_beta_full_monotone_in_t(cases):
    ts = np.geomspace(1e-4, 1e-1, 7)
    vals = [wk.beta_full(cases["const"], float(t)).value for t in ts]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("kind", ["const", "sin", "cos"])
@pytest.mark.parametrize("t", [1e-3, 1e-4])
def test_decomposition_full_equals_first_plus_sigma(kind, t, cases):
    case = cases[kind]
    full = wk.beta_full(case, t).value
    first = wk.beta_first_term(case, t).value
    sig = wk.beta_sigma(case, t).value
    assert abs(full - first - sig) < 1e-8 * max(1.0, abs(full))


@pytest.mark.parametrize("kind", ["const", "sin"])
def test_scaling_covariance(kind, cases):
    case = cases[kind]
    lam, t = 2.0, 1e-3
    scaled = wk.WedgeCase(case.omega1, case.omega2, case.r1.scaled(lam), case.r2.scaled(lam))
    for fn in (wk.beta_full, wk.beta_sigma):
        a = fn(case, t).value
        b = fn(scaled, t / lam**2).value
        assert b == pytest.approx(a / lam**2, rel=1e-8)


def test_k_truncation_tail_dominance(cases):
    case = cases["sin"]
    t = 1e-4
    a = wk.beta_sigma(case, t, tol=1e-10)
    b = wk.beta_sigma(case, t, tol=0.25e-10)  # roughly doubles the k range
    assert abs(a.value - b.value) < 1e-10
    with pytest.raises(wk.TruncationNotConverged):
        wk.beta_sigma(case, t, k_max=10)
    with pytest.raises(wk.TruncationNotConverged):
        wk.beta_full(case, t, k_max=10)


@pytest.mark.parametrize("kind,slope", [("const", 1.0), ("sin", 1.5), ("cos", 1.5)])
def test_sigma_log_log_slope(kind, slope, cases):
    ts = np.array([1e-5, 1e-3])
    vals = np.array([wk.beta_sigma(cases[kind], float(t)).value for t in ts])
    s = np.diff(np.log(np.abs(vals))) / np.diff(np.log(ts))
    assert abs(s[0] - slope) < 0.05


@pytest.mark.parametrize("kind", ["const", "sin", "cos"])
def test_leading_coefficients(kind, cases):
    ex = wk.extract_leading(cases[kind], per_decade=4)
    assert ex.rel_error < 1e-3
    r = wk.richardson_leading(cases[kind], 1e-4)
    assert r == pytest.approx(ex.expected, rel=1e-2)


def test_beta_full_matches_finite_differences(cases):
    L = 8.0
    arcs = (
        Arc("segment", "D", 0.0, start=(0.0, 0.0), end=(L, 0.0)),
        Arc("segment", "D", 0.0, start=(L, 0.0), end=(L, L)),
        Arc("segment", "D", 0.0, start=(L, L), end=(-L, L)),
        Arc("segment", "D", 0.0, start=(-L, L), end=(-L, 0.0)),
        Arc("segment", "R", 0.0, start=(-L, 0.0), end=(0.0, 0.0)),
    )
    bump = Field.from_dict({"type": "gaussian_bump", "center": [0.0, 0.0], "sigma": 1.0})
    data = DataSpec(bump, bump, Field.from_dict(0.0), "bump")
    grid = GridSpec(h=1 / 16, grading=("geometric", 0.7, 8), theta=0.5, c_dt=1e9, min_steps=256)
    fd = solve(DomainSpec(arcs, "half_plane_box"), data, grid, [1e-3]).beta[0]
    ref = wk.beta_full(cases["const"], 1e-3).value
    assert abs(fd / ref - 1) < 1e-3


def test_invalid_time(cases):
    with pytest.raises(ValueError):
        wk.beta_full(cases["const"], 0.0)
    with pytest.raises(ValueError):
        wk.beta_sigma(cases["const"], -1.0)
