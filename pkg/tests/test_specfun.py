import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaremba_heat import specfun as sf

mp.mp.dps = 30


def _i_half_scaled_oracle(k, z):
    return float(mp.besseli(k + mp.mpf(1) / 2, z) * mp.exp(-z))


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0, 2.5, 7.0, 30.0, 200.0])
def test_digamma_trigamma_match_mpmath(x):
    assert sf.digamma(x) == pytest.approx(float(mp.digamma(x)), rel=1e-13, abs=1e-14)
    assert sf.trigamma(x) == pytest.approx(float(mp.psi(1, x)), rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -3.0])
def test_digamma_poles_raise(x):
    with pytest.raises(sf.DomainError):
        sf.digamma(x)


@pytest.mark.parametrize("s,a", [(2.0, 0.25), (2.0, 0.75), (3.0, 1.5), (1.5, 10.0)])
def test_hurwitz_zeta_matches_mpmath(s, a):
    assert sf.hurwitz_zeta(s, a) == pytest.approx(float(mp.zeta(s, a)), rel=1e-13)


@given(st.floats(min_value=0.05, max_value=200.0))
@settings(max_examples=60, deadline=None)
def test_beta_split_matches_alternating_series(x):
    exact = float((mp.digamma((x + 1) / 2) - mp.digamma(x / 2)) / 2)
    assert sf.beta_split(x) == pytest.approx(exact, rel=1e-12)


def test_beta_split_branch_continuity():
    lo, hi = sf.beta_split(20.0 - 1e-12), sf.beta_split(20.0)
    assert abs(lo - hi) < 1e-14


def test_beta_fn_and_gamma_ln():
    assert sf.beta_fn(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)
    assert sf.gamma_ln(10.5) == pytest.approx(float(mp.loggamma(10.5)), rel=1e-14)


@pytest.mark.parametrize("k", [0, 1, 2, 3, 7, 20, 60])
@pytest.mark.parametrize("z", [1e-6, 1e-3, 0.1, 1.0, 10.0, 100.0, 700.0])
def test_bessel_scaled_matches_mpmath(k, z):
    exact = _i_half_scaled_oracle(k, z)
    got = sf.bessel_i_half_scaled(k, z).value
    if exact < 1e-290:
        assert abs(got) < 1e-280
    else:
        assert got == pytest.approx(exact, rel=1e-11)


@given(st.integers(min_value=0, max_value=25), st.floats(min_value=0.01, max_value=50.0))
@settings(max_examples=40, deadline=None)
def test_bessel_routes_agree(k, z):
    a = sf.bessel_i_half_scaled(k, z).value
    b = sf.bessel_i_half_by_integral(k, z).value
    assert abs(a - b) <= 1e-9


def test_bessel_series_oracle_small_argument():
    for k in (0, 4, 12):
        assert sf.bessel_i_half_series(k, 0.3) == pytest.approx(_i_half_scaled_oracle(k, 0.3), rel=1e-13)


def test_half_int_order_rejects_bad_index():
    with pytest.raises(sf.DomainError):
        sf.HalfIntOrder(-1)
    with pytest.raises(sf.DomainError):
        sf.HalfIntOrder(1.5)
    assert sf.HalfIntOrder(3).nu == 3.5


@pytest.mark.parametrize("x", [-0.9, -1e-5, 0.0, 1e-6, 0.3, 0.99])
def test_hyp2f1_special(x):
    exact = float(mp.hyp2f1(1, 1.5, 2, x))
    assert sf.hyp2f1_special(x) == pytest.approx(exact, rel=1e-13)


def test_catalan_by_series():
    r = sf.catalan_by_series()
    assert abs(r.value - float(mp.catalan)) < 1e-14
    assert sf.catalan() == float(mp.catalan)


def test_tau_term_is_negative_piece_for_even_k():
    # For even k the second term of the representation is negative.
    v = sf.bessel_i_half_tau_term(0, 1.0).value
    exact = -float(mp.quad(lambda u: mp.exp(-(mp.cosh(u) + 1) - u / 2), [0, 2, 5, 10])) / math.pi
    assert v == pytest.approx(exact, rel=1e-12)
    assert np.sign(sf.bessel_i_half_tau_term(1, 1.0).value) == 1


def test_bessel_routes_on_reference_grid():
    worst = 0.0
    for k in range(21):
        for z in (0.01, 0.1, 1.0, 5.0, 10.0, 50.0):
            worst = max(worst, abs(sf.bessel_i_half_scaled(k, z).value - sf.bessel_i_half_by_integral(k, z).value))
    assert worst <= 1e-9
