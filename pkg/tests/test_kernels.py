import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaremba_heat import _kernels as kn
from zaremba_heat import specfun as sf


@pytest.mark.skipif(not kn.USE_NUMBA, reason="numba disabled")
@given(st.integers(min_value=0, max_value=60), st.integers(min_value=0, max_value=2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_miller_numba_matches_numpy(K, seed):
    rng = np.random.default_rng(seed)
    z = np.sort(rng.uniform(1e-3, 80.0, 17))
    c = rng.normal(size=K + 1)
    a = kn.miller_weighted_sum(z, c)
    b = kn.miller_weighted_sum_numpy(z, c)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-14 * np.abs(c).sum())


@pytest.mark.skipif(not kn.USE_NUMBA, reason="numba disabled")
def test_laplace_numba_matches_numpy():
    rng = np.random.default_rng(3)
    tau = np.sort(rng.uniform(1e-3, 30.0, 200))
    g = rng.normal(size=200)
    c = rng.normal(size=500)
    assert kn.laplace_weighted_sum(tau, g, c) == pytest.approx(kn.laplace_weighted_sum_numpy(tau, g, c), rel=1e-12)


def test_miller_against_specfun():
    z = np.array([1e-3, 0.5, 3.0, 40.0])
    for k in (0, 3, 11):
        c = np.zeros(k + 1)
        c[k] = 1.0
        expect = [sf.bessel_i_half_scaled(k, zi).value for zi in z]
        np.testing.assert_allclose(kn.miller_weighted_sum_numpy(z, c), expect, rtol=1e-12)
        np.testing.assert_allclose(kn.miller_weighted_sum(z, c), expect, rtol=1e-12)


def test_laplace_geometric_closed_form():
    tau = np.array([0.7])
    g = np.array([1.0])
    c = np.ones(400)
    q = np.exp(-0.7)
    expect = np.exp(-0.35) / (1 - q)
    assert kn.laplace_weighted_sum_numpy(tau, g, c) == pytest.approx(expect, rel=1e-13)


def test_numba_toggle_respected(monkeypatch):
    monkeypatch.setenv("ZHL_NUMBA", "0")
    assert not kn._want_numba()
    monkeypatch.setenv("ZHL_NUMBA", "1")
    assert kn._want_numba()
