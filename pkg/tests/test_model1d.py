import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import erfc

from zaremba_heat import model1d as m

NU = np.linspace(0.01, 4.0, 40)


def _psi_oracle(k, nu):
    # e^{-nu^2} int_0^inf u^k e^{-u^2 - 2 nu u} du keeps mpmath well conditioned
    val = mp.quad(lambda u: u**k * mp.exp(-u * u - 2 * nu * u), [0, 1, 4, mp.inf])
    return float(mp.exp(-nu * nu) * val)


FORCINGS = {
    "gauss": lambda nu: np.exp(-np.asarray(nu) ** 2),
    "poly_gauss": lambda nu: (1 + np.asarray(nu) ** 3) * np.exp(-np.asarray(nu) ** 2),
    "shifted": lambda nu: np.exp(-((np.asarray(nu) - 1.0) ** 2)),
}


def test_psi0_at_origin():
    assert float(m.psi_k(0, 0.0)) == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-12)


@pytest.mark.parametrize("k", [0, 1, 2, 5])
@pytest.mark.parametrize("nu", [0.0, 0.5, 2.0, 6.0])
def test_psi_matches_mpmath(k, nu):
    assert float(m.psi_k(k, nu)) == pytest.approx(_psi_oracle(k, nu), rel=1e-12)


@pytest.mark.parametrize("k", range(6))
def test_homogeneous_solutions_and_wronskian(k):
    assert np.max(np.abs(m.operator(lambda x: m.psi_k(k, x), k, NU))) < 1e-7
    assert np.max(np.abs(m.operator(lambda x: m.phi_k(k, x), k, NU))) < 1e-6 * max(1, np.max(np.abs(m.phi_k(k, NU))))
    assert m.wronskian_constant(k) == pytest.approx(math.factorial(k), rel=1e-12)


def test_phi_coeffs_are_hermite_like():
    np.testing.assert_array_equal(m.phi_k_coeffs(3), [0, 12, 0, 8])


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("fname", sorted(FORCINGS))
@pytest.mark.parametrize("kind", ["dirichlet", "neumann"])
def test_model_problem_residual_and_boundary(k, fname, kind):
    F = FORCINGS[fname]
    sol = m.solve_dirichlet_model(k, F, 0.7) if kind == "dirichlet" else m.solve_neumann_model(k, F, -0.3)
    assert np.max(np.abs(sol.residual(NU))) <= 1e-7
    assert sol.boundary_error() <= 1e-10
    # decaying
    assert abs(float(sol(np.array([8.0]))[0])) < 1e-8


def test_known_closed_forms():
    nu = np.linspace(0, 5, 21)
    np.testing.assert_allclose(m.solve_dirichlet_model(0, None, 1.0)(nu), erfc(nu), atol=1e-15)
    np.testing.assert_allclose(m.solve_neumann_model(0, None, 1.0)(nu), -math.sqrt(math.pi) / 2 * erfc(nu), atol=1e-15)


@given(st.integers(min_value=0, max_value=4), st.floats(min_value=0.5, max_value=5.0), st.floats(min_value=-2, max_value=2))
@settings(max_examples=10, deadline=None)
def test_general_diffusivity(k, a, bv):
    F = FORCINGS["gauss"]
    xi = np.linspace(0.02, 3.0, 12)
    for sol in (m.solve_dirichlet_general(k, F, bv, a), m.solve_neumann_general(k, F, bv, a)):
        h = 1e-3
        f = {j: sol(xi + j * h) for j in range(-3, 4)}
        d1 = (-f[-3] + 9 * f[-2] - 45 * f[-1] + 45 * f[1] - 9 * f[2] + f[3]) / (60 * h)
        d2 = (2 * f[-3] - 27 * f[-2] + 270 * f[-1] - 490 * f[0] + 270 * f[1] - 27 * f[2] + 2 * f[3]) / (180 * h * h)
        res = a * d2 + 2 * xi * d1 - 2 * k * f[0] + 4 * F(xi)
        assert np.max(np.abs(res)) < 1e-6
        assert sol.boundary_error() <= 1e-10


def test_zero_data_gives_zero_solution():
    sol = m.solve_dirichlet_model(3, None, 0.0)
    assert np.max(np.abs(sol(NU))) == 0.0


def test_linearity_in_forcing_and_boundary_value():
    F1, F2 = FORCINGS["gauss"], FORCINGS["shifted"]
    for solve in (m.solve_dirichlet_model, m.solve_neumann_model):
        a = solve(2, F1, 0.4)
        b = solve(2, F2, -1.1)
        c = solve(2, lambda nu: 2 * F1(nu) - 3 * F2(nu), 2 * 0.4 + 3 * 1.1)
        np.testing.assert_allclose(c(NU), 2 * a(NU) - 3 * b(NU), atol=1e-12)


def test_gaussian_tail_envelope():
    nu = np.linspace(3.0, 6.0, 31)
    for sol in (m.solve_dirichlet_model(2, FORCINGS["poly_gauss"], 1.0), m.solve_neumann_model(1, FORCINGS["gauss"], 1.0)):
        env = np.abs(sol(nu)) * np.exp(0.9 * nu**2)
        assert np.max(env) < 10.0


def test_non_decaying_input_rejected():
    with pytest.raises(m.NonDecayingInput):
        m.solve_dirichlet_model(1, lambda nu: np.ones_like(np.asarray(nu, float)), 0.0)
    with pytest.raises(m.NonDecayingInput):
        m.solve_neumann_model(0, lambda nu: np.exp(-0.1 * np.asarray(nu) ** 2), 0.0)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        m.psi_k(-1, 0.0)
    with pytest.raises(ValueError):
        m.psi_k(0, -1.0)
    with pytest.raises(ValueError):
        m.solve_dirichlet_general(0, None, 1.0, 0.0)
    sol = m.solve_dirichlet_model(0, None, 1.0)
    with pytest.raises(ValueError):
        sol.residual(np.array([0.0]))


def test_phi4_against_derivatives_of_gaussian():
    nu = 0.7
    d4 = float(mp.diff(lambda x: mp.exp(x * x), nu, 4) * mp.exp(-nu * nu))
    assert float(m.phi_k(4, nu)) == pytest.approx(d4, abs=1e-6)
    assert float(m.phi_k(1, nu)) == pytest.approx(2 * nu)
