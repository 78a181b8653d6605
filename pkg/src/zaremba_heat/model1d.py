"""Half-line model problems of the boundary-layer construction.

In the similarity variable ``nu = x / (2 sqrt t)`` the ansatz
``t^{k/2} U(nu)`` for ``(d_t - d_x^2) u = t^{k/2 - 1} F(nu)`` leads to

    U''(nu) + 2 nu U'(nu) - 2 k U(nu) = -4 F(nu),   nu >= 0,

with ``U(0) = G`` (Dirichlet) or ``U'(0) = H`` (Neumann).  The homogeneous
equation has the decaying solution ``psi_k(nu) = int_nu^inf (s - nu)^k e^{-s^2} ds``
and the polynomial solution ``phi_k(nu) = e^{-nu^2} d^k/dnu^k e^{nu^2}``; their
Wronskian is ``W = psi_k phi_k' - psi_k' phi_k = k! e^{-nu^2}``.

The Dirichlet solution follows the classical closed formula (an extra
``psi_k`` correction for even ``k`` enforces ``U(0) = 0``); the Neumann
solution reuses the same particular solution and corrects the slope with
``psi_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P

from .numerics import gauss_legendre

__all__ = [
    "NonDecayingInput",
    "ModelSolution",
    "psi_k",
    "psi_k_scaled",
    "phi_k",
    "phi_k_coeffs",
    "wronskian_constant",
    "solve_dirichlet_model",
    "solve_neumann_model",
    "solve_dirichlet_general",
    "solve_neumann_general",
    "ode_residual",
    "operator",
]

ArrayFn = Callable[[np.ndarray], np.ndarray]

_X_PANELS = (0.0, 1.0, 3.0, 8.0, 20.0, 60.0)


class NonDecayingInput(ValueError):
    """The forcing term ``F`` does not decay like a Gaussian."""


def psi_k_scaled(k: int, s) -> np.ndarray:
    """``e^{s^2} psi_k(s) = int_0^inf u^k e^{-u^2 - 2 s u} du`` for ``s >= 0``.

    The substitution ``u = x / (1 + 2 s)`` makes the integrand decay on an
    ``O(1)`` scale in ``x`` for every ``s``; composite Gauss-Legendre panels
    on ``[0, 60]`` then give full double precision.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("nu must be nonnegative")
    flat = s.reshape(-1)
    L = 1.0 / (1.0 + 2.0 * flat)
    total = np.zeros_like(flat)
    for a, b in zip(_X_PANELS[:-1], _X_PANELS[1:]):
        x, w = gauss_legendre(40, a, b)
        u = np.multiply.outer(L, x)
        total += np.sum(w * u**k * np.exp(-u * u - 2.0 * flat[:, None] * u), axis=1)
    return (total * L).reshape(s.shape)


def psi_k(k: int, nu) -> np.ndarray:
    """Decaying homogeneous solution ``int_nu^inf (s - nu)^k e^{-s^2} ds``."""
    nu = np.asarray(nu, dtype=float)
    return np.exp(-nu * nu) * psi_k_scaled(k, nu)


def phi_k_coeffs(k: int) -> np.ndarray:
    """Integer power-series coefficients of ``phi_k`` (lowest degree first).

    From ``phi_0 = 1``, ``phi_1 = 2 nu`` and ``phi_{k+1} = 2 nu phi_k + 2 k phi_{k-1}``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    prev = np.array([1], dtype=object)
    if k == 0:
        return prev.astype(float)
    cur = np.array([0, 2], dtype=object)
    for j in range(1, k):
        nxt = np.zeros(j + 2, dtype=object)
        nxt[1:] += 2 * cur
        nxt[: len(prev)] += 2 * j * prev
        prev, cur = cur, nxt
    return cur.astype(float)


def phi_k(k: int, nu) -> np.ndarray:
    """Polynomial homogeneous solution ``e^{-nu^2} d^k/dnu^k e^{nu^2}``."""
    return P.polyval(np.asarray(nu, dtype=float), phi_k_coeffs(k))


def _psi_k_deriv(k: int, nu) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    if k == 0:
        return -np.exp(-nu * nu)
    return -k * psi_k(k - 1, nu)


def wronskian_constant(k: int) -> float:
    """``e^{nu^2} (psi_k phi_k' - psi_k' phi_k)`` evaluated at ``nu = 0``; equals ``k!``."""
    c = phi_k_coeffs(k)
    phi0 = c[0]
    dphi0 = c[1] if len(c) > 1 else 0.0
    return float(psi_k(k, 0.0) * dphi0 - _psi_k_deriv(k, 0.0) * phi0)


def operator(U: ArrayFn, k: int, nu, h: float = 1e-3) -> np.ndarray:
    """``U'' + 2 nu U' - 2 k U`` by sixth-order central differences."""
    nu = np.asarray(nu, dtype=float)
    f = {j: U(nu + j * h) for j in range(-3, 4)}
    d1 = (-f[-3] + 9 * f[-2] - 45 * f[-1] + 45 * f[1] - 9 * f[2] + f[3]) / (60 * h)
    d2 = (2 * f[-3] - 27 * f[-2] + 270 * f[-1] - 490 * f[0] + 270 * f[1] - 27 * f[2] + 2 * f[3]) / (180 * h * h)
    return d2 + 2 * nu * d1 - 2 * k * f[0]


def _decay_screen(F: ArrayFn) -> None:
    """Require ``|F(nu)| e^{nu^2/2}`` to stay bounded on ``[3, 10]``."""
    near = np.linspace(0.0, 3.0, 61)
    far = np.linspace(3.0, 10.0, 141)
    fn = np.asarray(F(near), dtype=float)
    ff = np.asarray(F(far), dtype=float)
    if not (np.all(np.isfinite(fn)) and np.all(np.isfinite(ff))):
        raise NonDecayingInput("F is not finite on the screening grid")
    ref = float(np.max(np.abs(fn) * np.exp(0.5 * near**2))) + 1e-300
    worst = float(np.max(np.abs(ff) * np.exp(0.5 * far**2)))
    if worst > 1e3 * ref and worst > 1e-200:
        raise NonDecayingInput(f"F decays slower than a Gaussian (tail ratio {worst / ref:.3g})")


@dataclass(frozen=True)
class ModelSolution:
    """Decaying solution of the half-line model problem.

    Attributes
    ----------
    k : int
    evaluator : callable
        Vectorised ``U(nu)`` for ``nu >= 0``.
    derivative : callable
        Vectorised ``U'(nu)``.
    boundary_value : float
        The prescribed ``G`` (Dirichlet) or ``H`` (Neumann).
    rhs : callable
        The forcing ``F``.
    kind : str
        ``"dirichlet"`` or ``"neumann"``.
    """

    k: int
    evaluator: ArrayFn
    derivative: ArrayFn
    boundary_value: float
    rhs: ArrayFn
    kind: str

    def __call__(self, nu) -> np.ndarray:
        return self.evaluator(nu)

    def residual(self, nu) -> np.ndarray:
        """``U'' + 2 nu U' - 2 k U + 4 F`` by finite differences (independent of the construction)."""
        return ode_residual(self, nu)

    def boundary_error(self) -> float:
        if self.kind == "dirichlet":
            return abs(float(self.evaluator(np.array([0.0]))[0]) - self.boundary_value)
        return abs(float(self.derivative(np.array([0.0]))[0]) - self.boundary_value)


def ode_residual(sol: ModelSolution, nu) -> np.ndarray:
    """ODE residual of ``sol`` on the points ``nu`` (each at least ``0.003``)."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 3e-3):
        raise ValueError("finite-difference residual needs nu >= 0.003")
    return operator(sol.evaluator, sol.k, nu) + 4.0 * np.asarray(sol.rhs(nu), dtype=float)


class _Particular:
    """Variation-of-parameters particular solution with ``U(0) = 0``.

    ``U = (4/k!) [psi_k(nu) int_0^nu e^{s^2} phi_k F + phi_k(nu) int_nu^inf e^{s^2} psi_k F]``
    minus, for even ``k``, the multiple of ``psi_k`` that restores ``U(0) = 0``.
    """

    def __init__(self, k: int, F: ArrayFn, n: int = 48, s_max: float = 12.0):
        self.k, self.F = k, F
        self.n, self.s_max = n, s_max
        self.c = 4.0 / math.factorial(k)
        self.tail0 = self._tail(np.array([0.0]))[0]
        self.even_corr = 0.0
        if k % 2 == 0:
            # U(0) = c phi_k(0) * tail0 must be cancelled by a multiple of psi_k
            self.even_corr = self.c * phi_k(k, 0.0) * self.tail0 / psi_k(k, 0.0)

    def _nodes(self, a: np.ndarray, b: np.ndarray):
        x, w = np.polynomial.legendre.leggauss(self.n)
        panels = 4
        out_s, out_w = [], []
        for j in range(panels):
            lo = a + (b - a) * j / panels
            hi = a + (b - a) * (j + 1) / panels
            out_s.append(0.5 * (hi - lo)[:, None] * (x[None, :] + 1.0) + lo[:, None])
            out_w.append(0.5 * (hi - lo)[:, None] * w[None, :])
        return np.concatenate(out_s, axis=1), np.concatenate(out_w, axis=1)

    def _head(self, nu: np.ndarray) -> np.ndarray:
        """``int_0^nu e^{s^2} phi_k(s) F(s) ds``."""
        s, w = self._nodes(np.zeros_like(nu), nu)
        return np.sum(w * np.exp(s * s) * phi_k(self.k, s) * self.F(s), axis=1)

    def _tail(self, nu: np.ndarray) -> np.ndarray:
        """``int_nu^inf e^{s^2} psi_k(s) F(s) ds`` (the scaled psi removes the growth)."""
        top = np.maximum(nu, 0.0) + self.s_max
        s, w = self._nodes(nu, top)
        return np.sum(w * psi_k_scaled(self.k, s) * self.F(s), axis=1)

    def value(self, nu) -> np.ndarray:
        nu = np.atleast_1d(np.asarray(nu, dtype=float))
        k = self.k
        # psi_k(nu) e^{s^2} over s < nu is written as e^{s^2 - nu^2} Psi_k(nu)
        s, w = self._nodes(np.zeros_like(nu), nu)
        head = np.sum(w * np.exp(s * s - (nu * nu)[:, None]) * phi_k(k, s) * self.F(s), axis=1)
        out = self.c * (psi_k_scaled(k, nu) * head + phi_k(k, nu) * self._tail(nu))
        return out - self.even_corr * psi_k(k, nu)

    def deriv(self, nu) -> np.ndarray:
        nu = np.atleast_1d(np.asarray(nu, dtype=float))
        k = self.k
        s, w = self._nodes(np.zeros_like(nu), nu)
        head = np.sum(w * np.exp(s * s - (nu * nu)[:, None]) * phi_k(k, s) * self.F(s), axis=1)
        dpsi_scaled = _psi_k_deriv(k, nu) * np.exp(nu * nu)
        dphi = P.polyval(nu, P.polyder(phi_k_coeffs(k))) if k > 0 else np.zeros_like(nu)
        out = self.c * (dpsi_scaled * head + dphi * self._tail(nu))
        return out - self.even_corr * _psi_k_deriv(k, nu)


def _check_k(k: int) -> None:
    if not (isinstance(k, (int, np.integer)) and k >= 0):
        raise ValueError("k must be a nonnegative integer")


def _zero(nu):
    return np.zeros_like(np.asarray(nu, dtype=float))


def solve_dirichlet_model(k: int, F: ArrayFn | None, G: float) -> ModelSolution:
    """Decaying solution with ``U(0) = G``.

    ``U = 2 G psi_k / Gamma((k+1)/2) + particular``, where the particular part
    vanishes at ``0``.

    Raises
    ------
    NonDecayingInput
        If ``F`` fails the Gaussian decay screen.
    """
    _check_k(k)
    F = F or _zero
    _decay_screen(F)
    part = _Particular(k, F)
    a = 2.0 * G / math.gamma(0.5 * (k + 1))

    def U(nu):
        return a * psi_k(k, nu) + part.value(nu)

    def dU(nu):
        return a * _psi_k_deriv(k, nu) + part.deriv(nu)

    return ModelSolution(k, U, dU, float(G), F, "dirichlet")


def solve_neumann_model(k: int, F: ArrayFn | None, H: float) -> ModelSolution:
    """Decaying solution with ``U'(0) = H``.

    Same particular solution as the Dirichlet problem; the homogeneous
    correction ``a psi_k`` with ``a = (H - U_p'(0)) / psi_k'(0)`` fixes the
    slope (``psi_k'(0) = -k psi_{k-1}(0)``, or ``-1`` for ``k = 0``).
    """
    _check_k(k)
    F = F or _zero
    _decay_screen(F)
    part = _Particular(k, F)
    slope0 = float(part.deriv(np.array([0.0]))[0])
    a = (H - slope0) / float(_psi_k_deriv(k, 0.0))

    def U(nu):
        return a * psi_k(k, nu) + part.value(nu)

    def dU(nu):
        return a * _psi_k_deriv(k, nu) + part.deriv(nu)

    return ModelSolution(k, U, dU, float(H), F, "neumann")


def _rescaled(sol: ModelSolution, a: float, F: ArrayFn, boundary_value: float) -> ModelSolution:
    r = math.sqrt(a)

    def U(xi):
        return sol.evaluator(np.asarray(xi, dtype=float) / r)

    def dU(xi):
        return sol.derivative(np.asarray(xi, dtype=float) / r) / r

    return ModelSolution(sol.k, U, dU, boundary_value, F, sol.kind)


def solve_dirichlet_general(k: int, F: ArrayFn | None, G: float, a: float) -> ModelSolution:
    """Model problem with diffusivity ``a > 0``: ``a U'' + 2 xi U' - 2 k U = -4 F``.

    Substituting ``xi = sqrt(a) eta`` (time rescaled by ``a``) reduces it to
    the ``a = 1`` problem for ``V(eta) = U(sqrt(a) eta)`` with forcing
    ``F(sqrt(a) eta)`` and the same boundary value.
    """
    if not a > 0:
        raise ValueError("a must be positive")
    F = F or _zero
    r = math.sqrt(a)
    base = solve_dirichlet_model(k, lambda eta: F(r * np.asarray(eta)), G)
    return _rescaled(base, a, F, G)


def solve_neumann_general(k: int, F: ArrayFn | None, H: float, a: float) -> ModelSolution:
    """Neumann analogue of :func:`solve_dirichlet_general`; ``V'(0) = sqrt(a) H``."""
    if not a > 0:
        raise ValueError("a must be positive")
    F = F or _zero
    r = math.sqrt(a)
    base = solve_neumann_model(k, lambda eta: F(r * np.asarray(eta)), r * H)
    return _rescaled(base, a, F, H)
