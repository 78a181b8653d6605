"""Half-plane heat content with a Dirichlet/Neumann junction at the origin.

The half plane ``{(r cos phi, r sin phi) : 0 <= phi <= pi}`` carries a
Dirichlet condition on the ray ``phi = 0`` and a Neumann condition on
``phi = pi``.  For separable data ``phi = Omega_1(phi) R_1(r)`` and
``phi* = Omega_2(phi) R_2(r)`` the heat content is

    beta(t) = 1/(pi t) sum_k A_1(k) A_2(k)
              int int r r' R_1(r) R_2(r') e^{-(r^2 + r'^2)/4t} I_{k+1/2}(r r'/2t) dr dr'

with angular coefficients ``A_i(k) = int_0^pi Omega_i sin((k+1/2) phi) dphi``.
Splitting the Bessel function by its integral representation isolates the
junction part

    beta_sigma(t) = -1/(pi^2 t) sum_k (-1)^k A_1 A_2 int int r r' R_1 R_2
                    e^{-(r^2+r'^2)/4t} int_0^inf e^{-(r r'/2t) cosh tau - (k+1/2) tau} dtau dr dr'

whose small-``t`` behaviour reproduces the junction constants
``c_0 = -1/2``, ``c_5 = 1/(2 sqrt(pi))`` and ``c_6 = -2/(3 sqrt(pi))``.

Three independent routes are implemented:

* :func:`beta_full` sums scaled Bessel functions (Miller recurrence kernel),
* :func:`beta_sigma` integrates the ``tau`` representation in polar
  coordinates of the scaled radii,
* :func:`beta_first_term` integrates the ``theta`` representation with the
  k-sum carried out in closed form (angular correlation function).

``beta_full = beta_first_term + beta_sigma`` is a strong consistency check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from . import _kernels
from .numerics import EvalResult, FitBasis, exp_sinh_nodes, fit_half_powers, gauss_legendre, tanh_sinh_nodes

__all__ = [
    "AngularProfile",
    "RadialProfile",
    "WedgeCase",
    "TruncationNotConverged",
    "UnsupportedCase",
    "angular_coeff",
    "angular_coeffs",
    "angular_correlation",
    "sigma_kernel_closed",
    "beta_full",
    "beta_sigma",
    "beta_first_term",
    "sigma_leading",
    "extract_leading",
    "richardson_leading",
    "standard_case",
]

SQRT_PI = math.sqrt(math.pi)
Kind = Literal["Const", "SinPhi", "CosPhi", "Custom"]


class TruncationNotConverged(RuntimeError):
    """The k-sum needs more terms than ``k_max`` allows."""


class UnsupportedCase(ValueError):
    """No closed leading law exists for the requested angular kind."""


# ----------------------------------------------------------------------------
# profiles
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class AngularProfile:
    """Angular factor ``Omega(phi)`` on ``[0, pi]``.

    ``Custom`` profiles are given by equally spaced samples on ``[0, pi]``
    (endpoints included) and are interpolated linearly.
    """

    kind: Kind = "Const"
    samples: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("Const", "SinPhi", "CosPhi", "Custom"):
            raise ValueError(f"unknown angular kind {self.kind!r}")
        if self.kind == "Custom":
            if self.samples is None or len(self.samples) < 2:
                raise ValueError("Custom profile needs at least two samples")
            if not all(math.isfinite(s) for s in self.samples):
                raise ValueError("Custom samples must be finite")

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        if self.kind == "Const":
            return np.ones_like(phi)
        if self.kind == "SinPhi":
            return np.sin(phi)
        if self.kind == "CosPhi":
            return np.cos(phi)
        s = np.asarray(self.samples, dtype=float)
        return np.interp(phi, np.linspace(0.0, math.pi, len(s)), s)


@dataclass(frozen=True)
class RadialProfile:
    """Radial factor ``R(r)`` with compact (numerical) support.

    Attributes
    ----------
    evaluator : callable
        Vectorised ``R(r)``; must vanish for ``r >= support_radius``.
    value_at_0, deriv_at_0 : float
        ``R(0)`` and the one-sided derivative ``R'(0)``.
    support_radius : float
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    value_at_0: float
    deriv_at_0: float
    support_radius: float
    label: str = "custom"

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.asarray(self.evaluator(r), dtype=float)
        return np.where(r < self.support_radius, out, 0.0)

    @classmethod
    def gaussian(cls, sigma: float = 1.0, amplitude: float = 1.0) -> "RadialProfile":
        """``amplitude * exp(-r^2 / (2 sigma^2))`` cut at ``9.5 sigma``."""
        return cls(
            lambda r: amplitude * np.exp(-0.5 * (np.asarray(r) / sigma) ** 2),
            amplitude,
            0.0,
            9.5 * sigma,
            f"gaussian:{sigma}",
        )

    @classmethod
    def linear_gaussian(cls, sigma: float = 1.0, slope: float = 1.0) -> "RadialProfile":
        """``slope * r * exp(-r^2 / (2 sigma^2))``; ``R(0) = 0``, ``R'(0) = slope``."""
        return cls(
            lambda r: slope * np.asarray(r) * np.exp(-0.5 * (np.asarray(r) / sigma) ** 2),
            0.0,
            slope,
            10.0 * sigma,
            f"linear_gaussian:{sigma}",
        )

    def scaled(self, lam: float) -> "RadialProfile":
        """The profile ``r -> R(lam r)``."""
        ev = self.evaluator
        return RadialProfile(lambda r: ev(lam * np.asarray(r)), self.value_at_0, lam * self.deriv_at_0, self.support_radius / lam, f"{self.label}*{lam}")


@dataclass(frozen=True)
class WedgeCase:
    """Separable data ``phi = Omega_1 R_1`` and weight ``phi* = Omega_2 R_2``."""

    omega1: AngularProfile
    omega2: AngularProfile
    r1: RadialProfile
    r2: RadialProfile

    def __post_init__(self) -> None:
        for om, r in ((self.omega1, self.r1), (self.omega2, self.r2)):
            if om.kind == "Const" and r.deriv_at_0 != 0.0:
                raise ValueError("a Const angular factor requires an even radial profile (R'(0) = 0)")


def standard_case(kind: str, sigma: float = 1.0) -> WedgeCase:
    """The three studied configurations with Gaussian radial profiles.

    ``kind`` is ``"const"`` (Const/Const, both radial factors Gaussian),
    ``"sin"`` (Const/SinPhi) or ``"cos"`` (Const/CosPhi); in the last two the
    second radial factor is ``r exp(-r^2/2 sigma^2)``.
    """
    kind = kind.lower()
    g = RadialProfile.gaussian(sigma)
    if kind == "const":
        return WedgeCase(AngularProfile("Const"), AngularProfile("Const"), g, g)
    if kind == "sin":
        return WedgeCase(AngularProfile("Const"), AngularProfile("SinPhi"), g, RadialProfile.linear_gaussian(sigma))
    if kind == "cos":
        return WedgeCase(AngularProfile("Const"), AngularProfile("CosPhi"), g, RadialProfile.linear_gaussian(sigma))
    raise ValueError(f"unknown standard case {kind!r}")


# ----------------------------------------------------------------------------
# angular coefficients
# ----------------------------------------------------------------------------


def angular_coeffs(omega: AngularProfile, k_max: int) -> np.ndarray:
    """``A(k) = int_0^pi Omega(phi) sin((k+1/2) phi) dphi`` for ``k = 0..k_max``."""
    k = np.arange(k_max + 1, dtype=float)
    if omega.kind == "Const":
        return 1.0 / (k + 0.5)
    if omega.kind == "SinPhi":
        sign = np.where(k % 2 == 0, -1.0, 1.0)
        return sign * (1.0 / (2 * k - 1) - 1.0 / (2 * k + 3))
    if omega.kind == "CosPhi":
        return 1.0 / (2 * k - 1) + 1.0 / (2 * k + 3)
    # Custom: piecewise-linear samples integrate exactly against sin
    s = np.asarray(omega.samples, dtype=float)
    nodes = np.linspace(0.0, math.pi, len(s))
    out = np.empty(k_max + 1)
    for i, kk in enumerate(k):
        nu = kk + 0.5
        a, b = nodes[:-1], nodes[1:]
        fa, fb = s[:-1], s[1:]
        slope = (fb - fa) / (b - a)
        # int_a^b (fa + slope (x - a)) sin(nu x) dx
        term = (fa * np.cos(nu * a) - fb * np.cos(nu * b)) / nu + slope * (np.sin(nu * b) - np.sin(nu * a)) / nu**2
        out[i] = term.sum()
    return out


def angular_coeff(omega: AngularProfile, k: int) -> float:
    """Single angular coefficient ``A(k)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return float(angular_coeffs(omega, k)[k])


def _pair(case: WedgeCase) -> tuple[str, str]:
    return case.omega1.kind, case.omega2.kind


def angular_correlation(case: WedgeCase, theta) -> np.ndarray:
    """``C(theta) = sum_k A_1(k) A_2(k) cos((k+1/2) theta)`` on ``[0, pi]``.

    Equivalently ``(pi/4) int_0^pi Omega_1(phi) [W(phi + theta) + W(phi - theta)] dphi``
    where ``W`` extends ``Omega_2`` oddly across ``phi = 0`` and evenly across
    ``phi = pi``.  Closed forms for the three standard pairs; quadrature of
    the correlation integral otherwise.
    """
    th = np.asarray(theta, dtype=float)
    pair = tuple(sorted(_pair(case)))
    if pair == ("Const", "Const"):
        return 0.5 * math.pi * (math.pi - th)
    if pair == ("Const", "SinPhi"):
        return 0.5 * math.pi * (1.0 + np.cos(th))
    if pair == ("Const", "CosPhi"):
        return -0.5 * math.pi * np.sin(th)
    return _correlation_quadrature(case.omega1, case.omega2, th)


def _extend(omega: AngularProfile, phi: np.ndarray) -> np.ndarray:
    """Odd reflection across 0 and even reflection across pi (period 4 pi)."""
    p = np.mod(phi + 2 * math.pi, 4 * math.pi) - 2 * math.pi  # in [-2pi, 2pi)
    sign = np.where(p < 0, -1.0, 1.0)
    a = np.abs(p)
    a = np.where(a > math.pi, 2 * math.pi - a, a)
    return sign * omega(a)


def _correlation_quadrature(o1: AngularProfile, o2: AngularProfile, th: np.ndarray, n: int = 40) -> np.ndarray:
    # the extension jumps or kinks where phi +- theta crosses 0 or pi, and a
    # Custom profile kinks at its sample nodes: integrate panel by panel
    th2 = np.atleast_1d(th)
    cuts = [0.0, math.pi]
    for om in (o1, o2):
        if om.kind == "Custom":
            cuts.extend(np.linspace(0.0, math.pi, len(om.samples)).tolist())
    vals = []
    for t in th2:
        pts = set(cuts) | {t, math.pi - t}
        for c in cuts:
            pts |= {c - t, c + t}
        br = np.unique(np.clip(np.array(sorted(pts)), 0.0, math.pi))
        total = 0.0
        for a, b in zip(br[:-1], br[1:]):
            if b - a < 1e-15:
                continue
            x, w = gauss_legendre(n, a, b)
            total += float(np.sum(w * o1(x) * (_extend(o2, x + t) + _extend(o2, x - t))))
        vals.append(total)
    return 0.25 * math.pi * np.array(vals).reshape(np.shape(th))


def sigma_kernel_closed(case: WedgeCase, tau) -> np.ndarray:
    """Closed form of ``S(tau) = sum_k (-1)^k A_1 A_2 e^{-(k+1/2) tau}``.

    Available for the three standard pairs; used as an oracle for the
    numerical k-sum.  With ``u = e^{-tau/2}``:

    * Const/Const: ``4 Ti_2(u)`` (inverse tangent integral),
    * Const/SinPhi: ``2 cosh(tau/2) - 4 sinh^2(tau/2) artanh(u)``,
    * Const/CosPhi: ``-2 cosh(tau/2) + 2 sinh(tau) arctan(u)``.
    """
    tau = np.asarray(tau, dtype=float)
    u = np.exp(-0.5 * tau)
    pair = tuple(sorted(_pair(case)))
    if pair == ("Const", "Const"):
        # Ti_2(u) = int_0^u arctan(s)/s ds
        x, w = gauss_legendre(60, 0.0, 1.0)
        s = np.multiply.outer(u, x)
        return 4.0 * np.sum(np.arctan(s) / x * w, axis=-1)
    if pair == ("Const", "SinPhi"):
        return 2.0 * np.cosh(0.5 * tau) - 4.0 * np.sinh(0.5 * tau) ** 2 * np.arctanh(u)
    if pair == ("Const", "CosPhi"):
        return -2.0 * np.cosh(0.5 * tau) + 2.0 * np.sinh(tau) * np.arctan(u)
    raise UnsupportedCase("closed kernel only for the standard pairs")


def _coeff_bound(c: np.ndarray) -> float:
    """``C`` with ``|c_k| <= C / k^2`` for ``k >= 1`` (from the computed range)."""
    k = np.arange(1, len(c))
    return float(np.max(np.abs(c[1:]) * k * k)) if len(c) > 1 else float(abs(c[0]))


# ----------------------------------------------------------------------------
# quadrature grids
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class _Rule:
    x: np.ndarray
    w: np.ndarray


def _panel_rule(a: float, b: float, n: int) -> _Rule:
    """Composite Gauss-Legendre on geometrically growing panels of [a, b]."""
    edges = [a]
    step = 1.0
    while edges[-1] + step < b:
        edges.append(edges[-1] + step)
        step *= 3.0
    edges.append(b)
    xs, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(n, lo, hi)
        xs.append(x)
        ws.append(w)
    return _Rule(np.concatenate(xs), np.concatenate(ws))


def _yv_nodes(t: float, support: float, n_y: int, n_v: int, v_max: float = 6.5):
    """Nodes for ``int_0^Y dy int dv`` with ``y' = y + v >= 0``."""
    Y = support / (2.0 * math.sqrt(t))
    ry = _panel_rule(0.0, Y, n_y)
    xv, wv = np.polynomial.legendre.leggauss(n_v)
    y = ry.x[:, None]
    lo = -np.minimum(ry.x, v_max)[:, None]
    hi = np.minimum(v_max, Y - ry.x)[:, None]
    hi = np.maximum(hi, lo)
    v = lo + 0.5 * (hi - lo) * (xv[None, :] + 1.0)
    wvv = 0.5 * (hi - lo) * wv[None, :]
    W = ry.w[:, None] * wvv
    Yb = np.broadcast_to(y, v.shape)
    return Yb.ravel(), v.ravel(), W.ravel()


# ----------------------------------------------------------------------------
# heat content routes
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class _Config:
    n_y: int = 24
    n_v: int = 40


def beta_full(case: WedgeCase, t: float, k_max: int = 200000, tol: float = 1e-12, n_y: int = 24, n_v: int = 40) -> EvalResult:
    """Full half-plane heat content from the Bessel series.

    The Gaussian factor is split as ``e^{-(y - y')^2} * [e^{-z} I(z)]`` with
    ``y = r / (2 sqrt t)`` and ``z = 2 y y'``; the k-sum of scaled Bessel
    functions runs inside the Miller recurrence kernel.  Terms beyond
    ``k ~ sqrt(80 z)`` are below ``e^{-40}`` of the leading ones.

    Raises
    ------
    TruncationNotConverged
        If the required number of terms exceeds ``k_max``.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    support = min(case.r1.support_radius, case.r2.support_radius)
    y, v, W = _yv_nodes(t, support, n_y, n_v)
    yp = y + v
    s2 = 2.0 * math.sqrt(t)
    f = y * yp * case.r1(s2 * y) * case.r2(s2 * yp) * np.exp(-v * v) * W
    keep = (f != 0.0) & (yp > 0) & (y > 0)
    z = 2.0 * y[keep] * yp[keep]
    K = int(math.ceil(math.sqrt(80.0 * float(z.max())))) + 20
    if K > k_max:
        raise TruncationNotConverged(f"k-sum needs {K} terms, k_max = {k_max}")
    c = angular_coeffs(case.omega1, K) * angular_coeffs(case.omega2, K)
    S = _kernels.miller_weighted_sum(z, c)
    val = 16.0 * t / math.pi * float(np.sum(f[keep] * S))
    # truncation bound: sum_{k>K} C/k^2 * max e^{-z}I_{K}(z) is below e^{-40}
    err = abs(val) * 1e-13 + _coeff_bound(c) / K * math.exp(-40.0) * float(np.sum(np.abs(f[keep])))
    return EvalResult(val, err)


def beta_first_term(case: WedgeCase, t: float, n_y: int = 24, n_v: int = 40, n_theta: int = 64) -> EvalResult:
    """Contribution of the ``theta``-integral part of the Bessel representation.

    ``(16 t / pi) int int y y' R_1 R_2 e^{-(y - y')^2} Phi(2 y y') dy dy'`` with
    ``Phi(z) = (1/pi) int_0^pi e^{-z (1 - cos theta)} C(theta) dtheta`` and
    ``C`` the angular correlation (k-sum done in closed form).
    """
    support = min(case.r1.support_radius, case.r2.support_radius)
    y, v, W = _yv_nodes(t, support, n_y, n_v)
    yp = y + v
    s2 = 2.0 * math.sqrt(t)
    f = y * yp * case.r1(s2 * y) * case.r2(s2 * yp) * np.exp(-v * v) * W
    keep = (f != 0.0) & (yp > 0) & (y > 0)
    z = 2.0 * y[keep] * yp[keep]
    xg, wg = np.polynomial.legendre.leggauss(n_theta)
    th_max = np.minimum(math.pi, 14.0 / np.sqrt(z))
    Phi = np.empty_like(z)
    chunk = 20000
    for i0 in range(0, len(z), chunk):
        zz = z[i0 : i0 + chunk, None]
        tm = th_max[i0 : i0 + chunk, None]
        th = 0.5 * tm * (xg[None, :] + 1.0)
        ww = 0.5 * tm * wg[None, :]
        # 1 - cos = 2 sin^2(theta/2)
        Phi[i0 : i0 + chunk] = np.sum(np.exp(-2.0 * zz * np.sin(0.5 * th) ** 2) * angular_correlation(case, th) * ww, axis=1) / math.pi
    val = 16.0 * t / math.pi * float(np.sum(f[keep] * Phi))
    return EvalResult(val, abs(val) * 1e-12)


def _sigma_G(case: WedgeCase, t: float, tau: np.ndarray, n_theta_level: float, n_sigma: int) -> np.ndarray:
    """``G(tau) = int int y y' R_1 R_2 e^{-y^2 - y'^2 - 2 y y' cosh tau} dy dy'``.

    Polar coordinates ``y = rho cos th``, ``y' = rho sin th`` and
    ``rho = s / sqrt(1 + sin 2th cosh tau)`` give a Gaussian weight
    ``s^3 e^{-s^2}`` in ``s`` and an angular weight concentrated at both
    ends of ``[0, pi/2]``; the angle is integrated on ``[0, pi/4]`` with both
    mirror images so that nodes near either end are represented exactly.
    """
    dl, dr, wth = tanh_sinh_nodes(n_theta_level)
    th = 0.25 * math.pi * dl  # distance from 0, exact for small angles
    wth = 0.25 * math.pi * wth
    keep = (th > 0) & (wth > 1e-300)
    th, wth = th[keep], wth[keep]
    s, ws = gauss_legendre(n_sigma, 0.0, 7.0)
    ws = ws * s**3 * np.exp(-s * s)
    c, sn = np.cos(th), np.sin(th)
    s2t = 2.0 * math.sqrt(t)
    G = np.empty_like(tau)
    for j, tj in enumerate(tau):
        ch = math.cosh(tj)
        q = 1.0 + 2.0 * sn * c * ch
        ang = c * sn / (q * q) * wth
        rq = s2t * s[None, :] / np.sqrt(q)[:, None]
        a = rq * c[:, None]  # along the larger coordinate
        b = rq * sn[:, None]  # along the smaller coordinate
        # theta and pi/2 - theta: (y, y') = (a, b) and (b, a)
        term = case.r1(a) * case.r2(b) + case.r1(b) * case.r2(a)
        G[j] = float(np.sum(ang[:, None] * ws[None, :] * term))
    return G


def beta_sigma(
    case: WedgeCase,
    t: float,
    k_max: int = 400000,
    tol: float = 1e-10,
    tau_step: float = 1.0 / 16.0,
    theta_step: float = 1.0 / 32.0,
    n_sigma: int = 48,
) -> EvalResult:
    """Junction part of the half-plane heat content.

    With ``y = r/(2 sqrt t)``,

        beta_sigma = -(16 t / pi^2) sum_k c_k J_k,   c_k = (-1)^k A_1(k) A_2(k),
        J_k = int_0^inf e^{-(k+1/2) tau} G(tau) dtau.

    ``G`` is sampled once on an exp-sinh ``tau`` lattice and each ``J_k`` is
    the corresponding weighted sum.  The k-sum is truncated when the bound
    ``sum_{k>K} C G_max / k^3 <= C G_max / (2 K^2)`` falls below ``tol/2``
    (relative to ``|beta_sigma|``).

    Returns
    -------
    EvalResult
        The error estimate combines the truncation bound with the change
        under halving the ``tau`` step.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    tau, wt = exp_sinh_nodes(tau_step, t_min=-6.0, t_max=2.6)
    keep = tau < 80.0
    tau, wt = tau[keep], wt[keep]
    G = _sigma_G(case, t, tau, theta_step, n_sigma)
    g = wt * G
    c_probe = angular_coeffs(case.omega1, 64) * angular_coeffs(case.omega2, 64)
    C = _coeff_bound(c_probe)
    G_max = float(np.max(np.abs(G)))
    # first estimate of the magnitude to make tol relative
    sign = np.where(np.arange(65) % 2 == 0, 1.0, -1.0)
    rough = abs(_kernels.laplace_weighted_sum(tau, g, sign * c_probe)) + 1e-300
    K = int(math.ceil(math.sqrt(C * G_max / (0.5 * tol * rough)))) + 1
    if K > k_max:
        raise TruncationNotConverged(f"k-sum needs {K} terms, k_max = {k_max}")
    c = angular_coeffs(case.omega1, K) * angular_coeffs(case.omega2, K)
    c *= np.where(np.arange(K + 1) % 2 == 0, 1.0, -1.0)
    total = _kernels.laplace_weighted_sum(tau, g, c)
    # coarse lattice (every other node, doubled weight) for a step-halving estimate
    total_coarse = _kernels.laplace_weighted_sum(tau[::2], 2.0 * g[::2], c)
    pref = -16.0 * t / math.pi**2
    trunc = C * G_max / (2.0 * K * K)
    err = abs(pref) * (trunc + abs(total - total_coarse) ** 2 / max(abs(total), 1e-300))
    return EvalResult(pref * total, err)


# ----------------------------------------------------------------------------
# leading laws and extraction
# ----------------------------------------------------------------------------


def sigma_leading(kind: str) -> tuple[float, float, str]:
    """Closed leading law of ``beta_sigma`` for the studied pairs.

    Returns ``(power, factor, rule)`` meaning
    ``beta_sigma(t) ~ factor * rule * t**power``.
    """
    k = kind.lower()
    if k in ("const", "constphi"):
        return 1.0, -0.5, "R1(0)*R2(0)"
    if k in ("sin", "sinphi"):
        return 1.5, -2.0 / (3.0 * SQRT_PI), "R1(0)*R2'(0)"
    if k in ("cos", "cosphi"):
        return 1.5, 1.0 / (2.0 * SQRT_PI), "R1(0)*R2'(0)"
    raise UnsupportedCase(f"no closed leading law for {kind!r}")


def _case_kind(case: WedgeCase) -> str:
    pair = _pair(case)
    if pair == ("Const", "Const"):
        return "const"
    if pair == ("Const", "SinPhi"):
        return "sin"
    if pair == ("Const", "CosPhi"):
        return "cos"
    raise UnsupportedCase(f"angular pair {pair} has no closed leading law")


def expected_leading(case: WedgeCase) -> tuple[float, float]:
    """``(power, coefficient)`` predicted for ``case``."""
    kind = _case_kind(case)
    power, factor, _ = sigma_leading(kind)
    if kind == "const":
        return power, factor * case.r1.value_at_0 * case.r2.value_at_0
    return power, factor * case.r1.value_at_0 * case.r2.deriv_at_0


@dataclass
class LeadingExtraction:
    """Leading coefficient of ``beta_sigma`` extracted from samples."""

    power: float
    coefficient: float
    expected: float
    ts: np.ndarray
    values: np.ndarray
    fit: object = None
    meta: dict = field(default_factory=dict)

    @property
    def rel_error(self) -> float:
        return abs(self.coefficient / self.expected - 1.0)


def extract_leading(case: WedgeCase, t_min: float = 1e-5, t_max: float = 1e-3, per_decade: int = 6, order: int = 3) -> LeadingExtraction:
    """Fit ``beta_sigma(t) / t^p`` on the half-power ladder and report its constant term."""
    power, expected = expected_leading(case)
    n = max(2 * (order + 1), int(round(per_decade * math.log10(t_max / t_min))) + 1)
    ts = np.geomspace(t_min, t_max, n)
    vals = np.array([beta_sigma(case, float(t)).value for t in ts])
    fit = fit_half_powers(ts, vals / ts**power, FitBasis(order, (t_min, t_max)))
    return LeadingExtraction(power, float(fit.coefficients[0]), expected, ts, vals, fit)


def richardson_leading(case: WedgeCase, t: float) -> float:
    """Two-point estimate from ``t`` and ``t/4`` assuming a half-power ladder."""
    power, _ = expected_leading(case)
    L1 = beta_sigma(case, t).value / t**power
    L2 = beta_sigma(case, t / 4).value / (t / 4) ** power
    return 2.0 * L2 - L1
