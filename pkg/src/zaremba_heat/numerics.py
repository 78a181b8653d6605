"""Quadrature, alternating-series acceleration and half-power least squares.

The quadrature rules are double-exponential (tanh-sinh on finite intervals,
exp-sinh on the half line) refined by halving the step until two consecutive
levels agree.  Integrands are called with 1-d ``numpy`` arrays; callables that
only accept scalars are wrapped transparently.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

__all__ = [
    "EvalResult",
    "QuadratureSpec",
    "FitBasis",
    "FitResult",
    "NonConvergence",
    "NoAlternation",
    "IllConditionedWarning",
    "integrate_finite",
    "integrate_semi_infinite",
    "gauss_legendre",
    "tanh_sinh_nodes",
    "exp_sinh_nodes",
    "alt_series_sum",
    "cvz_sum",
    "log_grid",
    "fit_half_powers",
]

Transform = Literal["none", "semi_infinite_exp", "semi_infinite_gauss"]


@dataclass(frozen=True)
class EvalResult:
    """A value together with an absolute error estimate.

    Attributes
    ----------
    value : float
        The computed value.  Always finite.
    abs_err_estimate : float
        Non-negative estimate of ``|value - exact|``.
    """

    value: float
    abs_err_estimate: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise FloatingPointError(f"non-finite value {self.value!r}")
        if not (self.abs_err_estimate >= 0.0):
            raise ValueError("abs_err_estimate must be non-negative")

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and variable transform for the adaptive rules."""

    rel_tol: float = 1e-13
    abs_tol: float = 1e-15
    max_subdivisions: int = 9
    transform: Transform = "none"

    def __post_init__(self) -> None:
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.transform not in ("none", "semi_infinite_exp", "semi_infinite_gauss"):
            raise ValueError(f"unknown transform {self.transform!r}")


class NonConvergence(RuntimeError):
    """Raised when a quadrature or series does not reach its tolerance.

    The best available value and its error estimate are attached.
    """

    def __init__(self, message: str, value: float, error: float):
        super().__init__(f"{message} (value={value!r}, error estimate={error:.3e})")
        self.value = value
        self.error = error


class NoAlternation(ValueError):
    """Raised when a series handed to :func:`alt_series_sum` does not alternate."""


class IllConditionedWarning(RuntimeWarning):
    """Emitted when a least-squares design matrix has condition number > 1e12."""


# ----------------------------------------------------------------------------
# helpers
# ----------------------------------------------------------------------------


def _vectorized(f: Callable) -> Callable[[np.ndarray], np.ndarray]:
    """Return a version of ``f`` that maps 1-d arrays to 1-d arrays."""

    def g(x: np.ndarray) -> np.ndarray:
        try:
            y = np.asarray(f(x), dtype=float)
            if y.shape == x.shape:
                return y
            if y.ndim == 0:
                return np.full(x.shape, float(y))
        except (TypeError, ValueError):
            pass
        return np.array([float(f(float(xi))) for xi in x], dtype=float)

    return g


def _check_finite(y: np.ndarray, where: str) -> None:
    if not np.all(np.isfinite(y)):
        raise FloatingPointError(f"integrand returned non-finite values {where}")


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to ``[a, b]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def tanh_sinh_nodes(h: float, t_max: float = 4.5, offset: float = 0.0):
    """Abscissae and weights of the tanh-sinh rule on (0, 1).

    Returns ``(d_left, d_right, w)`` where ``d_left`` is the distance of each
    node from 0 and ``d_right`` the distance from 1.  Keeping both distances
    lets callers place nodes near either endpoint without cancellation.
    ``offset`` shifts the lattice (``offset = h/2`` produces the odd nodes of
    the next level).
    """
    n = int(math.floor((t_max - offset) / h))
    t = offset + h * np.arange(-n - (1 if offset else 0), n + 1)
    t = t[np.abs(t) <= t_max]
    u = 0.5 * math.pi * np.sinh(t)
    e = np.exp(-2.0 * np.abs(u))
    small = e / (1.0 + e)  # distance to the near endpoint
    big = 1.0 / (1.0 + e)
    d_left = np.where(u < 0, small, big)
    d_right = np.where(u < 0, big, small)
    w = h * 0.5 * math.pi * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2 * 0.5
    return d_left, d_right, w


def exp_sinh_nodes(h: float, t_min: float = -4.5, t_max: float = 3.2, offset: float = 0.0):
    """Abscissae and weights of the exp-sinh rule on (0, inf)."""
    k_lo = int(math.ceil((t_min - offset) / h))
    k_hi = int(math.floor((t_max - offset) / h))
    t = offset + h * np.arange(k_lo, k_hi + 1)
    x = np.exp(0.5 * math.pi * np.sinh(t))
    w = h * 0.5 * math.pi * np.cosh(t) * x
    return x, w


def _converged(err: float, value: float, spec: QuadratureSpec) -> bool:
    return err <= max(spec.abs_tol, spec.rel_tol * abs(value))


def _adaptive(level_sum: Callable[[float, float], float], h0: float, spec: QuadratureSpec, what: str) -> EvalResult:
    """Halve the step of a trapezoidal-type rule until convergence.

    ``level_sum(h, offset)`` returns the weighted sum over the lattice
    ``offset + h*Z``.  Level ``l`` reuses the sum of level ``l-1``.
    """
    h = h0
    total = level_sum(h, 0.0)
    prev = total
    err = math.inf
    for _ in range(spec.max_subdivisions):
        total = 0.5 * total + level_sum(h, 0.5 * h) * 0.5
        h *= 0.5
        # ``total`` is now the rule with step h
        err = abs(total - prev)
        if _converged(err, total, spec):
            return EvalResult(float(total), float(err))
        prev = total
    raise NonConvergence(f"{what} did not converge", float(total), float(err))


# ----------------------------------------------------------------------------
# quadrature
# ----------------------------------------------------------------------------


def integrate_finite(f: Callable, a: float, b: float, spec: QuadratureSpec | None = None) -> EvalResult:
    """Integrate ``f`` over ``[a, b]`` with adaptive tanh-sinh quadrature.

    Integrable endpoint singularities of type ``x**p`` with ``p > -1`` are
    handled; nodes that round onto an endpoint are dropped.

    Parameters
    ----------
    f : callable
        Integrand, evaluated on 1-d arrays.
    a, b : float
        Interval endpoints with ``a < b``.
    spec : QuadratureSpec, optional
        Tolerances.  ``transform`` is ignored for finite intervals.

    Returns
    -------
    EvalResult

    Raises
    ------
    NonConvergence
        If the tolerance is not met after ``spec.max_subdivisions`` halvings.
    """
    if not a < b:
        raise ValueError("integrate_finite requires a < b")
    spec = spec or QuadratureSpec()
    g = _vectorized(f)
    width = b - a

    def level_sum(h: float, offset: float) -> float:
        dl, dr, w = tanh_sinh_nodes(h, offset=offset)
        x = np.where(dl <= dr, a + width * dl, b - width * dr)
        keep = (x > a) & (x < b) & (w > 0)
        if not np.any(keep):
            return 0.0
        y = g(x[keep])
        _check_finite(y, f"on [{a}, {b}]")
        return float(np.sum(y * w[keep])) * width

    return _adaptive(level_sum, 0.5, spec, "tanh-sinh quadrature")


def integrate_semi_infinite(f: Callable, spec: QuadratureSpec | None = None) -> EvalResult:
    """Integrate ``f`` over ``(0, inf)``.

    ``spec.transform`` selects the route:

    ``"semi_infinite_exp"`` (also used for ``"none"``)
        exp-sinh rule on the whole half line.
    ``"semi_infinite_gauss"``
        Gauss-Legendre on ``[0, 1]`` plus the substitution ``x = 1 - ln u``
        on ``[1, inf)`` followed by tanh-sinh in ``u``.  Used as an
        independent second route.

    The integrand must return finite values everywhere on the half line
    (including very large arguments).
    """
    spec = spec or QuadratureSpec(transform="semi_infinite_exp")
    g = _vectorized(f)
    if spec.transform == "semi_infinite_gauss":
        return _split_gauss_route(g, spec)

    def level_sum(h: float, offset: float) -> float:
        x, w = exp_sinh_nodes(h, offset=offset)
        y = g(x)
        _check_finite(y, "on (0, inf)")
        return float(np.sum(y * w))

    return _adaptive(level_sum, 0.5, spec, "exp-sinh quadrature")


def _split_gauss_route(g: Callable[[np.ndarray], np.ndarray], spec: QuadratureSpec) -> EvalResult:
    prev = None
    head = None
    err_head = math.inf
    for n in (16, 32, 64, 128, 256):
        x, w = gauss_legendre(n, 0.0, 1.0)
        val = float(np.sum(g(x) * w))
        if prev is not None:
            err_head = abs(val - prev)
            if _converged(err_head, val, spec):
                head = val
                break
        prev = val
    if head is None:
        raise NonConvergence("Gauss-Legendre head did not converge", float(prev), err_head)

    def tail_integrand(u: np.ndarray) -> np.ndarray:
        return g(1.0 - np.log(u)) / u

    tail = integrate_finite(tail_integrand, 0.0, 1.0, QuadratureSpec(spec.rel_tol, spec.abs_tol, spec.max_subdivisions))
    return EvalResult(head + tail.value, err_head + tail.abs_err_estimate)


# ----------------------------------------------------------------------------
# alternating series
# ----------------------------------------------------------------------------


def cvz_sum(terms: np.ndarray) -> float:
    """Cohen-Rodriguez Villegas-Zagier sum of ``sum_k (-1)^k terms[k]``.

    ``terms`` are the magnitudes (a totally monotone sequence gives an error
    of order ``5.8**(-n)`` for ``n = len(terms)``).
    """
    n = len(terms)
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n):
        c = b - c
        s += c * terms[k]
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return s / d


def alt_series_sum(
    a: Callable[[int], float],
    rel_tol: float = 1e-14,
    abs_tol: float = 1e-15,
    max_terms: int = 60,
    scan: int = 64,
) -> EvalResult:
    """Sum an eventually alternating series ``sum_{k>=0} a(k)``.

    A preamble of terms that break the alternating sign pattern is summed
    directly; the alternating remainder is accelerated with the CVZ scheme
    at increasing orders until two orders agree.  If the accelerated values
    do not settle, the routine falls back to averaged partial sums.

    Raises
    ------
    NoAlternation
        If the sign pattern is still irregular in the second half of the
        first ``scan`` terms.
    """
    vals = np.array([float(a(k)) for k in range(scan + max_terms)])
    signs = np.sign(vals[:scan])
    # index of the first term after the last sign-pattern violation
    start = 0
    for k in range(1, scan):
        if signs[k] == 0 or signs[k] == signs[k - 1]:
            start = k
    if start > scan // 2:
        raise NoAlternation(f"terms do not alternate after index {start}")
    head = float(math.fsum(vals[:start]))
    tail = vals[start:]
    sign0 = np.sign(tail[0]) if tail[0] != 0 else 1.0
    mags = tail * sign0 * (-1.0) ** np.arange(len(tail))
    estimates = []
    for n in range(10, max_terms + 1, 5):
        estimates.append(cvz_sum(mags[:n]))
        if len(estimates) >= 2:
            err = abs(estimates[-1] - estimates[-2])
            if err <= max(abs_tol, rel_tol * abs(estimates[-1])):
                return EvalResult(float(head + sign0 * estimates[-1]), float(err))
    # fallback: mean of the last two partial sums of the direct series
    partial = np.cumsum(vals)
    direct = 0.5 * (partial[-1] + partial[-2])
    err = abs(partial[-1] - partial[-2])
    cvz_err = abs(estimates[-1] - estimates[-2])
    if cvz_err < err:
        return EvalResult(float(head + sign0 * estimates[-1]), float(cvz_err))
    return EvalResult(float(direct), float(err))


# ----------------------------------------------------------------------------
# half-power least squares
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class FitBasis:
    """The ladder ``{t^(n/2) : 0 <= n <= max_half_power}`` on a time window."""

    max_half_power: int
    t_window: tuple[float, float]

    def __post_init__(self) -> None:
        t0, t1 = self.t_window
        if not (0 < t0 < t1):
            raise ValueError("t_window must satisfy 0 < t_min < t_max")
        if self.max_half_power < 0:
            raise ValueError("max_half_power must be >= 0")

    @property
    def size(self) -> int:
        return self.max_half_power + 1


@dataclass(frozen=True)
class FitResult:
    """Coefficients of ``t^(n/2)`` and fit diagnostics."""

    coefficients: np.ndarray
    residual_rms: float
    condition_number: float
    per_coeff_stderr: np.ndarray
    ill_conditioned: bool = False
    n_samples: int = 0
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "coefficients": [float(c) for c in self.coefficients],
            "stderr": [float(s) for s in self.per_coeff_stderr],
            "residual_rms": float(self.residual_rms),
            "condition_number": float(self.condition_number),
            "ill_conditioned": bool(self.ill_conditioned),
            "n_samples": int(self.n_samples),
            "diagnostics": self.diagnostics,
        }


def log_grid(t_min: float, t_max: float, per_decade: int = 16) -> np.ndarray:
    """Logarithmically spaced samples including both endpoints."""
    n = max(2, int(round(per_decade * math.log10(t_max / t_min))) + 1)
    return np.geomspace(t_min, t_max, n)


def fit_half_powers(ts, vals, basis: FitBasis, weights=None) -> FitResult:
    """Weighted least-squares fit of ``vals`` on the half-power ladder.

    Parameters
    ----------
    ts, vals : array_like
        Strictly increasing sample times inside ``basis.t_window`` and the
        sampled values.
    basis : FitBasis
    weights : array_like, optional
        Least-squares weights; the default is ``1/t``.

    Returns
    -------
    FitResult
        ``ill_conditioned`` is set (and an :class:`IllConditionedWarning`
        emitted) when the column-scaled design matrix has condition number
        above ``1e12``.
    """
    t = np.asarray(ts, dtype=float)
    y = np.asarray(vals, dtype=float)
    if t.ndim != 1 or t.shape != y.shape:
        raise ValueError("ts and vals must be 1-d arrays of equal length")
    if np.any(np.diff(t) <= 0):
        raise ValueError("ts must be strictly increasing")
    t0, t1 = basis.t_window
    tol = 1e-12 * t1
    if t[0] < t0 - tol or t[-1] > t1 + tol:
        raise ValueError("samples lie outside the fit window")
    p = basis.size
    if len(t) < 2 * p:
        raise ValueError(f"need at least {2 * p} samples, got {len(t)}")
    w = 1.0 / t if weights is None else np.asarray(weights, dtype=float)
    sw = np.sqrt(w)
    A = t[:, None] ** (0.5 * np.arange(p))[None, :]
    Aw = A * sw[:, None]
    yw = y * sw
    scale = np.linalg.norm(Aw, axis=0)
    As = Aw / scale
    Q, R = np.linalg.qr(As)
    z = np.linalg.solve(R, Q.T @ yw)
    coef = z / scale
    sv = np.linalg.svd(As, compute_uv=False)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
    resid = y - A @ coef
    rw = yw - As @ z
    dof = max(len(t) - p, 1)
    sigma2 = float(rw @ rw) / dof
    Rinv = np.linalg.inv(R)
    cov = sigma2 * (Rinv @ Rinv.T)
    stderr = np.sqrt(np.maximum(np.diag(cov), 0.0)) / scale
    ill = cond > 1e12
    if ill:
        warnings.warn(f"half-power design matrix is ill conditioned (cond={cond:.2e})", IllConditionedWarning, stacklevel=2)
    return FitResult(
        coefficients=coef,
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        condition_number=max(cond, 1.0),
        per_coeff_stderr=stderr,
        ill_conditioned=ill,
        n_samples=len(t),
    )
