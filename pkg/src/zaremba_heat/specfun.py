"""Scalar special functions with independent evaluation routes.

Everything here works in double precision.  Where a function has a cheap
closed form it is still paired with a second route (series, recurrence or
quadrature) so that the two can be cross-checked in the test-suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .numerics import EvalResult, QuadratureSpec, alt_series_sum, integrate_finite, integrate_semi_infinite

__all__ = [
    "DomainError",
    "EvalResult",
    "HalfIntOrder",
    "gamma_ln",
    "beta_fn",
    "digamma",
    "trigamma",
    "hurwitz_zeta",
    "beta_split",
    "bessel_i_half_scaled",
    "bessel_i_half_series",
    "bessel_i_half_by_integral",
    "bessel_i_half_tau_term",
    "hyp2f1_special",
    "catalan",
    "CATALAN",
]


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


# Bernoulli numbers B_2 ... B_18
_B2N = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510, 43867 / 798)

CATALAN = 0.91596559417721901505460351493238411077414937428167


@dataclass(frozen=True)
class HalfIntOrder:
    """Half-integer Bessel order ``k + 1/2``."""

    k: int

    def __post_init__(self) -> None:
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"order index must be a nonnegative integer, got {self.k!r}")

    @property
    def nu(self) -> float:
        return self.k + 0.5


def _order(order) -> int:
    return order.k if isinstance(order, HalfIntOrder) else HalfIntOrder(int(order)).k


# ----------------------------------------------------------------------------
# Gamma family
# ----------------------------------------------------------------------------


def gamma_ln(x: float) -> float:
    """Natural logarithm of the Gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError("gamma_ln requires x > 0")
    return math.lgamma(x)


def beta_fn(x: float, y: float) -> float:
    """Euler Beta function ``B(x, y)`` for real arguments.

    Negative non-integer arguments are allowed (the analytic continuation
    used by the regularised integrals); ``math.gamma`` handles the sign.
    """
    return math.gamma(x) * math.gamma(y) / math.gamma(x + y)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def digamma(x: float) -> float:
    """Digamma function ``Psi(x) = d/dx ln Gamma(x)``.

    Arguments are shifted upward by the recurrence ``Psi(x+1) = Psi(x) + 1/x``
    until ``x >= 10``; the asymptotic expansion with Bernoulli numbers is then
    summed.  Negative arguments use the reflection formula.
    """
    if _is_nonpositive_integer(x):
        raise DomainError(f"digamma has a pole at {x}")
    if x < 0:
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    shift = 0.0
    while x < 10.0:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for n, b in enumerate(_B2N[:7], start=1):
        series += b / (2 * n) * p
        p *= inv2
    return shift + math.log(x) - 0.5 / x - series


def trigamma(x: float) -> float:
    """Trigamma function ``Psi'(x)`` for ``x > 0``."""
    if not x > 0:
        raise DomainError("trigamma requires x > 0")
    shift = 0.0
    while x < 10.0:
        shift += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = inv + 0.5 * inv2
    p = inv2 * inv
    for b in _B2N[:8]:
        series += b * p
        p *= inv2
    return shift + series


def hurwitz_zeta(s: float, a: float) -> float:
    """Hurwitz zeta ``zeta_H(s, a) = sum_{n>=0} (n + a)^(-s)``.

    Euler-Maclaurin summation with eight Bernoulli corrections after shifting
    ``a`` upward until ``a >= 10``.
    """
    if not s > 1 or not a > 0:
        raise DomainError("hurwitz_zeta requires s > 1 and a > 0")
    head = 0.0
    while a < 10.0:
        head += a**-s
        a += 1.0
    tail = a ** (1.0 - s) / (s - 1.0) + 0.5 * a**-s
    # sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * a^(-s-2j+1)
    poch = s  # (s)_{2j-1}
    fact = 2.0  # (2j)!
    power = a ** (-s - 1.0)
    for j, b in enumerate(_B2N[:8], start=1):
        tail += b / fact * poch * power
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        power /= a * a
    return head + tail


def beta_split(x: float) -> float:
    """The split digamma ``beta(x) = (Psi((x+1)/2) - Psi(x/2)) / 2``.

    Equals the alternating series ``sum_{k>=0} (-1)^k / (x + k)``.  For
    ``x >= 20`` the asymptotic series
    ``1/(2x) + sum_n (2^{2n} - 1) B_{2n} / (2n) x^{-2n}`` is used instead of
    the digamma difference, which would cancel.
    """
    if not x > 0:
        raise DomainError("beta_split requires x > 0")
    if x >= 20.0:
        inv2 = 1.0 / (x * x)
        p = inv2
        total = 0.5 / x
        for n, b in enumerate(_B2N, start=1):
            total += (4.0**n - 1.0) * b / (2 * n) * p
            p *= inv2
        return total
    return 0.5 * (digamma(0.5 * (x + 1.0)) - digamma(0.5 * x))


# ----------------------------------------------------------------------------
# half-integer modified Bessel functions
# ----------------------------------------------------------------------------


def bessel_i_half_series(k: int, z: float, terms: int = 60) -> float:
    """Ascending power series of ``exp(-z) I_{k+1/2}(z)``.

    Only accurate for moderate ``z``; intended for small arguments and as an
    oracle.  Computed in log scale so that high orders underflow gracefully.
    """
    nu = k + 0.5
    q = 0.25 * z * z
    term = 1.0
    total = 1.0
    for m in range(1, terms):
        term *= q / (m * (nu + m))
        total += term
        if term < 1e-17 * total:
            break
    log_val = nu * math.log(0.5 * z) - math.lgamma(nu + 1.0) - z + math.log(total)
    return math.exp(log_val) if log_val > -745.0 else 0.0


def _miller_single(k: int, z: float) -> float:
    """Miller backward recurrence for a single order, tracking the scale."""
    n_top = max(_kernels.miller_start(z, k), k + 2)
    y_next, y = 0.0, 1e-30
    saved = 0.0
    saved_scale = 0
    scale = 0
    for n in range(n_top, 0, -1):
        if n == k:
            saved, saved_scale = y, scale
        y_prev = y_next + (2.0 * n + 1.0) / z * y
        y_next, y = y, y_prev
        if abs(y) > 1e250:
            y *= 1e-250
            y_next *= 1e-250
            scale += 1
    if k == 0:
        saved, saved_scale = y, scale
    i0 = -math.expm1(-2.0 * z) / math.sqrt(2.0 * math.pi * z)
    log_ratio = math.log(saved) - math.log(y) + (saved_scale - scale) * math.log(1e250)
    log_val = log_ratio + math.log(i0)
    return math.exp(log_val) if log_val > -745.0 else 0.0


def bessel_i_half_scaled(order, z: float) -> EvalResult:
    """Scaled modified Bessel function ``exp(-z) I_{k+1/2}(z)``.

    Orders ``k <= 2`` use the closed hyperbolic forms (with the ascending
    series for ``z < 1`` where the closed forms cancel); higher orders use
    Miller's backward recurrence normalised by ``I_{1/2}``.

    Parameters
    ----------
    order : HalfIntOrder or int
        ``k`` with order ``k + 1/2``.
    z : float
        Positive argument.

    Returns
    -------
    EvalResult
        Values below the double range underflow to 0.
    """
    k = _order(order)
    if not z > 0:
        raise DomainError("bessel_i_half_scaled requires z > 0")
    eps = 2.2e-16
    if k == 0:
        v = -math.expm1(-2.0 * z) / math.sqrt(2.0 * math.pi * z)
    elif k <= 2 and z < 1.0:
        v = bessel_i_half_series(k, z)
    elif k == 1:
        e = math.exp(-2.0 * z)
        c = 0.5 * (1.0 + e)
        s = -0.5 * math.expm1(-2.0 * z)
        v = math.sqrt(2.0 / (math.pi * z)) * (c - s / z)
    elif k == 2:
        e = math.exp(-2.0 * z)
        c = 0.5 * (1.0 + e)
        s = -0.5 * math.expm1(-2.0 * z)
        v = math.sqrt(2.0 / (math.pi * z)) * ((1.0 + 3.0 / (z * z)) * s - 3.0 * c / z)
    else:
        v = _miller_single(k, z)
    return EvalResult(v, 8 * eps * abs(v))


def bessel_i_half_tau_term(order, z: float, spec: QuadratureSpec | None = None) -> EvalResult:
    """Second term of the Bessel integral representation, scaled by ``exp(-z)``.

    ``-(1/pi) (-1)^k int_0^inf exp(-z (cosh tau + 1) - (k+1/2) tau) dtau``.
    This is the junction kernel piece.
    """
    k = _order(order)
    spec = spec or QuadratureSpec(rel_tol=1e-13, abs_tol=1e-15, transform="semi_infinite_exp")
    nu = k + 0.5

    def f(tau):
        tau = np.asarray(tau, dtype=float)
        with np.errstate(over="ignore"):
            arg = -z * (np.cosh(np.minimum(tau, 700.0)) + 1.0) - nu * tau
        return np.exp(arg)

    r = integrate_semi_infinite(f, spec)
    sign = -1.0 if k % 2 == 0 else 1.0
    return EvalResult(sign * r.value / math.pi, r.abs_err_estimate / math.pi)


def bessel_i_half_by_integral(order, z: float, spec: QuadratureSpec | None = None) -> EvalResult:
    """``exp(-z) I_{k+1/2}(z)`` from its integral representation.

    ``I_nu(z) = (1/pi) int_0^pi e^{z cos th} cos(nu th) dth
    - (sin(nu pi)/pi) int_0^inf e^{-z cosh tau - nu tau} dtau``
    with ``sin((k+1/2) pi) = (-1)^k``; both pieces are integrated numerically.
    """
    k = _order(order)
    if not (0 < z <= 50.0) or k > 40:
        raise DomainError("bessel_i_half_by_integral requires 0 < z <= 50 and k <= 40")
    spec = spec or QuadratureSpec(rel_tol=1e-13, abs_tol=1e-15)
    nu = k + 0.5

    def f1(th):
        return np.exp(z * (np.cos(th) - 1.0)) * np.cos(nu * th)

    t1 = integrate_finite(f1, 0.0, math.pi, spec)
    t2 = bessel_i_half_tau_term(k, z)
    return EvalResult(t1.value / math.pi + t2.value, t1.abs_err_estimate / math.pi + t2.abs_err_estimate)


# ----------------------------------------------------------------------------
# miscellany
# ----------------------------------------------------------------------------


def hyp2f1_special(x: float) -> float:
    """``2F1(1, 3/2; 2; x)`` for ``|x| < 1``.

    Closed form ``2 (1 - sqrt(1-x)) / (x sqrt(1-x))`` for ``|x| >= 1e-4``,
    evaluated as ``2 / ((1 + r) r)`` with ``r = sqrt(1-x)`` so that the
    subtraction never happens, and the Taylor series below the switch point.
    """
    if not abs(x) < 1.0:
        raise DomainError("hyp2f1_special requires |x| < 1")
    if abs(x) >= 1e-4:
        r = math.sqrt(1.0 - x)
        return 2.0 / ((1.0 + r) * r)
    # coefficients (3/2)_n / (n+1)!
    total, term = 1.0, 1.0
    for n in range(0, 8):
        term *= (1.5 + n) / (n + 2.0) * x
        total += term
    return total


def catalan() -> float:
    """Catalan's constant ``sum_k (-1)^k / (2k+1)^2``."""
    return CATALAN


def catalan_by_series() -> EvalResult:
    """Catalan's constant from the accelerated alternating series."""
    r = alt_series_sum(lambda k: (-1.0) ** k / (2.0 * k + 1.0) ** 2)
    return EvalResult(float(r.value), float(r.abs_err_estimate))
