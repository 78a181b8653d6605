"""The Dirichlet corner constant.

For a Dirichlet corner of interior angle ``gamma`` the order-``t`` heat
content contribution is ``c(gamma) <phi, phi*>(corner)`` with

    c(gamma) = 4 int_0^inf sinh((pi - gamma) s) / (sinh(pi s) cosh(gamma s)) ds.

``c(pi) = 0`` (no corner), ``c(pi/2) = 4/pi`` and ``c(2 pi) = -1`` (a slit tip).
A Dirichlet/Robin junction inside a smooth boundary behaves like half of a
``2 pi`` slit, which gives the junction constant ``c_0 = c(2 pi)/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import EvalResult, QuadratureSpec, integrate_semi_infinite

__all__ = ["CornerAngle", "corner_c", "corner_integrand", "zaremba_sigma_constant", "C_RIGHT_ANGLE"]

#: closed form of c(pi/2); the integrand reduces to 2/cosh^2(pi s / 2)
C_RIGHT_ANGLE = 4.0 / math.pi


@dataclass(frozen=True)
class CornerAngle:
    """Interior angle ``gamma`` in ``(0, 2 pi]``."""

    gamma: float

    def __post_init__(self) -> None:
        if not (0.0 < self.gamma <= 2.0 * math.pi + 1e-14):
            raise ValueError(f"corner angle must lie in (0, 2pi], got {self.gamma!r}")


def corner_integrand(gamma: float):
    """Return the integrand of ``c(gamma)`` in exponential normal form.

    ``sinh(a s)/(sinh(pi s) cosh(gamma s))`` with ``a = pi - gamma`` is
    written as ``2 sgn(a) (1 - e^{-2|a|s}) / ((1 - e^{-2 pi s})(1 + e^{-2 gamma s}))
    * e^{(|a| - pi - gamma) s}``.  The bounded prefactor uses ``expm1`` so
    the ``0/0`` at ``s = 0`` resolves to ``|a|/pi`` without a separate patch.
    """
    a = math.pi - gamma
    abs_a = abs(a)
    sgn = math.copysign(1.0, a) if a != 0.0 else 0.0
    rate = abs_a - math.pi - gamma

    def f(s):
        s = np.asarray(s, dtype=float)
        out = np.empty_like(s)
        zero = s == 0.0
        out[zero] = 4.0 * abs_a / math.pi * sgn
        sp = s[~zero]
        num = -np.expm1(-2.0 * abs_a * sp)
        den = -np.expm1(-2.0 * math.pi * sp) * (1.0 + np.exp(-2.0 * gamma * sp))
        out[~zero] = 8.0 * sgn * num / den * np.exp(rate * sp)
        return out

    return f, -rate


def corner_c(angle, route: str = "exp_sinh") -> EvalResult:
    """Corner constant ``c(gamma)``.

    Parameters
    ----------
    angle : CornerAngle or float
        Interior angle in ``(0, 2 pi]``.
    route : {"exp_sinh", "split"}
        ``"exp_sinh"`` integrates the whole half line with the exp-sinh rule
        after rescaling ``s`` by the decay rate; ``"split"`` uses
        Gauss-Legendre on ``[0, 1]`` and an exponential substitution on the
        tail.  The two routes serve as mutual oracles.
    """
    gamma = angle.gamma if isinstance(angle, CornerAngle) else CornerAngle(float(angle)).gamma
    if gamma == math.pi:
        return EvalResult(0.0, 0.0)
    f, decay = corner_integrand(gamma)
    spec = QuadratureSpec(rel_tol=1e-14, abs_tol=1e-15, max_subdivisions=10)
    if route == "exp_sinh":
        lam = decay

        def g(x):
            return f(np.asarray(x) / lam) / lam

        return integrate_semi_infinite(g, QuadratureSpec(spec.rel_tol, spec.abs_tol, spec.max_subdivisions, "semi_infinite_exp"))
    if route == "split":
        return integrate_semi_infinite(f, QuadratureSpec(spec.rel_tol, spec.abs_tol, spec.max_subdivisions, "semi_infinite_gauss"))
    raise ValueError(f"unknown route {route!r}")


def zaremba_sigma_constant() -> float:
    """Junction constant ``c_0 = c(2 pi) / 2``.

    Raises
    ------
    AssertionError
        If the computed value is not within ``1e-10`` of ``-1/2``.
    """
    c0 = 0.5 * corner_c(2.0 * math.pi).value
    if abs(c0 + 0.5) > 1e-10:
        raise AssertionError(f"junction constant regression: c0 = {c0!r}")
    return c0
