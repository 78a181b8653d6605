"""Registry of the series and integral identities behind the junction constants.

Each entry computes its left-hand side with generic machinery (quadrature,
accelerated or directly summed series, Bessel-by-integral) and its
right-hand side from a closed form.  The two sides never share code paths
beyond elementary functions.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import specfun as sf
from .numerics import QuadratureSpec, alt_series_sum, integrate_finite, integrate_semi_infinite

__all__ = ["IdentityRecord", "UnknownIdentity", "REGISTRY", "verify", "verify_all", "report_json", "kk4_direct", "kk4_regularized"]

CAT = sf.CATALAN
PI = math.pi

_SPEC = QuadratureSpec(rel_tol=1e-14, abs_tol=1e-16, max_subdivisions=10)
_SPEC_INF = QuadratureSpec(rel_tol=1e-14, abs_tol=1e-16, max_subdivisions=10, transform="semi_infinite_exp")


class UnknownIdentity(KeyError):
    """Requested identity name is not in the registry."""


@dataclass(frozen=True)
class IdentityRecord:
    """Outcome of one identity check.

    For parametrised identities the record holds the worst parameter value.
    """

    name: str
    lhs_numeric: float
    rhs_closed: float
    residual: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return {"name": d["name"], "lhs": d["lhs_numeric"], "rhs": d["rhs_closed"], "residual": d["residual"], "tol": d["tolerance"], "pass": d["pass"], "detail": d["detail"]}


def _worst(name: str, cases: list[tuple[object, float, float]], tol: float) -> IdentityRecord:
    param, lhs, rhs = max(cases, key=lambda c: abs(c[1] - c[2]))
    return IdentityRecord(name, float(lhs), float(rhs), float(abs(lhs - rhs)), tol, {"worst_parameter": param, "cases": len(cases)})


def _direct_sum_with_tail(f: Callable[[np.ndarray], np.ndarray], n_terms: int = 200000) -> float:
    """``sum_{k>=0} f(k)`` for a smooth, non-alternating, decaying summand.

    The first ``n_terms`` terms are summed exactly; the remainder is replaced
    by ``int_{N-1/2}^inf f`` (midpoint rule), whose error is ``O(f''(N))``.
    The algebraically decaying tail is mapped to ``(0, 1]`` by ``x = x0/u``.
    """
    k = np.arange(n_terms, dtype=float)
    head = math.fsum(f(k))
    x0 = n_terms - 0.5
    tail = integrate_finite(lambda u: f(x0 / np.asarray(u)) * x0 / np.asarray(u) ** 2, 0.0, 1.0, _SPEC).value
    return head + tail


# ----------------------------------------------------------------------------
# individual identities
# ----------------------------------------------------------------------------


def _weber_schafheitlin() -> IdentityRecord:
    p, al, be, t = 0.5, 1.0, 0.7, 0.3
    pref = 2.0 / (PI * math.sqrt(al * be))

    def f(x):
        x = np.asarray(x)
        return pref * np.exp(-t * x * x) * np.sin(al * x) * np.sin(be * x)

    lhs = integrate_semi_infinite(f, _SPEC_INF).value
    z = al * be / (2 * t)
    rhs = 1.0 / (2 * t) * math.exp(-(al * al + be * be) / (4 * t) + z) * sf.bessel_i_half_scaled(0, z).value
    return IdentityRecord("weber_schafheitlin", lhs, rhs, abs(lhs - rhs), 1e-9, {"p": p, "alpha": al, "beta": be, "t": t})


def _angular(name: str, weight: Callable, closed: Callable[[int], float], ks) -> IdentityRecord:
    cases = []
    for k in ks:
        lhs = integrate_finite(lambda ph, k=k: np.sin(ph * (k + 0.5)) * weight(ph), 0.0, PI, _SPEC).value
        cases.append((k, lhs, closed(k)))
    return _worst(name, cases, 1e-12)


def _sinh_power() -> IdentityRecord:
    cases = []
    for mu, al, b in ((2.5, 0.5, 1.0), (4.0, 1.2, 0.5)):
        # e^{-mu x} sinh^al(b x) = e^{-(mu - al b) x} ((1 - e^{-2 b x})/2)^al
        lhs = integrate_semi_infinite(
            lambda x: np.exp(-(mu - al * b) * np.asarray(x)) * (-0.5 * np.expm1(-2 * b * np.asarray(x))) ** al, _SPEC_INF
        ).value
        rhs = sf.beta_fn(mu / (2 * b) - al / 2, al + 1) / (2 ** (al + 1) * b)
        cases.append(((mu, al, b), lhs, rhs))
    return _worst("sinh_power", cases, 1e-11)


def _cosh4() -> IdentityRecord:
    cases = []
    for mu in (0.5, 1.5, 3.5):
        # cosh^{-4}(x/2) = 16 e^{-2x} / (1 + e^{-x})^4
        lhs = integrate_semi_infinite(
            lambda x: 16.0 * np.exp(-(mu + 2.0) * np.asarray(x)) / (1.0 + np.exp(-np.asarray(x))) ** 4, _SPEC_INF
        ).value
        rhs = 2.0 / 3.0 * mu * (1 + 2 * (mu * mu - 1) * (sf.beta_split(mu + 1) - sf.beta_split(mu)))
        cases.append((mu, lhs, rhs))
    return _worst("cosh4", cases, 1e-11)


def _i_tau_closed() -> IdentityRecord:
    cases = []
    inner_spec = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-18, max_subdivisions=10, transform="semi_infinite_exp")
    for tau in (0.3, 1.0, 3.0):
        ch = math.cosh(tau)

        def inner(y):
            return float(integrate_semi_infinite(lambda yp: np.asarray(yp) ** 2 * np.exp(-0.25 * np.asarray(yp) ** 2 - 0.5 * y * np.asarray(yp) * ch), inner_spec).value)

        def outer(ys):
            ys = np.atleast_1d(ys)
            return np.array([y * math.exp(-0.25 * y * y) * inner(y) for y in ys])

        lhs = integrate_semi_infinite(outer, QuadratureSpec(1e-12, 1e-16, 10, "semi_infinite_exp")).value
        rhs = math.sqrt(PI) / math.cosh(0.5 * tau) ** 4
        cases.append((tau, lhs, rhs))
    return _worst("I_tau_closed", cases, 1e-10)


def _alt(name: str, term: Callable[[int], float], rhs: float, tol: float = 1e-11) -> IdentityRecord:
    r = alt_series_sum(term)
    return IdentityRecord(name, r.value, rhs, abs(r.value - rhs), tol, {"method": "CVZ"})


def _sum_telescope_zero() -> IdentityRecord:
    lhs = _direct_sum_with_tail(lambda k: 1.0 / ((np.asarray(k) - 0.5) * (np.asarray(k) + 1.5)))
    return IdentityRecord("sum_telescope_zero", lhs, 0.0, abs(lhs), 1e-10, {"method": "direct sum + integral tail"})


def _sum_beta_diff() -> IdentityRecord:
    bs = np.vectorize(sf.beta_split)

    def f(k):
        k = np.asarray(k, dtype=float)
        return bs(k + 1.5) - bs(k + 0.5)

    lhs = _direct_sum_with_tail(f, n_terms=20000)
    return IdentityRecord("sum_beta_diff", lhs, -PI / 2, abs(lhs + PI / 2), 1e-10, {"method": "direct sum + integral tail"})


def kk4_direct(k: int) -> float:
    """``int_0^inf e^{-(k+1/2) tau} {-4/sinh^2 + 4 tau cosh/sinh^3} dtau`` by quadrature.

    The bracket equals ``4 (tau coth tau - 1)/sinh^2 tau``, which tends to
    ``4/3`` at ``tau = 0``; a Taylor patch removes the cancellation there.
    """
    mu = k + 0.5
    # tau coth tau - 1 = sum_n 2^{2n} B_{2n} tau^{2n} / (2n)!
    coeffs = [2.0 ** (2 * n) * b / math.factorial(2 * n) for n, b in enumerate(sf._B2N, start=1)]

    def f(tau):
        tau = np.asarray(tau, dtype=float)
        small = tau < 0.5
        g = np.empty_like(tau)
        ts = tau[small]
        t2 = ts * ts
        acc = np.zeros_like(ts)
        for c in reversed(coeffs):
            acc = acc * t2 + c
        g[small] = acc * t2
        tl = tau[~small]
        e = np.exp(-2.0 * tl)
        g[~small] = tl * (1.0 + e) / (1.0 - e) - 1.0
        # 1/sinh^2 = 4 e^{-2 tau} / (1 - e^{-2 tau})^2
        e2 = np.exp(-2.0 * tau)
        inv_sh2 = np.where(small, 0.0, 4.0 * e2 / (-np.expm1(-2.0 * tau)) ** 2)
        sh = np.sinh(ts)
        inv_sh2[small] = 1.0 / (sh * sh)
        return 4.0 * g * inv_sh2 * np.exp(-mu * tau)

    return integrate_semi_infinite(f, _SPEC_INF).value


def kk4_regularized(k: int, nus=(1e-2, 1e-3, 1e-4)) -> float:
    """The same integral as the limit of the ``sinh^nu`` regularisation.

    With ``J(mu, a) = int e^{-mu tau} sinh^a tau = B((mu-a)/2, a+1)/2^{a+1}``
    (analytically continued) and an integration by parts for the
    ``tau cosh`` term,

        F(nu) = -4 J - 4/(nu-2) [J + mu dJ/dmu],   a = nu - 2,

    where each piece has a pole at ``nu = 0`` that cancels in the sum.  ``F``
    is evaluated at three small ``nu`` and extrapolated to ``nu = 0``.
    """
    mu = k + 0.5

    def F(nu: float) -> float:
        a = nu - 2.0
        x, y = 0.5 * (mu - a), a + 1.0
        J = sf.beta_fn(x, y) / 2.0 ** (a + 1.0)
        dJ = J * 0.5 * (sf.digamma(x) - sf.digamma(x + y))
        return -4.0 * J - 4.0 / (nu - 2.0) * (J + mu * dJ)

    return _poly_extrapolate_zero(list(nus), [F(n) for n in nus])


def _poly_extrapolate_zero(xs: list[float], ys: list[float]) -> float:
    """Value at 0 of the interpolating polynomial through ``(xs, ys)``."""
    total = 0.0
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        w = 1.0
        for j, xj in enumerate(xs):
            if j != i:
                w *= (0.0 - xj) / (xi - xj)
        total += w * yi
    return total


def _kk4() -> IdentityRecord:
    cases = []
    worst_mutual = 0.0
    for k in (0, 1, 3):
        d = kk4_direct(k)
        r = kk4_regularized(k)
        worst_mutual = max(worst_mutual, abs(d - r))
        rhs = -2 * (k + 1.5) + (k + 0.5) ** 2 * sf.trigamma(0.5 * (k + 0.5))
        cases.append((k, r, rhs))
        cases.append((k, d, rhs))
    rec = _worst("kk4_regularized", cases, 1e-8)
    detail = dict(rec.detail, direct_vs_regularized=worst_mutual)
    residual = rec.residual if worst_mutual <= 1e-7 else max(rec.residual, worst_mutual)
    return IdentityRecord(rec.name, rec.lhs_numeric, rec.rhs_closed, residual, rec.tolerance, detail)


def _hurwitz_limit_chain() -> IdentityRecord:
    nus = [1e-2, 1e-3, 1e-4]
    vals = [sf.hurwitz_zeta(1 + n, 0.25) - sf.hurwitz_zeta(1 + n, 0.75) for n in nus]
    lhs = _poly_extrapolate_zero(nus, vals)
    rhs = -sf.digamma(0.25) + sf.digamma(0.75)
    return IdentityRecord("hurwitz_limit_chain", lhs, rhs, abs(lhs - rhs), 1e-8, {"nus": nus, "pi": PI, "rhs_minus_pi": rhs - PI})


def _hurwitz_quarter() -> IdentityRecord:
    lhs = _direct_sum_with_tail(lambda n: 1.0 / (np.asarray(n) + 0.25) ** 2)
    rhs = PI**2 + 8 * CAT
    return IdentityRecord("hurwitz_quarter", lhs, rhs, abs(lhs - rhs), 1e-10, {"method": "direct sum + integral tail", "hurwitz_zeta": sf.hurwitz_zeta(2, 0.25)})


def _catalan_series() -> IdentityRecord:
    r = sf.catalan_by_series().value
    return IdentityRecord("catalan_series", r, CAT, abs(r - CAT), 1e-14)


def _bessel_integral_rep() -> IdentityRecord:
    cases = []
    for k in (0, 3, 10, 20):
        for z in (0.01, 1.0, 10.0, 50.0):
            cases.append(((k, z), sf.bessel_i_half_by_integral(k, z).value, sf.bessel_i_half_scaled(k, z).value))
    return _worst("bessel_integral_rep", cases, 1e-9)


REGISTRY: dict[str, Callable[[], IdentityRecord]] = {
    "weber_schafheitlin": _weber_schafheitlin,
    "angular_const": lambda: _angular("angular_const", lambda p: np.ones_like(p), lambda k: 1.0 / (k + 0.5), (0, 1, 5)),
    "angular_sin": lambda: _angular("angular_sin", np.sin, lambda k: (-1) ** (k + 1) * (1 / (2 * k - 1) - 1 / (2 * k + 3)), (0, 1, 4)),
    "angular_cos": lambda: _angular("angular_cos", np.cos, lambda k: 1 / (2 * k - 1) + 1 / (2 * k + 3), (0, 1, 4)),
    "sinh_power": _sinh_power,
    "cosh4": _cosh4,
    "I_tau_closed": _i_tau_closed,
    "sum_k32": lambda: _alt("sum_k32", lambda k: (-1) ** k * (k + 1.5) / (k + 0.5) ** 2, PI / 2 + 4 * CAT),
    "sum_psi_prime": lambda: _alt("sum_psi_prime", lambda k: (-1) ** k * sf.trigamma(0.5 * (k + 0.5)), PI + 8 * CAT + PI**2 / 2, 1e-10),
    "sum_telescope_zero": _sum_telescope_zero,
    "sum_beta_diff": _sum_beta_diff,
    "sum_alt_half": lambda: _alt("sum_alt_half", lambda k: (-1) ** k / (k - 0.5), -(PI + 4) / 2),
    "sum_alt_32": lambda: _alt("sum_alt_32", lambda k: (-1) ** k / (k + 1.5), (4 - PI) / 2),
    "sum_alt_weighted_beta": lambda: _alt(
        "sum_alt_weighted_beta", lambda k: (-1) ** k * (k + 0.5) * (sf.beta_split(k + 1.5) - sf.beta_split(k + 0.5)), -PI / 8, 1e-10
    ),
    "kk4_regularized": _kk4,
    "hurwitz_limit_chain": _hurwitz_limit_chain,
    "hurwitz_quarter": _hurwitz_quarter,
    "catalan_series": _catalan_series,
    "bessel_integral_rep": _bessel_integral_rep,
}


def verify(name: str) -> IdentityRecord:
    """Evaluate one registry entry."""
    try:
        fn = REGISTRY[name]
    except KeyError:
        raise UnknownIdentity(name) from None
    return fn()


def verify_all() -> list[IdentityRecord]:
    """Evaluate every entry in registry order."""
    return [verify(name) for name in REGISTRY]


def report_json(records: list[IdentityRecord]) -> str:
    """Serialise records as a JSON document with a summary header."""
    rows = [r.to_dict() for r in records]
    doc = {
        "entries": rows,
        "n_entries": len(rows),
        "all_pass": all(r["pass"] for r in rows),
        "max_residual": max((r["residual"] for r in rows), default=0.0),
    }
    return json.dumps(doc, indent=2, sort_keys=False)
