"""Coefficient extraction from heat-content series and comparison with predictions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .heat_fd import HeatSeries
from .invariants import CoefficientSet
from .numerics import FitBasis, FitResult, fit_half_powers

__all__ = [
    "DEFAULT_TOLERANCES",
    "CoefficientVerdict",
    "Comparison",
    "extract",
    "matched_extrapolation",
    "compare",
    "default_tolerance",
    "PipelineResult",
    "matched_pipeline",
]

EMPIRICAL_LABEL = "empirical estimates (not paper-verified)"


def default_tolerance(n: int, predicted: float) -> float:
    """Default tolerance for ``beta_n``.

    ``1e-3 |beta_0|``, ``1% |beta_1|``, ``5% max(1, |beta_2|)`` and ``0.05``
    absolute for ``beta_3``; each further half power costs roughly one digit.
    """
    if n == 0:
        return 1e-3 * max(abs(predicted), 1e-300)
    if n == 1:
        return 1e-2 * max(abs(predicted), 1e-300)
    if n == 2:
        return 5e-2 * max(1.0, abs(predicted))
    return 5e-2


DEFAULT_TOLERANCES = {0: "1e-3 relative", 1: "1% relative", 2: "5% of max(1, |beta_2|)", 3: "0.05 absolute"}


def _window_samples(series: HeatSeries, window: tuple[float, float]) -> tuple[np.ndarray, np.ndarray]:
    t0, t1 = window
    tol = 1e-12 * t1
    sel = (series.t >= t0 - tol) & (series.t <= t1 + tol)
    return series.t[sel], series.beta[sel]


def extract(series: HeatSeries, N: int, window: tuple[float, float]) -> FitResult:
    """Fit ``beta(t) ~ sum_{n <= N} b_n t^{n/2}`` on ``window``.

    The diagnostics carry the coefficient drift after refitting on the upper
    (or, failing that, lower) logarithmic half of the window.  The drift is
    ``None`` when neither half holds ``2 (N + 1)`` samples.
    """
    t, b = _window_samples(series, window)
    basis = FitBasis(N, window)
    fit = fit_half_powers(t, b, basis)
    mid = math.sqrt(window[0] * window[1])
    drift = None
    half_used = None
    for half in ((mid, window[1]), (window[0], mid)):
        th, bh = _window_samples(HeatSeries(t, b), half)
        if len(th) >= 2 * (N + 1):
            sub = fit_half_powers(th, bh, FitBasis(N, half))
            drift = [float(abs(a - c)) for a, c in zip(fit.coefficients, sub.coefficients)]
            half_used = list(half)
            break
    diag = dict(fit.diagnostics)
    diag.update({"window": list(window), "half_window": half_used, "window_drift": drift, "source": series.meta.get("source")})
    return FitResult(fit.coefficients, fit.residual_rms, fit.condition_number, fit.per_coeff_stderr, fit.ill_conditioned, fit.n_samples, diag)


def matched_extrapolation(coarse: FitResult, fine: FitResult, ratio: float = 2.0, order: float = 1.0) -> FitResult:
    """Richardson combination of fits at grid ratios ``s`` and ``s / ratio``.

    With an error proportional to ``s^order`` the extrapolated coefficients
    are ``(r^p fine - coarse) / (r^p - 1)``.  The reported standard error
    propagates both fits; the drift between the fine and extrapolated values
    is recorded as a discretisation-error indicator.
    """
    if len(coarse.coefficients) != len(fine.coefficients):
        raise ValueError("fits must use the same basis")
    f = ratio**order
    coef = (f * fine.coefficients - coarse.coefficients) / (f - 1.0)
    stderr = np.sqrt((f * fine.per_coeff_stderr) ** 2 + coarse.per_coeff_stderr**2) / (f - 1.0)
    diag = {
        "richardson": {"ratio": ratio, "order": order},
        "coarse": [float(c) for c in coarse.coefficients],
        "fine": [float(c) for c in fine.coefficients],
        "extrapolation_shift": [float(abs(a - b)) for a, b in zip(coef, fine.coefficients)],
    }
    return FitResult(coef, max(coarse.residual_rms, fine.residual_rms), max(coarse.condition_number, fine.condition_number), stderr, coarse.ill_conditioned or fine.ill_conditioned, coarse.n_samples + fine.n_samples, diag)


@dataclass(frozen=True)
class CoefficientVerdict:
    """Comparison of one coefficient ``beta_n``."""

    n: int
    predicted: float | None
    unknown_part: dict[str, float]
    extracted: float | None
    stderr: float | None
    abs_diff: float | None
    tolerance: float | None
    verdict: str
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "predicted": self.predicted,
            "unknown_part": dict(self.unknown_part),
            "extracted": self.extracted,
            "stderr": self.stderr,
            "abs_diff": self.abs_diff,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "note": self.note,
        }


@dataclass(frozen=True)
class Comparison:
    """Per-coefficient verdicts plus clearly separated empirical estimates."""

    entries: tuple[CoefficientVerdict, ...]
    empirical_estimates: tuple[dict[str, Any], ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        """True when no comparable coefficient fails."""
        return all(e.verdict != "fail" for e in self.entries)

    def to_dict(self) -> dict[str, Any]:
        return {
            "entries": [e.to_dict() for e in self.entries],
            "all_comparable_pass": self.passed,
            EMPIRICAL_LABEL: [dict(e) for e in self.empirical_estimates],
        }

    def table(self) -> str:
        """Human-readable summary."""

        def fmt(v):
            return "-" if v is None else f"{v:.6g}"

        lines = [f"{'n':>2}  {'predicted':>14}  {'extracted':>14}  {'|diff|':>10}  {'tol':>10}  verdict"]
        for e in self.entries:
            pred = fmt(e.predicted)
            if e.unknown_part:
                pred = (pred if e.predicted is not None else "?") + "+" + "+".join(f"{v:g}*{k}" for k, v in sorted(e.unknown_part.items()))
            lines.append(f"{e.n:>2}  {pred:>14}  {fmt(e.extracted):>14}  {fmt(e.abs_diff):>10}  {fmt(e.tolerance):>10}  {e.verdict}")
        if self.empirical_estimates:
            lines.append(f"-- {EMPIRICAL_LABEL} --")
            for est in self.empirical_estimates:
                lines.append(f"   beta_{est['n']}: {est['combination']} ~ {est['estimate']:.6g}")
        return "\n".join(lines)


def compare(fit: FitResult | None, predicted: CoefficientSet, tolerances: Sequence[float | None] | None = None) -> Comparison:
    """Confront extracted and predicted coefficients.

    Parameters
    ----------
    fit : FitResult or None
        ``None`` for predictor-only runs; every entry is then not comparable.
    predicted : CoefficientSet
    tolerances : sequence, optional
        Absolute tolerance per ``n``; ``None`` entries use
        :func:`default_tolerance`.

    Coefficients whose prediction carries unknown constants (or an
    unevaluated corner) are marked ``not-comparable``; the extracted value
    minus the known part is reported as an empirical estimate of the unknown
    combination, never merged into the constants table.
    """
    entries = []
    empirical = []
    n_fit = len(fit.coefficients) if fit is not None else 0
    n_max = max(len(predicted.betas), n_fit)
    for n in range(n_max):
        coef = predicted.betas[n] if n < len(predicted.betas) else None
        extracted = float(fit.coefficients[n]) if n < n_fit else None
        stderr = float(fit.per_coeff_stderr[n]) if n < n_fit else None
        unknown = dict(coef.unknown_part) if coef is not None else {}
        value = coef.value if coef is not None else None
        if coef is None:
            entries.append(CoefficientVerdict(n, None, {}, extracted, stderr, None, None, "not-comparable", "no closed formula at this order"))
            continue
        if value is None:
            known = coef.numeric_part + (coef.corner_part or 0.0)
            note = "unknown constants enter" if coef.has_unknown else "corner contribution not evaluated"
            entries.append(CoefficientVerdict(n, known if coef.corner_part is not None else None, unknown, extracted, stderr, None, None, "not-comparable", note))
            if extracted is not None and coef.has_unknown and coef.corner_part is not None:
                combo = " + ".join(f"{v:g}*{k}" for k, v in sorted(unknown.items()))
                empirical.append({"n": n, "combination": combo, "estimate": extracted - known, "stderr": stderr})
            continue
        if extracted is None:
            entries.append(CoefficientVerdict(n, value, {}, None, None, None, None, "not-comparable", "no extracted value"))
            continue
        tol = None
        if tolerances is not None and n < len(tolerances):
            tol = tolerances[n]
        if tol is None:
            tol = default_tolerance(n, value)
        diff = abs(extracted - value)
        entries.append(CoefficientVerdict(n, value, {}, extracted, stderr, diff, float(tol), "pass" if diff <= tol else "fail"))
    return Comparison(tuple(entries), tuple(empirical))


@dataclass
class PipelineResult:
    """Output of :func:`matched_pipeline`."""

    predicted: CoefficientSet
    series: tuple[HeatSeries, HeatSeries]
    fits: tuple[FitResult, FitResult]
    extrapolated: FitResult
    comparison: Comparison

    def to_dict(self) -> dict[str, Any]:
        return {
            "predicted": self.predicted.to_dict(),
            "series": [{"csv": s.to_csv(), "meta": s.meta} for s in self.series],
            "fits": [f.to_dict() for f in self.fits],
            "extrapolated": self.extrapolated.to_dict(),
            "comparison": self.comparison.to_dict(),
        }


def matched_pipeline(domain, data, s: float = 0.25, window: tuple[float, float] = (1e-4, 1e-3), order: int = 3, n_samples: int = 9, steps: int = 64, tolerances=None) -> PipelineResult:
    """Predict, simulate on diffusion-matched grids at ``s`` and ``s/2``, fit, extrapolate and compare."""
    from .heat_fd import matched_series
    from .invariants import predict

    pred = predict(domain, data)
    coarse = matched_series(domain, data, s, window[0], window[1], n_samples, steps)
    fine = matched_series(domain, data, s / 2, window[0], window[1], n_samples, steps)
    fc = extract(coarse, order, window)
    ff = extract(fine, order, window)
    ext = matched_extrapolation(fc, ff)
    return PipelineResult(pred, (coarse, fine), (fc, ff), ext, compare(ext, pred, tolerances))
