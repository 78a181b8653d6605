"""Command-line entry point ``zhl``.

Exit codes: 0 success, 2 verification failure, 3 configuration error,
4 numerical non-convergence.  ``ZHL_THREADS`` caps the number of worker
threads used for independent sub-computations; results are always gathered
in input order so outputs are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_CONFIG = 3
EXIT_NUMERIC = 4


class ConfigError(ValueError):
    """Invalid command-line or file configuration."""


def _workers() -> int:
    raw = os.environ.get("ZHL_THREADS", "")
    if not raw:
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"ZHL_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError("ZHL_THREADS must be a positive integer")
    return n


def _map_ordered(fn: Callable, items: Sequence) -> list:
    n = _workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o: Any):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def _parse_range(text: str, what: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(f"{what} must look like a:b, got {text!r}") from None
    return a, b


def _parse_t_samples(text: str) -> np.ndarray:
    """``a:b:n`` (log-spaced) or a comma-separated list."""
    try:
        if ":" in text:
            a, b, n = text.split(":")
            ts = np.geomspace(float(a), float(b), int(n))
        else:
            ts = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise ConfigError(f"cannot parse t samples {text!r}") from None
    if len(ts) == 0 or np.any(ts <= 0) or np.any(np.diff(ts) <= 0):
        raise ConfigError("t samples must be positive and strictly increasing")
    return ts


def _constants_block() -> dict[str, Any]:
    from .invariants import CONSTANTS, consistency_checks

    return {"table": CONSTANTS.to_dict(), "consistency": consistency_checks()}


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------


def cmd_identities(args) -> int:
    from .identities import report_json, verify_all

    records = verify_all()
    _emit(report_json(records), args.out)
    for r in records:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<28} residual={r.residual:.3e} tol={r.tolerance:.0e}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in records) else EXIT_VERIFY


def cmd_corner(args) -> int:
    from .corner import corner_c, zaremba_sigma_constant

    status = EXIT_OK
    if args.gamma is not None:
        r = corner_c(args.gamma, route=args.route)
        print(f"{r.value:.17g}")
    if args.table:
        gs = np.linspace(2 * math.pi / args.n, 2 * math.pi, args.n)
        rows = ["gamma,c"] + [f"{g:.17g},{corner_c(g, route=args.route).value:.17g}" for g in gs]
        _emit("\n".join(rows) + "\n", args.out)
    if args.assert_c0:
        try:
            c0 = zaremba_sigma_constant()
            print(f"c0 = {c0:.17g}  PASS")
        except AssertionError as exc:
            print(f"FAIL: {exc}", file=sys.stderr)
            status = EXIT_VERIFY
    if args.gamma is None and not args.table and not args.assert_c0:
        raise ConfigError("corner needs --gamma, --table or --assert-c0")
    return status


def _parse_profile(text: str) -> float:
    kind, _, arg = text.partition(":")
    if kind != "gaussian":
        raise ConfigError(f"unsupported profile {text!r}; use gaussian:sigma")
    try:
        sigma = float(arg or 1.0)
    except ValueError:
        raise ConfigError(f"bad profile width in {text!r}") from None
    if not sigma > 0:
        raise ConfigError("profile width must be positive")
    return sigma


def cmd_wedge(args) -> int:
    from .numerics import FitBasis, fit_half_powers
    from .wedge_kernel import beta_sigma, expected_leading, standard_case

    sigma = _parse_profile(args.profile)
    case = standard_case(args.case, sigma)
    a, b = _parse_range(args.t_decades, "--t-decades")
    if not a < b:
        raise ConfigError("--t-decades needs a < b")
    n = max(8, int(round(args.per_decade * (b - a))) + 1)
    ts = np.logspace(a, b, n)
    vals = np.array(_map_ordered(lambda t: beta_sigma(case, float(t)).value, list(ts)))
    power, expected = expected_leading(case)
    fit = fit_half_powers(ts, vals / ts**power, FitBasis(3, (ts[0], ts[-1])))
    coef = float(fit.coefficients[0])
    rel = abs(coef / expected - 1.0)
    tol = 0.005 if args.case == "const" else 0.01
    ok = rel <= tol
    rows = ["t,beta"] + [f"{t:.17g},{v:.17g}" for t, v in zip(ts, vals)]
    if args.out:
        Path(args.out).write_text("\n".join(rows) + "\n")
    verdict = {"case": args.case, "profile": args.profile, "power": power, "extracted": coef, "expected": expected, "rel_error": rel, "tolerance": tol, "pass": ok}
    print(json.dumps(verdict, sort_keys=True))
    return EXIT_OK if ok else EXIT_VERIFY


def _load_domain(path: str):
    from .invariants import load_domain

    p = Path(path)
    if not p.exists():
        raise ConfigError(f"domain file {path!r} not found")
    return load_domain(p), json.loads(p.read_text())


def cmd_predict(args) -> int:
    from .invariants import load_data, predict

    domain, raw = _load_domain(args.domain)
    data = load_data(args.data, raw)
    cs = predict(domain, data)
    for n, b in enumerate(cs.betas):
        for f in b.flags:
            print(f"warning: beta_{n}: {f}", file=sys.stderr)
    doc = cs.to_dict()
    doc["constants"] = _constants_block()
    _emit(_dumps(doc), args.out)
    return EXIT_OK


def _load_grid(path: str | None) -> tuple[Any, dict[str, Any]]:
    from .heat_fd import GridSpec

    if path is None:
        return GridSpec(), {}
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"grid file {path!r} not found")
    raw = json.loads(p.read_text())
    matched = raw.pop("matched", {})
    return GridSpec.from_dict(raw), matched


def cmd_solve(args) -> int:
    from .heat_fd import solve
    from .invariants import load_data

    domain, raw = _load_domain(args.domain)
    data = load_data(args.data, raw)
    grid, _ = _load_grid(args.grid)
    ts = _parse_t_samples(args.t_samples)
    series = solve(domain, data, grid, ts)
    if args.out:
        series.write(args.out)
    else:
        sys.stdout.write(series.to_csv())
    return EXIT_OK


def _report_reflection(grid) -> dict[str, Any]:
    from .heat_fd import reflection_pair

    ts = np.array([1e-4, 1e-3, 1e-2, 1e-1])
    half, full = reflection_pair(1.0, 0.5, grid, ts)
    diff = float(np.max(np.abs(full.beta - 2 * half.beta)))
    return {"t": ts.tolist(), "beta_half": half.beta.tolist(), "beta_doubled": full.beta.tolist(), "max_abs_diff": diff, "tolerance": 1e-12, "pass": diff <= 1e-12}


def _report_oracle(domain, grid, h: float) -> dict[str, Any]:
    from .heat_fd import GridSpec, solve, spectral_oracle_rectangle
    from .invariants import builtin_data

    xs = [p for a in domain.arcs for p in (a.start[0], a.end[0])]
    ys = [p for a in domain.arcs for p in (a.start[1], a.end[1])]
    if len(domain.arcs) != 4 or not domain.is_rectilinear():
        raise ConfigError("--oracle rectangle needs a four-edge rectangle")
    a, b = max(xs) - min(xs), max(ys) - min(ys)
    tags = [arc.tag.replace("R", "N") for arc in domain.arcs]
    if any(arc.S != 0.0 for arc in domain.arcs):
        raise ConfigError("the rectangle oracle needs Dirichlet or Neumann edges")
    # edges start at the bottom-left corner going counterclockwise
    start = min(range(4), key=lambda i: (domain.arcs[i].start[1], domain.arcs[i].start[0]))
    tags = tags[start:] + tags[:start]
    ts = [1e-3, 1e-2]
    data = builtin_data("unit")
    res = []
    for t in ts:
        vals = []
        for hh in (h, h / 2):
            g = GridSpec(h=hh, grading=("none",), theta=0.5, c_dt=1e9, min_steps=512, startup=grid.startup)
            vals.append(solve(domain, data, g, [t]).beta[0])
        rich = (4 * vals[1] - vals[0]) / 3
        exact = spectral_oracle_rectangle(a, b, tags, t)
        res.append({"t": t, "coarse": vals[0], "fine": vals[1], "richardson": rich, "oracle": exact, "abs_diff": abs(rich - exact)})
    worst = max(r["abs_diff"] for r in res)
    return {"h": [h, h / 2], "rows": res, "max_abs_diff": worst, "tolerance": 1e-6, "pass": worst <= 1e-6}


def cmd_report(args) -> int:
    from .fitting import compare, extract, matched_pipeline
    from .heat_fd import _hash, solve
    from .invariants import load_data, predict

    domain, raw = _load_domain(args.domain)
    data = load_data(args.data, raw)
    grid, matched = _load_grid(args.grid)
    window = _parse_range(args.window, "--window")
    doc: dict[str, Any] = {
        "domain": domain.to_dict(),
        "data": data.to_dict(),
        "provenance": {"domain_hash": _hash(domain.to_dict()), "data_hash": _hash(data.to_dict()), "grid_hash": _hash(grid.to_dict())},
        "constants": _constants_block(),
    }
    ok = True
    if args.reflection:
        doc["reflection"] = _report_reflection(grid)
        ok &= doc["reflection"]["pass"]
    if args.oracle:
        doc["oracle"] = _report_oracle(domain, grid, args.oracle_h)
        ok &= doc["oracle"]["pass"]
    if not (args.reflection or args.oracle):
        if args.matched or matched:
            s = float(matched.get("s", args.s))
            res = matched_pipeline(domain, data, s, window, args.order, int(matched.get("samples", args.samples)), int(matched.get("steps", 64)))
            doc["pipeline"] = res.to_dict()
            comparison = res.comparison
        else:
            ts = np.geomspace(window[0], window[1], max(2 * (args.order + 1), args.samples))
            series = solve(domain, data, grid, ts)
            fit = extract(series, args.order, window)
            comparison = compare(fit, predict(domain, data))
            doc["pipeline"] = {"series": {"csv": series.to_csv(), "meta": series.meta}, "fit": fit.to_dict(), "predicted": predict(domain, data).to_dict(), "comparison": comparison.to_dict()}
        print(comparison.table())
        ok &= comparison.passed
    doc["tolerances"] = {"beta_0": "1e-3 relative", "beta_1": "1% relative", "beta_2": "5% of max(1,|beta_2|)", "beta_3": "0.05 absolute", "reflection": 1e-12, "oracle": 1e-6}
    doc["verdict"] = "pass" if ok else "fail"
    if args.timestamp:
        import datetime

        doc["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    _emit(_dumps(doc), args.out)
    return EXIT_OK if ok else EXIT_VERIFY


# ----------------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zhl", description="Heat-content asymptotics laboratory for Zaremba problems.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("identities", help="verify the identity registry")
    s.add_argument("--out", help="JSON report path (default: stdout)")
    s.set_defaults(func=cmd_identities)

    s = sub.add_parser("corner", help="corner constant c(gamma)")
    s.add_argument("--gamma", type=float)
    s.add_argument("--table", action="store_true", help="CSV table of c on a gamma grid")
    s.add_argument("--n", type=int, default=24, help="table size")
    s.add_argument("--route", choices=("exp_sinh", "split"), default="exp_sinh")
    s.add_argument("--assert-c0", action="store_true", help="check c(2 pi)/2 = -1/2")
    s.add_argument("--out")
    s.set_defaults(func=cmd_corner)

    s = sub.add_parser("wedge", help="junction part of the half-plane heat content")
    s.add_argument("--case", choices=("const", "sin", "cos"), required=True)
    s.add_argument("--t-decades", default="-5:-3", help="log10 range of t, e.g. -5:-3")
    s.add_argument("--profile", default="gaussian:1")
    s.add_argument("--per-decade", type=int, default=6)
    s.add_argument("--out", help="CSV path for the t,beta series")
    s.set_defaults(func=cmd_wedge)

    s = sub.add_parser("predict", help="closed-form coefficients for a domain")
    s.add_argument("--domain", required=True)
    s.add_argument("--data", default="unit", help="built-in data name, data JSON file, or 'domain'")
    s.add_argument("--out")
    s.set_defaults(func=cmd_predict)

    s = sub.add_parser("solve", help="finite-difference heat content series")
    s.add_argument("--domain", required=True)
    s.add_argument("--grid")
    s.add_argument("--data", default="unit")
    s.add_argument("--t-samples", required=True, help="a:b:n (log-spaced) or comma list")
    s.add_argument("--out", help="CSV path (a .meta.json sidecar is written next to it)")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("report", help="predict + solve + fit + compare")
    s.add_argument("--domain", required=True)
    s.add_argument("--grid")
    s.add_argument("--data", default="unit")
    s.add_argument("--window", default="1e-4:1e-3")
    s.add_argument("--order", type=int, default=3)
    s.add_argument("--samples", type=int, default=9)
    s.add_argument("--matched", action="store_true", help="diffusion-matched grids with extrapolation in s")
    s.add_argument("--s", type=float, default=0.25, help="h / sqrt(t) for matched grids")
    s.add_argument("--reflection", action="store_true")
    s.add_argument("--oracle", choices=("rectangle",))
    s.add_argument("--oracle-h", type=float, default=1.0 / 128, help="coarse spacing of the two oracle grids")
    s.add_argument("--timestamp", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    from .heat_fd import GridMismatch, IllConditionedSolve
    from .invariants import ConstantsCorrupted, DomainError
    from .numerics import NonConvergence
    from .wedge_kernel import TruncationNotConverged

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        return int(args.func(args))
    except ConstantsCorrupted as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (NonConvergence, TruncationNotConverged, IllConditionedSolve) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, DomainError, GridMismatch, ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
