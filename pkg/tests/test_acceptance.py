"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

The lines are printed as the tests run (visible with ``-s``) and collected
into the terminal summary by ``conftest.py``.
"""

import math
import time

import numpy as np
import pytest

from zaremba_heat import identities, model1d, specfun
from zaremba_heat.corner import corner_c
from zaremba_heat.fitting import matched_pipeline
from zaremba_heat.heat_fd import GridSpec, reflection_pair, solve, spectral_oracle_rectangle
from zaremba_heat.invariants import builtin_data, consistency_checks, load_domain
from zaremba_heat.wedge_kernel import extract_leading, standard_case

SQRT_PI = math.sqrt(math.pi)
UNIT = builtin_data("unit")
RESULTS: dict[int, str] = {}


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}  {title}: {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_01_corner_constant_full_angle():
    t0 = time.perf_counter()
    c = corner_c(2 * math.pi).value
    dt = time.perf_counter() - t0
    record(1, "c(2 pi) = -1", abs(c + 1) <= 1e-10 and dt < 1.0, f"c = {c:.15f}, |c + 1| = {abs(c + 1):.2e}, {dt:.3f} s")


def test_02_constant_table_consistency():
    checks = {r["name"]: r for r in consistency_checks()}
    ok = (
        checks["inv_sqrt_pi_minus_c3_minus_c5"]["exact"] == "0"
        and checks["c2_minus_half_c4_plus_c6"]["exact"] == "0"
        and checks["warped_product_ledger"]["twelfths"] == [4, 3, -8, 1]
        and checks["warped_product_ledger"]["exact"] == "0"
    )
    record(2, "exact constant relations", ok, ", ".join(f"{k} = {v['exact']}" for k, v in checks.items() if "exact" in v))


@pytest.mark.parametrize(
    "n,kind,tol,label",
    [(3, "const", 0.005, "c0 from beta_sigma (Const/Const)"), (4, "sin", 0.01, "c6 from beta_sigma (Const/Sin)"), (5, "cos", 0.01, "c5 from beta_sigma (Const/Cos)")],
)
def test_03_05_wedge_constants(n, kind, tol, label):
    t0 = time.perf_counter()
    ex = extract_leading(standard_case(kind), t_min=1e-5, t_max=1e-3)
    dt = time.perf_counter() - t0
    ok = ex.rel_error <= tol and dt < 120.0
    record(n, label, ok, f"t^{ex.power:g} coefficient {ex.coefficient:.8f} vs {ex.expected:.8f} (rel {ex.rel_error:.1e}, {dt:.1f} s)")


def test_06_identity_registry():
    t0 = time.perf_counter()
    recs = identities.verify_all()
    dt = time.perf_counter() - t0
    n_pass = sum(r.passed for r in recs)
    ok = len(recs) >= 15 and n_pass == len(recs) and dt < 30.0
    record(6, "identity registry", ok, f"{n_pass}/{len(recs)} pass, max residual {max(r.residual for r in recs):.1e}, {dt:.2f} s")


def test_07_bessel_routes():
    worst = 0.0
    for k in range(21):
        for z in (0.01, 0.1, 1.0, 5.0, 10.0, 50.0):
            a = specfun.bessel_i_half_scaled(k, z).value
            b = specfun.bessel_i_half_by_integral(k, z).value
            worst = max(worst, abs(a - b))
    record(7, "Bessel route agreement", worst <= 1e-9, f"max |difference| = {worst:.2e} on k = 0..20, 6 arguments")


def test_08_neumann_conservation(domains_dir):
    dom = load_domain(domains_dir / "neumann_square.json")
    ts = np.geomspace(1e-4, 1e-1, 7)
    dev = 0.0
    for theta in (0.5, 1.0):
        s = solve(dom, UNIT, GridSpec(h=1 / 64, grading=("none",), theta=theta, c_dt=0.5, min_steps=16), ts)
        dev = max(dev, float(np.max(np.abs(s.beta - 1.0))))
    record(8, "all-Neumann conservation", dev <= 1e-10, f"max |beta - 1| = {dev:.2e}")


def test_09_dirichlet_oracle(domains_dir):
    dom = load_domain(domains_dir / "dirichlet_square.json")
    worst = 0.0
    rows = []
    for t in (1e-3, 1e-2):
        v = [solve(dom, UNIT, GridSpec(h=h, grading=("none",), theta=0.5, c_dt=1e9, min_steps=512), [t]).beta[0] for h in (1 / 128, 1 / 256)]
        rich = (4 * v[1] - v[0]) / 3
        err = abs(rich - spectral_oracle_rectangle(1.0, 1.0, "DDDD", t))
        worst = max(worst, err)
        rows.append(f"t={t:g}: {err:.1e}")
    record(9, "all-Dirichlet square vs eigenseries", worst <= 1e-6, ", ".join(rows))


def test_10_reflection():
    half, full = reflection_pair(1.0, 0.5, GridSpec(h=1 / 64, grading=("none",), theta=0.5, c_dt=1e9, min_steps=64), np.geomspace(1e-4, 1e-1, 7))
    diff = float(np.max(np.abs(full.beta - 2 * half.beta)))
    record(10, "reflection identity", diff <= 1e-12, f"max |beta_doubled - 2 beta_half| = {diff:.2e}")


def test_11_zaremba_square_end_to_end(zaremba_square):
    t0 = time.perf_counter()
    res = matched_pipeline(zaremba_square, UNIT, s=0.25, window=(1e-4, 1e-3), order=3)
    dt = time.perf_counter() - t0
    b = res.extrapolated.coefficients
    target1 = -2 / SQRT_PI * 3.5
    target2 = 4 * corner_c(math.pi / 2).value - 1
    checks = [abs(b[0] - 1.0) <= 1e-3, abs(b[1] / target1 - 1) <= 0.01, abs(b[2] / target2 - 1) <= 0.05, abs(b[3]) <= 0.05]
    detail = (
        f"beta0 {b[0]:.6f}, beta1 {b[1]:.5f} (target {target1:.5f}), "
        f"beta2 {b[2]:.4f} (target {target2:.4f}), beta3 {b[3]:.2e}, {dt:.0f} s"
    )
    record(11, "Zaremba square end to end", all(checks) and res.comparison.passed, detail)


def test_12_model_problems():
    nu = np.linspace(0.003, 5.0, 120)
    cases = [
        ("D k=0 F=0 G=1", model1d.solve_dirichlet_model(0, None, 1.0)),
        ("D k=0 F=0 G=0", model1d.solve_dirichlet_model(0, None, 0.0)),
        ("D k=1 F=exp G=0", model1d.solve_dirichlet_model(1, lambda x: np.exp(-np.asarray(x) ** 2), 0.0)),
        ("N k=0 F=0 H=0", model1d.solve_neumann_model(0, None, 0.0)),
        ("N k=0 F=0 H=1", model1d.solve_neumann_model(0, None, 1.0)),
        ("N k=2 F=nu exp H=0", model1d.solve_neumann_model(2, lambda x: np.asarray(x) * np.exp(-np.asarray(x) ** 2), 0.0)),
    ]
    res = max(float(np.max(np.abs(s.residual(nu)))) for _, s in cases)
    bc = max(s.boundary_error() for _, s in cases)
    psi0 = abs(float(model1d.psi_k(0, 0.0)) - SQRT_PI / 2)
    ok = res <= 1e-7 and bc <= 1e-10 and psi0 <= 1e-12
    record(12, "model problems", ok, f"max residual {res:.1e}, max boundary error {bc:.1e}, |psi_0(0) - sqrt(pi)/2| = {psi0:.1e}")
