"""Compare the numba kernels with their numpy fallbacks.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat N]

Both implementations are called on identical inputs; the script reports the
best wall time of ``N`` repeats and the maximum relative difference.  The
numba timings exclude compilation (one warm-up call is made first).  Run with
``ZHL_NUMBA=0`` to confirm that the package falls back to numpy.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from zaremba_heat import _kernels as kn


def best_time(fn, repeat: int) -> tuple[float, object]:
    out = fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)

    z = np.sort(rng.uniform(1e-3, 200.0, 4000))
    k = np.arange(400)
    c = 1.0 / (k + 0.5) ** 2
    tau = np.sort(rng.uniform(1e-4, 60.0, 2000))
    g = rng.normal(size=tau.size)
    cl = 1.0 / (np.arange(20000) + 0.5) ** 2

    rows = [
        ("miller_weighted_sum", lambda: kn.miller_weighted_sum_numpy(z, c), lambda: kn.miller_weighted_sum(z, c)),
        ("laplace_weighted_sum", lambda: kn.laplace_weighted_sum_numpy(tau, g, cl), lambda: kn.laplace_weighted_sum(tau, g, cl)),
    ]
    print(f"numba active: {kn.USE_NUMBA}")
    print(f"{'kernel':<22} {'numpy [s]':>10} {'selected [s]':>13} {'speed-up':>9} {'max rel diff':>13}")
    for name, f_np, f_sel in rows:
        t_np, a = best_time(f_np, args.repeat)
        t_sel, b = best_time(f_sel, args.repeat)
        a, b = np.atleast_1d(a), np.atleast_1d(b)
        diff = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300)))
        print(f"{name:<22} {t_np:10.4f} {t_sel:13.4f} {t_np / t_sel:9.1f} {diff:13.1e}")


if __name__ == "__main__":
    main()
