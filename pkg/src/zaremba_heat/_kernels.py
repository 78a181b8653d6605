"""Hot loops with a numba implementation and a pure-numpy fallback.

Two kernels dominate the wedge computations:

``miller_weighted_sum``
    ``sum_k c_k exp(-z) I_{k+1/2}(z)`` for many arguments ``z`` at once, by
    Miller's backward recurrence normalised with the closed form of
    ``I_{1/2}``.
``laplace_weighted_sum``
    ``sum_k c_k sum_j g_j exp(-(k+1/2) tau_j)``, the k-sum of Laplace-type
    tau-integrals that produces the junction part of the heat content.

Set the environment variable ``ZHL_NUMBA=0`` before import to force the numpy
versions (also used automatically when numba is unavailable).
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "miller_start",
    "miller_weighted_sum",
    "laplace_weighted_sum",
    "miller_weighted_sum_numpy",
    "laplace_weighted_sum_numpy",
]

_RESCALE = 1e250


def _want_numba() -> bool:
    flag = os.environ.get("ZHL_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


def miller_start(z: float, k_top: int) -> int:
    """Starting index of the backward recurrence.

    The relative contamination at index ``k`` decays like
    ``exp(-(N^2 - k^2)/z)`` for ``N << z`` and faster beyond, so
    ``N^2 >= k_top^2 + 40 z`` plus a fixed margin suffices for double
    precision.
    """
    return int(math.sqrt(k_top * k_top + 40.0 * z)) + 25


def _i_half_scaled(z):
    """``exp(-z) I_{1/2}(z)`` without cancellation."""
    return -np.expm1(-2.0 * z) / np.sqrt(2.0 * np.pi * z)


# ----------------------------------------------------------------------------
# numpy versions
# ----------------------------------------------------------------------------


def miller_weighted_sum_numpy(z: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    z = np.ascontiguousarray(z, dtype=float)
    c = np.ascontiguousarray(coeffs, dtype=float)
    K = len(c) - 1
    n_top = max(miller_start(float(z.max()), K), K + 2)
    y_next = np.zeros_like(z)  # y_{k+1}
    y = np.full_like(z, 1e-30)  # y_k, starting at k = n_top
    acc = np.zeros_like(z)
    inv_z = 1.0 / z
    for k in range(n_top, 0, -1):
        if k <= K:
            acc += c[k] * y
        # y_{k-1} = y_{k+1} + (2(k+1/2)/z) y_k
        y_prev = y_next + (2.0 * k + 1.0) * inv_z * y
        y_next = y
        y = y_prev
        big = np.abs(y) > _RESCALE
        if np.any(big):
            s = np.where(big, 1.0 / _RESCALE, 1.0)
            y *= s
            y_next *= s
            acc *= s
    acc += c[0] * y
    return acc / y * _i_half_scaled(z)


def laplace_weighted_sum_numpy(tau: np.ndarray, g: np.ndarray, coeffs: np.ndarray) -> float:
    tau = np.asarray(tau, dtype=float)
    g = np.asarray(g, dtype=float)
    c = np.asarray(coeffs, dtype=float)
    total = 0.0
    chunk = 4096
    for k0 in range(0, len(c), chunk):
        k = np.arange(k0, min(k0 + chunk, len(c)), dtype=float)
        E = np.exp(-np.outer(k + 0.5, tau))
        total += float(c[k0 : k0 + len(k)] @ (E @ g))
    return total


# ----------------------------------------------------------------------------
# numba versions
# ----------------------------------------------------------------------------

USE_NUMBA = False
miller_weighted_sum = miller_weighted_sum_numpy
laplace_weighted_sum = laplace_weighted_sum_numpy

if _want_numba():
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        njit = None

    if njit is not None:

        @njit(cache=True, nogil=True)
        def _miller_nb(z, c):
            K = c.shape[0] - 1
            out = np.empty_like(z)
            for i in range(z.shape[0]):
                zi = z[i]
                n_top = int(math.sqrt(K * K + 40.0 * zi)) + 25
                if n_top < K + 2:
                    n_top = K + 2
                inv_z = 1.0 / zi
                y_next = 0.0
                y = 1e-30
                acc = 0.0
                for k in range(n_top, 0, -1):
                    if k <= K:
                        acc += c[k] * y
                    y_prev = y_next + (2.0 * k + 1.0) * inv_z * y
                    y_next = y
                    y = y_prev
                    if abs(y) > 1e250:
                        y *= 1e-250
                        y_next *= 1e-250
                        acc *= 1e-250
                acc += c[0] * y
                i0 = -math.expm1(-2.0 * zi) / math.sqrt(2.0 * math.pi * zi)
                out[i] = acc / y * i0
            return out

        @njit(cache=True, nogil=True)
        def _laplace_nb(tau, g, c):
            total = 0.0
            for j in range(tau.shape[0]):
                q = math.exp(-tau[j])
                e = math.exp(-0.5 * tau[j]) * g[j]
                s = 0.0
                for k in range(c.shape[0]):
                    s += c[k] * e
                    e *= q
                    if e == 0.0:
                        break
                total += s
            return total

        def miller_weighted_sum(z: np.ndarray, coeffs: np.ndarray) -> np.ndarray:  # noqa: F811
            return _miller_nb(np.ascontiguousarray(z, dtype=np.float64), np.ascontiguousarray(coeffs, dtype=np.float64))

        def laplace_weighted_sum(tau: np.ndarray, g: np.ndarray, coeffs: np.ndarray) -> float:  # noqa: F811
            return float(
                _laplace_nb(
                    np.ascontiguousarray(tau, dtype=np.float64),
                    np.ascontiguousarray(g, dtype=np.float64),
                    np.ascontiguousarray(coeffs, dtype=np.float64),
                )
            )

        USE_NUMBA = True
