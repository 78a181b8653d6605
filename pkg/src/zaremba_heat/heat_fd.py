"""Finite-difference heat content on rectilinear planar domains.

The heat equation ``u_t = Lap u + E u`` with Dirichlet and Robin
(``u_m + S u = 0``, inward normal) boundary parts is discretised by the
vertex-centred box scheme on a tensor grid: every grid cell inside the
domain contributes the 5-point flux couplings of its four edges and a
quarter of its area to each corner node (lumped mass).  On a uniform grid
this is the standard 5-point Laplacian; Neumann edges need no special
treatment and Robin edges add a boundary mass term.  Dirichlet nodes are
removed from the system.

Time stepping uses the theta scheme with a sparse LU factorisation that is
reused for all steps of equal size.  For the Crank-Nicolson case the first
steps are implicit Euler half steps (Rannacher start-up), which use the same
matrix ``W + dt/2 K``.

The heat content is ``beta(t) = sum_nodes W u phi*``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .invariants import DataSpec, DomainError, DomainSpec

__all__ = [
    "GridSpec",
    "HeatSeries",
    "Mesh",
    "IllConditionedSolve",
    "GridMismatch",
    "build_mesh",
    "solve",
    "solve_on_mesh",
    "spectral_oracle_rectangle",
    "rectangle_domain",
    "reflection_pair",
    "matched_series",
    "matched_t_values",
    "domain_unit",
]


class IllConditionedSolve(RuntimeError):
    """The factorised system produced non-finite values."""


class GridMismatch(ValueError):
    """The doubled grid is not the exact mirror image of the half grid."""


# ----------------------------------------------------------------------------
# configuration and results
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Spatial and temporal resolution.

    Attributes
    ----------
    h : float
        Base cell size.
    grading : tuple
        ``("none",)`` or ``("geometric", ratio, layers)``; geometric grading
        inserts ``layers`` lines at distances ``h ratio^j`` around each
        junction point.
    theta : float
        ``1/2`` is Crank-Nicolson, ``1`` fully implicit.
    c_dt : float
        Largest step ``dt = c_dt h^2``.
    min_steps : int
        Minimum number of steps between consecutive samples (and from 0 to
        the first sample), so that ``dt`` shrinks with ``t``.
    startup : int
        Implicit Euler half steps at the start when ``theta = 1/2``.
    """

    h: float = 1.0 / 64
    grading: tuple = ("geometric", 0.7, 8)
    theta: float = 0.5
    c_dt: float = 0.5
    min_steps: int = 64
    startup: int = 4

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise ValueError("h must be positive")
        if not 0.5 <= self.theta <= 1.0:
            raise ValueError("theta must lie in [1/2, 1]")
        if not self.c_dt > 0:
            raise ValueError("c_dt must be positive")
        if self.min_steps < 1 or self.startup < 0:
            raise ValueError("min_steps must be >= 1 and startup >= 0")
        kind = self.grading[0] if self.grading else "none"
        if kind == "geometric":
            if len(self.grading) != 3:
                raise ValueError("geometric grading needs (ratio, layers)")
            _, ratio, layers = self.grading
            if not 0.0 < ratio < 1.0:
                raise ValueError("grading ratio must lie in (0, 1)")
            if int(layers) < 0:
                raise ValueError("layers must be nonnegative")
        elif kind != "none":
            raise ValueError(f"unknown grading {kind!r}")

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GridSpec":
        g = d.get("grading", {"type": "geometric", "ratio": 0.7, "layers": 8})
        if isinstance(g, dict):
            grading = ("none",) if g.get("type", "none") == "none" else ("geometric", float(g.get("ratio", 0.7)), int(g.get("layers", 8)))
        else:
            grading = tuple(g)
        known = {"h", "grading", "theta_scheme", "theta", "c_dt", "min_steps", "startup"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown grid keys {sorted(extra)}")
        return cls(
            h=float(d.get("h", 1.0 / 64)),
            grading=grading,
            theta=float(d.get("theta_scheme", d.get("theta", 0.5))),
            c_dt=float(d.get("c_dt", 0.5)),
            min_steps=int(d.get("min_steps", 64)),
            startup=int(d.get("startup", 4)),
        )

    def to_dict(self) -> dict[str, Any]:
        g = {"type": "none"} if self.grading[0] == "none" else {"type": "geometric", "ratio": self.grading[1], "layers": int(self.grading[2])}
        return {"h": self.h, "grading": g, "theta_scheme": self.theta, "c_dt": self.c_dt, "min_steps": self.min_steps, "startup": self.startup}


def _hash(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


@dataclass
class HeatSeries:
    """Samples ``(t, beta(t))`` with provenance."""

    t: np.ndarray
    beta: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.t = np.asarray(self.t, dtype=float)
        self.beta = np.asarray(self.beta, dtype=float)
        if self.t.shape != self.beta.shape or self.t.ndim != 1:
            raise ValueError("t and beta must be 1-D arrays of equal length")
        if np.any(np.diff(self.t) <= 0) or np.any(self.t <= 0):
            raise ValueError("t must be positive and strictly increasing")
        if not np.all(np.isfinite(self.beta)):
            raise ValueError("beta must be finite")

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.beta.tolist()))

    def to_csv(self) -> str:
        lines = ["t,beta"] + [f"{a:.17g},{b:.17g}" for a, b in zip(self.t, self.beta)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, meta: dict[str, Any] | None = None) -> "HeatSeries":
        rows = [ln.split(",") for ln in text.strip().splitlines()]
        if rows[0] != ["t", "beta"]:
            raise ValueError("CSV header must be 't,beta'")
        arr = np.array([[float(a), float(b)] for a, b in rows[1:]])
        return cls(arr[:, 0], arr[:, 1], dict(meta or {}))

    def write(self, path: str | Path) -> None:
        """Write ``path`` (CSV) and ``path.meta.json`` (provenance)."""
        path = Path(path)
        path.write_text(self.to_csv())
        Path(str(path) + ".meta.json").write_text(json.dumps(self.meta, indent=2, sort_keys=True) + "\n")


# ----------------------------------------------------------------------------
# mesh
# ----------------------------------------------------------------------------


@dataclass
class Mesh:
    """Box-scheme discretisation restricted to the free (non-Dirichlet) nodes."""

    x: np.ndarray
    y: np.ndarray
    node_x: np.ndarray
    node_y: np.ndarray
    W: np.ndarray
    K: sp.csc_matrix
    meta: dict[str, Any]


def _segments(domain: DomainSpec):
    if not domain.is_rectilinear():
        raise DomainError("the finite-difference solver needs an axis-aligned rectilinear polygon")
    return [(a.start, a.end, a.tag, a.S) for a in domain.arcs]


def _axis(breaks: Sequence[float], h: float, refine: Sequence[float], grading: tuple) -> np.ndarray:
    breaks = sorted(set(breaks))
    pts = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        n = max(1, int(math.ceil((b - a) / h - 1e-9)))
        pts.append(np.linspace(a, b, n + 1))
    out = np.unique(np.concatenate(pts))
    if grading[0] == "geometric" and refine:
        _, ratio, layers = grading
        lo, hi = breaks[0], breaks[-1]
        extra = []
        for c in refine:
            # local spacing next to the refinement point
            i = int(np.searchsorted(out, c))
            for side in (-1, 1):
                j = i + side if side > 0 else i - 1
                if 0 <= j < len(out) and out[j] != c:
                    d = abs(out[j] - c)
                    extra += [c + side * d * ratio**m for m in range(1, int(layers) + 1)]
        extra = [e for e in extra if lo < e < hi]
        out = np.unique(np.concatenate([out, extra]))
    return out


def _inside(px: np.ndarray, py: np.ndarray, segs) -> np.ndarray:
    """Even-odd rule with a ray towards +x (points never lie on edges here)."""
    crossings = np.zeros(px.shape, dtype=int)
    for (x0, y0), (x1, y1), _, _ in segs:
        if x0 != x1:
            continue
        ylo, yhi = min(y0, y1), max(y0, y1)
        crossings += ((py > ylo) & (py < yhi) & (px < x0)).astype(int)
    return crossings % 2 == 1


def build_mesh(domain: DomainSpec, data: DataSpec, grid: GridSpec, x: np.ndarray | None = None, y: np.ndarray | None = None) -> Mesh:
    """Assemble mass and stiffness of the box scheme on ``domain``.

    Grid lines pass through every vertex and junction coordinate; ``x`` and
    ``y`` may be given explicitly (used for mirrored grids).
    """
    segs = _segments(domain)
    xs = [p[0] for s in segs for p in s[:2]]
    ys = [p[1] for s in segs for p in s[:2]]
    junc = domain.junctions()
    if x is None:
        x = _axis(xs, grid.h, [j.point[0] for j in junc], grid.grading)
    if y is None:
        y = _axis(ys, grid.h, [j.point[1] for j in junc], grid.grading)
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    nx, ny = len(x), len(y)
    cx = 0.5 * (x[:-1] + x[1:])
    cy = 0.5 * (y[:-1] + y[1:])
    CX, CY = np.meshgrid(cx, cy, indexing="ij")
    keep = _inside(CX, CY, segs)
    ci, cj = np.nonzero(keep)
    dx = (x[ci + 1] - x[ci])
    dy = (y[cj + 1] - y[cj])

    def nid(i, j):
        return i * ny + j

    n00, n10, n01, n11 = nid(ci, cj), nid(ci + 1, cj), nid(ci, cj + 1), nid(ci + 1, cj + 1)
    N = nx * ny
    W = np.bincount(np.concatenate([n00, n10, n01, n11]), weights=np.tile(0.25 * dx * dy, 4), minlength=N)
    # edge couplings: horizontal edges (x-direction) carry (dy/2)/dx, vertical ones (dx/2)/dy
    cxw = 0.5 * dy / dx
    cyw = 0.5 * dx / dy
    ea = np.concatenate([n00, n01, n00, n10])
    eb = np.concatenate([n10, n11, n01, n11])
    ew = np.concatenate([cxw, cxw, cyw, cyw])
    rows = np.concatenate([ea, eb, ea, eb])
    cols = np.concatenate([ea, eb, eb, ea])
    vals = np.concatenate([ew, ew, -ew, -ew])
    K = sp.coo_matrix((vals, (rows, cols)), shape=(N, N)).tocsr()

    NX, NY = np.meshgrid(x, y, indexing="ij")
    NX, NY = NX.ravel(), NY.ravel()
    used = W > 0
    dirichlet = np.zeros(N, dtype=bool)
    robin_diag = np.zeros(N)
    for (x0, y0), (x1, y1), tag, S in segs:
        if x0 == x1:
            on = used & (np.abs(NX - x0) <= 1e-12) & (NY >= min(y0, y1) - 1e-12) & (NY <= max(y0, y1) + 1e-12)
            coord, axis_vals = NY, y
        else:
            on = used & (np.abs(NY - y0) <= 1e-12) & (NX >= min(x0, x1) - 1e-12) & (NX <= max(x0, x1) + 1e-12)
            coord, axis_vals = NX, x
        if tag == "D":
            dirichlet |= on
        elif S != 0.0:
            idx = np.nonzero(on)[0]
            order = idx[np.argsort(coord[idx])]
            seglen = np.diff(coord[order])
            np.add.at(robin_diag, order[:-1], 0.5 * S * seglen)
            np.add.at(robin_diag, order[1:], 0.5 * S * seglen)
    E = data.E.value(NX, NY)
    # u_t = Lap u + E u with u_m + S u = 0:  W u' = -(K - S M_b - E W) u
    K = K - sp.diags(robin_diag + E * W)
    free = used & ~dirichlet
    Kf = K[free][:, free].tocsc()
    meta = {
        "nx": int(nx),
        "ny": int(ny),
        "n_free": int(free.sum()),
        "h_min": float(min(np.diff(x).min(), np.diff(y).min())),
        "h_max": float(max(np.diff(x).max(), np.diff(y).max())),
    }
    return Mesh(x, y, NX[free], NY[free], W[free], Kf, meta)


# ----------------------------------------------------------------------------
# time stepping
# ----------------------------------------------------------------------------


class _Stepper:
    def __init__(self, mesh: Mesh, theta: float):
        self.mesh = mesh
        self.theta = theta
        self.Wd = sp.diags(mesh.W).tocsc()
        self._cache: dict[float, Any] = {}

    def lu(self, a: float):
        key = float(f"{a:.14e}")
        if key not in self._cache:
            if len(self._cache) > 4:
                self._cache.pop(next(iter(self._cache)))
            A = (self.Wd + a * self.mesh.K).tocsc()
            self._cache[key] = splu(A, permc_spec="MMD_AT_PLUS_A", options={"SymmetricMode": True})
        return self._cache[key]

    def step(self, u: np.ndarray, dt: float) -> np.ndarray:
        th = self.theta
        rhs = self.mesh.W * u
        if th < 1.0:
            rhs = rhs - (1.0 - th) * dt * (self.mesh.K @ u)
        return self.lu(th * dt).solve(rhs)

    def euler_half_steps(self, u: np.ndarray, dt: float) -> np.ndarray:
        """Two implicit Euler steps of ``dt/2`` with the Crank-Nicolson matrix."""
        lu = self.lu(0.5 * dt)
        for _ in range(2):
            u = lu.solve(self.mesh.W * u)
        return u


def _march(stepper: _Stepper, u0: np.ndarray, t_samples: np.ndarray, dt_max: float, min_steps: int, startup: int, weight: np.ndarray):
    """Advance to each sample time; returns ``beta`` values and the extremes of ``u``."""
    u = u0.copy()
    t_prev = 0.0
    out = []
    lo, hi = float(u.min(initial=0.0)), float(u.max(initial=0.0))
    started = False
    for ts in t_samples:
        span = ts - t_prev
        n = max(min_steps, int(math.ceil(span / dt_max - 1e-9)))
        dt = span / n
        for k in range(n):
            if not started and stepper.theta == 0.5 and k < startup:
                u = stepper.euler_half_steps(u, dt)
            else:
                u = stepper.step(u, dt)
        started = True
        if not np.all(np.isfinite(u)):
            raise IllConditionedSolve("non-finite values during time stepping")
        lo, hi = min(lo, float(u.min(initial=0.0))), max(hi, float(u.max(initial=0.0)))
        out.append(float(weight @ u))
        t_prev = ts
    return np.array(out), lo, hi


def solve_on_mesh(mesh: Mesh, data: DataSpec, grid: GridSpec, t_samples: Sequence[float]) -> np.ndarray:
    """``beta`` at ``t_samples`` on a prepared mesh."""
    ts = np.asarray(t_samples, dtype=float)
    if ts.ndim != 1 or len(ts) == 0 or np.any(ts <= 0) or np.any(np.diff(ts) <= 0):
        raise ValueError("t_samples must be positive and strictly increasing")
    u0 = data.phi.value(mesh.node_x, mesh.node_y)
    weight = mesh.W * data.phi_star.value(mesh.node_x, mesh.node_y)
    stepper = _Stepper(mesh, grid.theta)
    beta, lo, hi = _march(stepper, u0, ts, grid.c_dt * grid.h**2, grid.min_steps, grid.startup, weight)
    mesh.meta["u_min"], mesh.meta["u_max"] = lo, hi
    return beta


def solve(domain: DomainSpec, data: DataSpec, grid: GridSpec, t_samples: Sequence[float]) -> HeatSeries:
    """Heat content series on a rectilinear domain.

    For ``theta = 1`` with ``phi >= 0`` and no sources the discrete maximum
    principle ``0 <= u <= max phi`` is asserted.
    """
    mesh = build_mesh(domain, data, grid)
    beta = solve_on_mesh(mesh, data, grid, t_samples)
    phi0 = data.phi.value(mesh.node_x, mesh.node_y)
    sourceless = data.E.is_zero() and all(a.S == 0.0 for a in domain.arcs)
    if grid.theta == 1.0 and sourceless and np.all(phi0 >= 0):
        bound = float(phi0.max(initial=0.0))
        if mesh.meta["u_min"] < -1e-12 * max(bound, 1.0) or mesh.meta["u_max"] > bound * (1 + 1e-12) + 1e-300:
            raise IllConditionedSolve("discrete maximum principle violated")
        mesh.meta["max_principle"] = True
    meta = {
        "source": "fd",
        "domain_hash": _hash(domain.to_dict()),
        "grid_hash": _hash(grid.to_dict()),
        "data_hash": _hash(data.to_dict()),
        "grid": grid.to_dict(),
        "mesh": dict(mesh.meta),
    }
    return HeatSeries(np.asarray(t_samples, float), beta, meta)


# ----------------------------------------------------------------------------
# oracles and special set-ups
# ----------------------------------------------------------------------------


def _series_1d(L: float, left: str, right: str, t: float) -> tuple[float, float]:
    """1-D heat content of ``1`` on ``[0, L]`` and the truncation bound."""
    tags = "".join(sorted((left.upper(), right.upper())))
    if tags == "NN":
        return L, 0.0
    # number of terms: exponent t (n pi / L)^2 >= 40 beyond N
    N = int(math.ceil(math.sqrt(40.0 / t) * L / math.pi)) + 4
    if tags == "DD":
        n = np.arange(1, 2 * N + 2, 2, dtype=float)
        terms = 8.0 * L / (n * n * math.pi**2) * np.exp(-t * (n * math.pi / L) ** 2)
        nlast = n[-1] + 2
        tail = 8.0 * L / (math.pi**2 * nlast) * math.exp(-t * (nlast * math.pi / L) ** 2)
    elif tags == "DN":
        n = np.arange(0, N + 1, dtype=float) + 0.5
        terms = 2.0 * L / (n * n * math.pi**2) * np.exp(-t * (n * math.pi / L) ** 2)
        nlast = n[-1] + 1
        tail = 2.0 * L / (math.pi**2 * (nlast - 1)) * math.exp(-t * (nlast * math.pi / L) ** 2)
    else:
        raise ValueError(f"edge tags must be D or N, got {left!r}, {right!r}")
    return math.fsum(terms[::-1]), tail


def spectral_oracle_rectangle(a: float, b: float, edge_tags: Sequence[str], t: float) -> float:
    """Exact heat content of ``phi = phi* = 1`` on ``[0, a] x [0, b]``.

    ``edge_tags`` lists the tags of the (bottom, right, top, left) edges.
    The content factorises into 1-D eigenseries.

    Raises
    ------
    ValueError
        If the truncation bound exceeds ``1e-14``.
    """
    if not (a > 0 and b > 0 and t > 0):
        raise ValueError("a, b and t must be positive")
    bottom, right, top, left = (s.upper()[:1] for s in edge_tags)
    bx, ex = _series_1d(a, left, right, t)
    by, ey = _series_1d(b, bottom, top, t)
    bound = ex * b + ey * a + ex * ey
    if bound > 1e-14:
        raise ValueError(f"truncation bound {bound:.3g} too large")
    return bx * by


def rectangle_domain(a: float, b: float, edge_tags: Sequence[str], y0: float = 0.0, name: str = "rectangle") -> DomainSpec:
    """Rectangle ``[0, a] x [y0, y0 + b]`` with (bottom, right, top, left) tags."""
    from .invariants import Arc

    c = [(0.0, y0), (a, y0), (a, y0 + b), (0.0, y0 + b)]
    arcs = []
    for i, tag in enumerate(edge_tags):
        t = tag.upper()[:1]
        arcs.append(Arc("segment", "D" if t == "D" else "R", 0.0, start=c[i], end=c[(i + 1) % 4]))
    return DomainSpec(tuple(arcs), name)


def domain_unit() -> DataSpec:
    """``phi = phi* = 1`` with ``E = 0``."""
    from .invariants import builtin_data

    return builtin_data("unit")


def reflection_pair(a: float, b: float, grid: GridSpec, t_samples: Sequence[float], data: DataSpec | None = None):
    """Half rectangle with a Neumann bottom edge and its all-Dirichlet double.

    The half domain is ``[0, a] x [0, b]`` (bottom Neumann, other edges
    Dirichlet); the double is ``[0, a] x [-b, b]``, all Dirichlet, on the
    mirrored grid.  Data must be even in ``y``; the default is
    ``phi = phi* = 1``.

    Returns
    -------
    (HeatSeries, HeatSeries)
        Series for the half and for the doubled domain.
    """
    data = data or domain_unit()
    half = rectangle_domain(a, b, ("N", "D", "D", "D"), name="half")
    full = rectangle_domain(a, 2 * b, ("D", "D", "D", "D"), y0=-b, name="doubled")
    g = GridSpec(grid.h, ("none",), grid.theta, grid.c_dt, grid.min_steps, grid.startup)
    mh = build_mesh(half, data, g)
    y_full = np.concatenate([-mh.y[::-1], mh.y[1:]])
    mf = build_mesh(full, data, g, x=mh.x, y=y_full)
    if not np.array_equal(-y_full[::-1], y_full):
        raise GridMismatch("doubled grid is not symmetric")
    bh = solve_on_mesh(mh, data, g, t_samples)
    bf = solve_on_mesh(mf, data, g, t_samples)
    meta = {"grid": g.to_dict()}
    return (
        HeatSeries(np.asarray(t_samples, float), bh, dict(meta, source="fd", domain="half")),
        HeatSeries(np.asarray(t_samples, float), bf, dict(meta, source="fd", domain="doubled")),
    )


# ----------------------------------------------------------------------------
# diffusion-matched series
# ----------------------------------------------------------------------------


def _lattice_unit(domain: DomainSpec) -> float:
    """Largest ``q`` such that every vertex and junction coordinate is a multiple of ``q``."""
    coords = []
    for a in domain.arcs:
        coords += [a.start[0], a.start[1], a.end[0], a.end[1]]
    fr = [Fraction(c).limit_denominator(1 << 20) for c in coords]
    for f, c in zip(fr, coords):
        if abs(float(f) - c) > 1e-12:
            raise DomainError("vertex coordinates must be simple rationals for matched grids")
    num = 0
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    for f in fr:
        num = math.gcd(num, int(f * den))
    return num / den if num else 1.0


def matched_t_values(domain: DomainSpec, s: float, t_min: float, t_max: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Times ``t_m = (q / (m s))^2`` inside ``[t_min, t_max]`` and their grid counts ``m``.

    ``q`` is the lattice unit of the domain, so ``h = q/m`` keeps every
    vertex on the grid and ``h / sqrt(t) = s`` exactly.
    """
    q = _lattice_unit(domain)
    m_lo = int(math.ceil(q / (s * math.sqrt(t_max)) - 1e-9))
    m_hi = int(math.floor(q / (s * math.sqrt(t_min)) + 1e-9))
    if m_hi < m_lo:
        raise ValueError("window too narrow for the matched grid")
    ms = np.unique(np.round(np.geomspace(m_lo, m_hi, n)).astype(int))
    ms = ms[::-1]  # increasing t
    return (q / (ms * s)) ** 2, ms


def matched_series(domain: DomainSpec, data: DataSpec, s: float, t_min: float, t_max: float, n: int = 9, steps: int = 64, startup: int = 4) -> HeatSeries:
    """Heat content with the grid tied to the diffusion length.

    Each sample ``t`` is computed on its own uniform grid ``h = s sqrt(t)``
    with ``steps`` Crank-Nicolson steps (``startup`` of them replaced by
    implicit Euler half steps).  The discretisation error then depends on
    ``s`` only, which shifts every fitted coefficient by an amount that
    vanishes as ``s -> 0``; the junction singularity makes that shift first
    order in ``s`` so two values of ``s`` are combined by Richardson
    extrapolation (see :func:`zaremba_heat.fitting.matched_extrapolation`).
    """
    ts, ms = matched_t_values(domain, s, t_min, t_max, n)
    q = _lattice_unit(domain)
    betas = []
    for t, m in zip(ts, ms):
        g = GridSpec(h=q / int(m), grading=("none",), theta=0.5, c_dt=1e9, min_steps=steps, startup=startup)
        mesh = build_mesh(domain, data, g)
        betas.append(solve_on_mesh(mesh, data, g, [t])[0])
    meta = {
        "source": "fd",
        "scheme": "diffusion-matched",
        "s": s,
        "steps": steps,
        "startup": startup,
        "m": [int(m) for m in ms],
        "domain_hash": _hash(domain.to_dict()),
        "data_hash": _hash(data.to_dict()),
    }
    return HeatSeries(ts, np.array(betas), meta)
