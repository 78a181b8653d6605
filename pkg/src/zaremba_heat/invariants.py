"""Closed-form heat-content coefficients for planar Zaremba problems.

For a planar domain ``M`` whose boundary splits into a Dirichlet part ``C_D``
and a Robin part ``C_R`` meeting smoothly at the finite junction set
``Sigma``, the coefficients of ``beta(t) ~ sum_n beta_n t^{n/2}`` are

* ``beta_0 = int_M phi phi*``
* ``beta_1 = -2/sqrt(pi) int_{C_D} phi phi*``
* ``beta_2 = int_M (Lap phi + E phi) phi* + int_{C_R} (phi_m + S phi) phi*
  + int_{C_D} (L/2 phi phi* - phi phi*_m) + c_0 sum_Sigma phi phi*``
* ``beta_3 = 4/(3 sqrt(pi)) int_{C_R} (phi_m + S phi)(phi*_m + S phi*)
  - 2/sqrt(pi) int_{C_D} {2/3 phi_mm phi* + 2/3 phi phi*_mm - phi_a phi*_a
  + E phi phi* - 2/3 L (phi phi*)_m - L^2/12 phi phi*}
  + sum_Sigma {(c_1 L + c_4 S) phi phi* + c_5 (phi phi*)_t + c_6 (phi phi*)_m}``

with the operator ``D = -(Lap + E)``, ``m`` the inward unit normal, ``a`` the
arclength direction, ``L`` the geodesic curvature (``+1`` on the unit circle)
and ``t`` at a junction the boundary direction pointing into ``C_D``.  In two
dimensions ``L_aa L_bb = L_ab L_ab = L^2``, so the curvature bracket reduces
to ``(1/12 - 1/6) L^2 = -L^2/12``.

Dirichlet corners of interior angle ``gamma`` add ``c(gamma) phi phi*`` to
``beta_2`` (see :mod:`zaremba_heat.corner`).

The constants ``c_1``, ``c_2`` and ``c_4`` are not known individually; they
are carried as formal symbols and never replaced by numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .corner import corner_c, zaremba_sigma_constant
from .numerics import gauss_legendre

__all__ = [
    "SqrtPiNumber",
    "ConstantsTable",
    "CONSTANTS",
    "ConstantsCorrupted",
    "DomainError",
    "Field",
    "DataSpec",
    "Arc",
    "Corner",
    "Junction",
    "DomainSpec",
    "Coefficient",
    "CoefficientSet",
    "predict",
    "consistency_checks",
    "load_domain",
    "load_data",
    "builtin_data",
]

UNKNOWN_SYMBOLS = ("c1", "c2", "c4")
_JOIN_TOL = 1e-10
_SMOOTH_TOL = 1e-9


class ConstantsCorrupted(AssertionError):
    """A consistency relation of the constants table failed."""


class DomainError(ValueError):
    """Malformed domain or data description."""


# ----------------------------------------------------------------------------
# exact constants
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SqrtPiNumber:
    """Exact number ``rational + coeff / sqrt(pi)`` with rational parts."""

    rational: Fraction = Fraction(0)
    coeff: Fraction = Fraction(0)

    def __add__(self, other: "SqrtPiNumber") -> "SqrtPiNumber":
        return SqrtPiNumber(self.rational + other.rational, self.coeff + other.coeff)

    def __neg__(self) -> "SqrtPiNumber":
        return SqrtPiNumber(-self.rational, -self.coeff)

    def __sub__(self, other: "SqrtPiNumber") -> "SqrtPiNumber":
        return self + (-other)

    def scale(self, q: Fraction) -> "SqrtPiNumber":
        return SqrtPiNumber(self.rational * q, self.coeff * q)

    def is_zero(self) -> bool:
        return self.rational == 0 and self.coeff == 0

    def __float__(self) -> float:
        return float(self.rational) + float(self.coeff) / math.sqrt(math.pi)

    def __str__(self) -> str:
        parts = []
        if self.rational != 0:
            parts.append(str(self.rational))
        if self.coeff != 0:
            parts.append(f"({self.coeff})/sqrt(pi)")
        return " + ".join(parts) if parts else "0"


def _inv_sqrt_pi(q) -> SqrtPiNumber:
    return SqrtPiNumber(Fraction(0), Fraction(q))


@dataclass(frozen=True)
class ConstantsTable:
    """Universal junction constants.

    ``c1``, ``c2`` and ``c4`` are unknown; only the combination
    ``c2 - c4/2`` is determined.
    """

    c0: SqrtPiNumber = SqrtPiNumber(Fraction(-1, 2))
    c3: SqrtPiNumber = _inv_sqrt_pi(Fraction(1, 2))
    c5: SqrtPiNumber = _inv_sqrt_pi(Fraction(1, 2))
    c6: SqrtPiNumber = _inv_sqrt_pi(Fraction(-2, 3))
    c2_minus_half_c4: SqrtPiNumber = _inv_sqrt_pi(Fraction(2, 3))
    unknown: tuple[str, ...] = UNKNOWN_SYMBOLS

    def to_dict(self) -> dict[str, Any]:
        out = {k: {"exact": str(getattr(self, k)), "value": float(getattr(self, k))} for k in ("c0", "c3", "c5", "c6", "c2_minus_half_c4")}
        out["unknown"] = list(self.unknown)
        return out


CONSTANTS = ConstantsTable()


def consistency_checks(table: ConstantsTable = CONSTANTS) -> list[dict[str, Any]]:
    """Exact relations between the constants.

    Checks ``1/sqrt(pi) - c3 - c5 = 0``, ``(c2 - c4/2) + c6 = 0``, the
    product-manifold ledger ``4/12 + 3/12 - 8/12 + 1/12 = 0`` of the
    ``C_D`` part of ``beta_3`` and ``c0 = c(2 pi)/2`` against the corner
    integral.

    Raises
    ------
    ConstantsCorrupted
        If any relation fails.
    """
    report = []
    r1 = _inv_sqrt_pi(1) - table.c3 - table.c5
    report.append({"name": "inv_sqrt_pi_minus_c3_minus_c5", "exact": str(r1), "pass": r1.is_zero()})
    r2 = table.c2_minus_half_c4 + table.c6
    report.append({"name": "c2_minus_half_c4_plus_c6", "exact": str(r2), "pass": r2.is_zero()})
    terms = [Fraction(2, 3) * Fraction(1, 2), Fraction(1, 4), Fraction(-2, 3), Fraction(1, 12) - Fraction(1, 6) + Fraction(1, 6)]
    ledger = sum(terms, Fraction(0))
    report.append(
        {
            "name": "warped_product_ledger",
            "terms": [str(t) for t in terms],
            "twelfths": [int(t * 12) for t in terms],
            "exact": str(ledger),
            "pass": ledger == 0,
        }
    )
    c0_num = zaremba_sigma_constant()
    ok = abs(c0_num - float(table.c0)) <= 1e-10
    report.append({"name": "c0_from_corner", "value": c0_num, "residual": abs(c0_num - float(table.c0)), "pass": ok})
    failed = [r["name"] for r in report if not r["pass"]]
    if failed:
        raise ConstantsCorrupted(f"constants table relations failed: {failed}")
    return report


# ----------------------------------------------------------------------------
# data fields
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """Smooth scalar field with analytic first and second derivatives.

    Kinds: ``const`` (``value``), ``linear_y`` (``a + b y``) and
    ``gaussian_bump`` (``amplitude exp(-|x - center|^2 / (2 sigma^2))``).
    """

    kind: str
    params: tuple[tuple[str, Any], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[str, Any] | float | int) -> "Field":
        if isinstance(d, (int, float)):
            return cls("const", (("value", float(d)),))
        if not isinstance(d, dict) or "type" not in d:
            raise DomainError(f"field must be a number or an object with 'type': {d!r}")
        kind = d["type"]
        if kind == "const":
            p = {"value": float(d.get("value", 1.0))}
        elif kind == "linear_y":
            p = {"a": float(d.get("a", 0.0)), "b": float(d.get("b", 1.0))}
        elif kind == "gaussian_bump":
            c = d.get("center", [0.0, 0.0])
            if len(c) != 2:
                raise DomainError("gaussian_bump center must have two coordinates")
            sigma = float(d.get("sigma", 1.0))
            if not sigma > 0:
                raise DomainError("gaussian_bump sigma must be positive")
            p = {"center": (float(c[0]), float(c[1])), "sigma": sigma, "amplitude": float(d.get("amplitude", 1.0))}
        else:
            raise DomainError(f"unknown field type {kind!r}")
        return cls(kind, tuple(sorted(p.items())))

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"type": self.kind}
        for k, v in self.params:
            d[k] = list(v) if isinstance(v, tuple) else v
        return d

    @property
    def p(self) -> dict[str, Any]:
        return dict(self.params)

    def value(self, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        p = self.p
        if self.kind == "const":
            return np.full(x.shape, p["value"])
        if self.kind == "linear_y":
            return p["a"] + p["b"] * y
        cx, cy = p["center"]
        s2 = p["sigma"] ** 2
        return p["amplitude"] * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2 * s2))

    def grad(self, x, y) -> tuple[np.ndarray, np.ndarray]:
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        p = self.p
        if self.kind == "const":
            return np.zeros(x.shape), np.zeros(x.shape)
        if self.kind == "linear_y":
            return np.zeros(x.shape), np.full(x.shape, p["b"])
        cx, cy = p["center"]
        s2 = p["sigma"] ** 2
        f = self.value(x, y)
        return -(x - cx) / s2 * f, -(y - cy) / s2 * f

    def hess(self, x, y) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(f_xx, f_xy, f_yy)``."""
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        if self.kind in ("const", "linear_y"):
            z = np.zeros(x.shape)
            return z, z.copy(), z.copy()
        p = self.p
        cx, cy = p["center"]
        s2 = p["sigma"] ** 2
        f = self.value(x, y)
        dx, dy = x - cx, y - cy
        return (dx * dx / s2 - 1) / s2 * f, dx * dy / (s2 * s2) * f, (dy * dy / s2 - 1) / s2 * f

    def laplacian(self, x, y) -> np.ndarray:
        hxx, _, hyy = self.hess(x, y)
        return hxx + hyy

    def is_zero(self) -> bool:
        p = self.p
        return (self.kind == "const" and p["value"] == 0.0) or (self.kind == "gaussian_bump" and p["amplitude"] == 0.0) or (
            self.kind == "linear_y" and p["a"] == 0.0 and p["b"] == 0.0
        )


@dataclass(frozen=True)
class DataSpec:
    """Initial temperature ``phi``, specific heat ``phi*`` and potential ``E``."""

    phi: Field
    phi_star: Field
    E: Field = Field("const", (("value", 0.0),))
    name: str = "custom"

    @classmethod
    def from_dict(cls, d: dict[str, Any], name: str = "custom") -> "DataSpec":
        try:
            return cls(Field.from_dict(d["phi"]), Field.from_dict(d["phi_star"]), Field.from_dict(d.get("E", 0.0)), d.get("name", name))
        except KeyError as exc:
            raise DomainError(f"data block missing {exc}") from None

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "phi": self.phi.to_dict(), "phi_star": self.phi_star.to_dict(), "E": self.E.to_dict()}

    def swapped(self) -> "DataSpec":
        return DataSpec(self.phi_star, self.phi, self.E, self.name + ":swapped")


_BUILTIN_DATA = {
    "unit": {"phi": {"type": "const", "value": 1.0}, "phi_star": {"type": "const", "value": 1.0}},
    "bump": {
        "phi": {"type": "gaussian_bump", "center": [0.5, 0.3], "sigma": 0.3},
        "phi_star": {"type": "linear_y", "a": 1.0, "b": 0.5},
    },
}


def builtin_data(name: str) -> DataSpec:
    """Named data sets: ``unit`` (``phi = phi* = 1``) and ``bump``."""
    if name not in _BUILTIN_DATA:
        raise DomainError(f"unknown data set {name!r}; choose from {sorted(_BUILTIN_DATA)}")
    return DataSpec.from_dict(_BUILTIN_DATA[name], name)


# ----------------------------------------------------------------------------
# geometry
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    """Boundary arc traversed with the domain on its left.

    ``kind`` is ``segment`` (``start`` to ``end``) or ``circular_arc``
    (``center``, ``radius``, polar angles ``theta0 -> theta1``; counterclockwise
    when ``theta1 > theta0``).  ``tag`` is ``"D"`` or ``"R"`` with Robin
    coefficient ``S`` (``S = 0`` is Neumann).
    """

    kind: str
    tag: str
    S: float = 0.0
    start: tuple[float, float] = (0.0, 0.0)
    end: tuple[float, float] = (0.0, 0.0)
    center: tuple[float, float] = (0.0, 0.0)
    radius: float = 1.0
    theta0: float = 0.0
    theta1: float = 0.0

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Arc":
        tag = str(d.get("tag", "")).upper()[:1]
        if tag not in ("D", "R", "N"):
            raise DomainError(f"arc tag must be Dirichlet or Robin, got {d.get('tag')!r}")
        if tag == "N":
            tag = "R"
        S = float(d.get("S", 0.0))
        if tag == "D" and S != 0.0:
            raise DomainError("Dirichlet arcs carry no Robin coefficient")
        kind = d.get("type")
        if kind == "segment":
            a, b = d["start"], d["end"]
            arc = cls("segment", tag, S, start=(float(a[0]), float(a[1])), end=(float(b[0]), float(b[1])))
            if math.dist(arc.start, arc.end) == 0.0:
                raise DomainError("degenerate segment")
            return arc
        if kind == "circular_arc":
            c = d["center"]
            r = float(d["radius"])
            if not r > 0:
                raise DomainError("arc radius must be positive")
            t0, t1 = float(d["theta0"]), float(d["theta1"])
            if t0 == t1:
                raise DomainError("degenerate circular arc")
            return cls("circular_arc", tag, S, center=(float(c[0]), float(c[1])), radius=r, theta0=t0, theta1=t1)
        raise DomainError(f"unknown arc type {kind!r}")

    def to_dict(self) -> dict[str, Any]:
        tag = "Dirichlet" if self.tag == "D" else "Robin"
        if self.kind == "segment":
            return {"type": "segment", "start": list(self.start), "end": list(self.end), "tag": tag, "S": self.S}
        return {"type": "circular_arc", "center": list(self.center), "radius": self.radius, "theta0": self.theta0, "theta1": self.theta1, "tag": tag, "S": self.S}

    @property
    def length(self) -> float:
        if self.kind == "segment":
            return math.dist(self.start, self.end)
        return self.radius * abs(self.theta1 - self.theta0)

    @property
    def curvature(self) -> float:
        """Geodesic curvature ``L`` with respect to the inward normal."""
        if self.kind == "segment":
            return 0.0
        return (1.0 if self.theta1 > self.theta0 else -1.0) / self.radius

    def point(self, s) -> tuple[np.ndarray, np.ndarray]:
        s = np.asarray(s, float)
        if self.kind == "segment":
            return self.start[0] + s * (self.end[0] - self.start[0]), self.start[1] + s * (self.end[1] - self.start[1])
        th = self.theta0 + s * (self.theta1 - self.theta0)
        return self.center[0] + self.radius * np.cos(th), self.center[1] + self.radius * np.sin(th)

    def tangent(self, s) -> tuple[np.ndarray, np.ndarray]:
        """Unit tangent in the direction of traversal."""
        s = np.asarray(s, float)
        if self.kind == "segment":
            dx, dy = self.end[0] - self.start[0], self.end[1] - self.start[1]
            n = math.hypot(dx, dy)
            return np.full(s.shape, dx / n), np.full(s.shape, dy / n)
        th = self.theta0 + s * (self.theta1 - self.theta0)
        sg = 1.0 if self.theta1 > self.theta0 else -1.0
        return -sg * np.sin(th), sg * np.cos(th)

    def normal(self, s) -> tuple[np.ndarray, np.ndarray]:
        """Inward unit normal (tangent rotated by +90 degrees)."""
        tx, ty = self.tangent(s)
        return -ty, tx

    def rule(self, n: int = 48, panels: int = 4) -> tuple[np.ndarray, np.ndarray]:
        """Parameter nodes and arclength weights."""
        xs, ws = [], []
        for i in range(panels):
            x, w = gauss_legendre(n, i / panels, (i + 1) / panels)
            xs.append(x)
            ws.append(w)
        return np.concatenate(xs), np.concatenate(ws) * self.length


@dataclass(frozen=True)
class Corner:
    """Non-smooth boundary vertex."""

    point: tuple[float, float]
    angle: float
    tags: tuple[str, str]


@dataclass(frozen=True)
class Junction:
    """Smooth meeting point of a Dirichlet and a Robin arc.

    ``into_dirichlet`` is the unit boundary tangent pointing into ``C_D``;
    ``curvature`` and ``S`` are read off the adjacent arcs.
    """

    point: tuple[float, float]
    into_dirichlet: tuple[float, float]
    normal: tuple[float, float]
    curvature: float
    S: float


@dataclass(frozen=True)
class DomainSpec:
    """Planar domain bounded by closed loops of tagged arcs."""

    arcs: tuple[Arc, ...]
    name: str = "domain"

    def __post_init__(self) -> None:
        if not self.arcs:
            raise DomainError("domain needs at least one arc")
        self.loops()  # validates closure
        if self.area() <= 0:
            raise DomainError("boundary must be oriented with the domain on the left (positive area)")

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "DomainSpec":
        if "arcs" not in d or not isinstance(d["arcs"], list):
            raise DomainError("domain JSON needs an 'arcs' list")
        return cls(tuple(Arc.from_dict(a) for a in d["arcs"]), d.get("name", "domain"))

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "arcs": [a.to_dict() for a in self.arcs]}

    def loops(self) -> list[list[int]]:
        """Indices of arcs grouped into closed loops."""
        loops, cur = [], []
        loop_start = None
        for i, arc in enumerate(self.arcs):
            p0 = tuple(float(v) for v in arc.point(0.0))
            if not cur:
                loop_start = p0
            else:
                prev = tuple(float(v) for v in self.arcs[cur[-1]].point(1.0))
                if math.dist(prev, p0) > _JOIN_TOL:
                    raise DomainError(f"arc {i} does not start where arc {cur[-1]} ends")
            cur.append(i)
            p1 = tuple(float(v) for v in arc.point(1.0))
            if math.dist(p1, loop_start) <= _JOIN_TOL:
                loops.append(cur)
                cur = []
        if cur:
            raise DomainError("boundary arcs do not close into a loop")
        return loops

    def _vertices(self):
        for loop in self.loops():
            for j, i in enumerate(loop):
                a, b = self.arcs[i], self.arcs[loop[(j + 1) % len(loop)]]
                yield a, b

    def corners(self) -> list[Corner]:
        out = []
        for a, b in self._vertices():
            t1 = np.array([float(v) for v in a.tangent(1.0)])
            t2 = np.array([float(v) for v in b.tangent(0.0)])
            turn = math.atan2(t1[0] * t2[1] - t1[1] * t2[0], float(t1 @ t2))
            if abs(turn) > _SMOOTH_TOL:
                p = tuple(float(v) for v in b.point(0.0))
                out.append(Corner(p, math.pi - turn, (a.tag, b.tag)))
        return out

    def junctions(self) -> list[Junction]:
        out = []
        for a, b in self._vertices():
            if a.tag == b.tag:
                continue
            t1 = np.array([float(v) for v in a.tangent(1.0)])
            t2 = np.array([float(v) for v in b.tangent(0.0)])
            turn = math.atan2(t1[0] * t2[1] - t1[1] * t2[0], float(t1 @ t2))
            if abs(turn) > _SMOOTH_TOL:
                continue  # a mixed corner, not a junction
            p = tuple(float(v) for v in b.point(0.0))
            d_arc, r_arc = (b, a) if b.tag == "D" else (a, b)
            direction = tuple(t2) if b.tag == "D" else tuple(-t1)
            n = tuple(float(v) for v in b.normal(0.0))
            if abs(a.curvature - b.curvature) > 1e-12:
                raise DomainError(f"curvature jumps at the junction {p}; Sigma must lie inside a smooth boundary piece")
            out.append(Junction(p, (float(direction[0]), float(direction[1])), n, d_arc.curvature, r_arc.S))
        return out

    def area(self) -> float:
        return float(self.integrate(lambda x, y: np.ones_like(x)))

    def integrate(self, f: Callable[[np.ndarray, np.ndarray], np.ndarray], n_inner: int = 32, inner_panels: int = 4) -> float:
        """``int_M f`` via Green's theorem ``oint F dy`` with ``F = int_{x0}^x f``."""
        x0 = min(self._bbox()[0], 0.0)
        xi, wi = np.polynomial.legendre.leggauss(n_inner)
        total = 0.0
        for arc in self.arcs:
            s, w = arc.rule()
            x, y = arc.point(s)
            _, ty = arc.tangent(s)
            F = np.zeros_like(x)
            for k in range(inner_panels):
                lo = x0 + (x - x0) * k / inner_panels
                hi = x0 + (x - x0) * (k + 1) / inner_panels
                xx = 0.5 * (hi - lo)[:, None] * (xi[None, :] + 1) + lo[:, None]
                F += 0.5 * (hi - lo) * np.sum(wi[None, :] * f(xx, np.broadcast_to(y[:, None], xx.shape)), axis=1)
            total += float(np.sum(F * ty * w))
        return total

    def _bbox(self) -> tuple[float, float, float, float]:
        pts = np.concatenate([np.stack(a.point(np.linspace(0, 1, 65))) for a in self.arcs], axis=1)
        return float(pts[0].min()), float(pts[1].min()), float(pts[0].max()), float(pts[1].max())

    def is_rectilinear(self) -> bool:
        for a in self.arcs:
            if a.kind != "segment":
                return False
            if a.start[0] != a.end[0] and a.start[1] != a.end[1]:
                return False
        return True


def load_domain(path: str | Path) -> DomainSpec:
    """Read a :class:`DomainSpec` from JSON."""
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})") from None
    return DomainSpec.from_dict(d)


def load_data(spec: str, domain_json: dict[str, Any] | None = None) -> DataSpec:
    """Resolve ``spec`` as a built-in data name, a JSON file, or the domain's ``data`` block."""
    if spec in _BUILTIN_DATA:
        return builtin_data(spec)
    p = Path(spec)
    if p.exists():
        return DataSpec.from_dict(json.loads(p.read_text()), p.stem)
    if domain_json is not None and "data" in domain_json and spec in ("domain", "default"):
        return DataSpec.from_dict(domain_json["data"], "domain")
    raise DomainError(f"unknown data {spec!r}")


# ----------------------------------------------------------------------------
# coefficients
# ----------------------------------------------------------------------------


@dataclass
class Coefficient:
    """One coefficient ``beta_n`` split by origin.

    ``numeric_part`` collects all terms with known constants; ``unknown_part``
    maps each undetermined constant to its geometric multiplier;
    ``corner_part`` is ``None`` when a corner could not be evaluated.
    """

    numeric_part: float = 0.0
    unknown_part: dict[str, float] = field(default_factory=dict)
    corner_part: float | None = 0.0
    terms: dict[str, float] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    @property
    def has_unknown(self) -> bool:
        return any(v != 0.0 for v in self.unknown_part.values())

    @property
    def value(self) -> float | None:
        """Known total, or ``None`` when unknown constants or flagged corners enter."""
        if self.has_unknown or self.corner_part is None:
            return None
        return self.numeric_part + self.corner_part

    def to_dict(self) -> dict[str, Any]:
        return {
            "numeric_part": self.numeric_part,
            "unknown_part": dict(sorted(self.unknown_part.items())),
            "corner_part": self.corner_part,
            "terms": dict(self.terms),
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Coefficient":
        return cls(float(d["numeric_part"]), {k: float(v) for k, v in d["unknown_part"].items()}, d["corner_part"], dict(d.get("terms", {})), list(d.get("flags", [])))


@dataclass
class CoefficientSet:
    """Predicted ``beta_0 .. beta_3``."""

    betas: list[Coefficient]
    domain: str = ""
    data: str = ""

    def __getitem__(self, n: int) -> Coefficient:
        return self.betas[n]

    def to_dict(self) -> dict[str, Any]:
        return {"domain": self.domain, "data": self.data, "betas": [b.to_dict() for b in self.betas], "constants": CONSTANTS.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CoefficientSet":
        return cls([Coefficient.from_dict(b) for b in d["betas"]], d.get("domain", ""), d.get("data", ""))


def _arc_integral(domain: DomainSpec, tag: str, g: Callable[[Arc, np.ndarray], np.ndarray]) -> float:
    total = 0.0
    for arc in domain.arcs:
        if arc.tag != tag:
            continue
        s, w = arc.rule()
        total += float(np.sum(g(arc, s) * w))
    return total


def predict(domain: DomainSpec, data: DataSpec) -> CoefficientSet:
    """Closed-form ``beta_0 .. beta_3`` for ``domain`` and ``data``.

    Unknown constants enter ``unknown_part`` only when their geometric
    multiplier is nonzero.  Dirichlet corners add ``c(gamma) phi phi*`` to
    ``beta_2``; mixed Dirichlet/Robin corners and Robin/Robin corners are
    flagged, and corner corrections to ``beta_3`` are not modelled.
    """
    phi, ps, E = data.phi, data.phi_star, data.E
    sp = 1.0 / math.sqrt(math.pi)

    def pp(x, y):
        return phi.value(x, y) * ps.value(x, y)

    def local(arc: Arc, s):
        x, y = arc.point(s)
        nx, ny = arc.normal(s)
        tx, ty = arc.tangent(s)
        f, g = phi.value(x, y), ps.value(x, y)
        fx, fy = phi.grad(x, y)
        gx, gy = ps.grad(x, y)
        fxx, fxy, fyy = phi.hess(x, y)
        gxx, gxy, gyy = ps.hess(x, y)
        return dict(
            f=f,
            g=g,
            fm=fx * nx + fy * ny,
            gm=gx * nx + gy * ny,
            fa=fx * tx + fy * ty,
            ga=gx * tx + gy * ty,
            fmm=fxx * nx * nx + 2 * fxy * nx * ny + fyy * ny * ny,
            gmm=gxx * nx * nx + 2 * gxy * nx * ny + gyy * ny * ny,
            E=E.value(x, y),
            L=arc.curvature,
            S=arc.S,
        )

    # beta_0
    b0 = Coefficient(domain.integrate(pp))
    b0.terms["interior"] = b0.numeric_part

    # beta_1
    cd = _arc_integral(domain, "D", lambda a, s: pp(*a.point(s)))
    b1 = Coefficient(-2.0 * sp * cd, terms={"C_D": -2.0 * sp * cd})

    # beta_2
    interior2 = domain.integrate(lambda x, y: (phi.laplacian(x, y) + E.value(x, y) * phi.value(x, y)) * ps.value(x, y))

    def r2(a, s):
        q = local(a, s)
        return (q["fm"] + q["S"] * q["f"]) * q["g"]

    def d2(a, s):
        q = local(a, s)
        return 0.5 * q["L"] * q["f"] * q["g"] - q["f"] * q["gm"]

    cr2 = _arc_integral(domain, "R", r2)
    cd2 = _arc_integral(domain, "D", d2)
    junctions = domain.junctions()
    sig2 = float(CONSTANTS.c0) * sum(float(pp(*j.point)) for j in junctions)
    b2 = Coefficient(interior2 + cr2 + cd2 + sig2, terms={"interior": interior2, "C_R": cr2, "C_D": cd2, "Sigma": sig2})
    corner_sum = 0.0
    for c in domain.corners():
        val = float(pp(*c.point))
        if c.tags == ("D", "D"):
            corner_sum += corner_c(c.angle).value * val
        elif "D" in c.tags:
            b2.flags.append(f"mixed corner at {c.point} (angle {c.angle:.6g}) not supported")
            b2.corner_part = None
        else:
            b2.flags.append(f"Robin corner at {c.point} counted as zero")
    if b2.corner_part is not None:
        b2.corner_part = corner_sum
        b2.terms["corners"] = corner_sum

    # beta_3
    def r3(a, s):
        q = local(a, s)
        return (q["fm"] + q["S"] * q["f"]) * (q["gm"] + q["S"] * q["g"])

    def d3(a, s):
        q = local(a, s)
        fg_m = q["fm"] * q["g"] + q["f"] * q["gm"]
        return (
            2.0 / 3.0 * q["fmm"] * q["g"]
            + 2.0 / 3.0 * q["f"] * q["gmm"]
            - q["fa"] * q["ga"]
            + q["E"] * q["f"] * q["g"]
            - 2.0 / 3.0 * q["L"] * fg_m
            + (1.0 / 12.0 - 1.0 / 6.0) * q["L"] ** 2 * q["f"] * q["g"]
        )

    cr3 = 4.0 / 3.0 * sp * _arc_integral(domain, "R", r3)
    cd3 = -2.0 * sp * _arc_integral(domain, "D", d3)
    sig3 = 0.0
    unknown = {k: 0.0 for k in UNKNOWN_SYMBOLS}
    for j in junctions:
        x, y = j.point
        f, g = float(phi.value(x, y)), float(ps.value(x, y))
        fx, fy = (float(v) for v in phi.grad(x, y))
        gx, gy = (float(v) for v in ps.grad(x, y))
        d_t = (fx * j.into_dirichlet[0] + fy * j.into_dirichlet[1]) * g + f * (gx * j.into_dirichlet[0] + gy * j.into_dirichlet[1])
        d_m = (fx * j.normal[0] + fy * j.normal[1]) * g + f * (gx * j.normal[0] + gy * j.normal[1])
        sig3 += float(CONSTANTS.c5) * d_t + float(CONSTANTS.c6) * d_m
        unknown["c1"] += j.curvature * f * g
        unknown["c4"] += j.S * f * g
    b3 = Coefficient(cr3 + cd3 + sig3, {k: v for k, v in unknown.items() if v != 0.0}, 0.0, {"C_R": cr3, "C_D": cd3, "Sigma": sig3})
    if b3.has_unknown:
        b3.flags.append("unknown constants enter: " + ", ".join(sorted(b3.unknown_part)))
    if domain.corners():
        b3.flags.append("corner corrections at order t^(3/2) not modelled")
    return CoefficientSet([b0, b1, b2, b3], domain.name, data.name)
