import dataclasses
import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import jn_zeros

from zaremba_heat import invariants as inv
from zaremba_heat.numerics import FitBasis, fit_half_powers

SQRT_PI = math.sqrt(math.pi)


def _disk(tags=("D",), name="disk"):
    if len(tags) == 1:
        return inv.DomainSpec((inv.Arc("circular_arc", tags[0], 0.0, center=(0.0, 0.0), radius=1.0, theta0=0.0, theta1=2 * math.pi),), name)
    return inv.DomainSpec(
        (
            inv.Arc("circular_arc", tags[0], 0.0, center=(0.0, 0.0), radius=1.0, theta0=0.0, theta1=math.pi),
            inv.Arc("circular_arc", tags[1], 0.0, center=(0.0, 0.0), radius=1.0, theta0=math.pi, theta1=2 * math.pi),
        ),
        name,
    )


# ----------------------------------------------------------------------------
# constants
# ----------------------------------------------------------------------------


def test_exact_relations_hold():
    report = {r["name"]: r for r in inv.consistency_checks()}
    assert report["inv_sqrt_pi_minus_c3_minus_c5"]["exact"] == "0"
    assert report["c2_minus_half_c4_plus_c6"]["exact"] == "0"
    assert report["warped_product_ledger"]["twelfths"] == [4, 3, -8, 1]
    assert report["c0_from_corner"]["residual"] <= 1e-10
    assert all(r["pass"] for r in report.values())


def test_constants_values():
    c = inv.CONSTANTS
    assert float(c.c0) == -0.5
    assert float(c.c5) == pytest.approx(1 / (2 * SQRT_PI))
    assert float(c.c6) == pytest.approx(-2 / (3 * SQRT_PI))
    assert set(c.unknown) == {"c1", "c2", "c4"}
    json.dumps(c.to_dict())


def test_corrupted_table_detected():
    bad = dataclasses.replace(inv.CONSTANTS, c5=inv.SqrtPiNumber(Fraction(0), Fraction(1, 3)))
    with pytest.raises(inv.ConstantsCorrupted):
        inv.consistency_checks(bad)


# ----------------------------------------------------------------------------
# fields and geometry
# ----------------------------------------------------------------------------

FIELDS = [
    {"type": "const", "value": 2.5},
    {"type": "linear_y", "a": 1.0, "b": -0.7},
    {"type": "gaussian_bump", "center": [0.3, 0.6], "sigma": 0.4, "amplitude": 1.3},
]


@pytest.mark.parametrize("spec", FIELDS)
@given(st.floats(min_value=-1, max_value=1), st.floats(min_value=-1, max_value=1))
@settings(max_examples=20, deadline=None)
def test_field_derivatives_match_finite_differences(spec, x, y):
    f = inv.Field.from_dict(spec)
    h = 1e-5
    gx, gy = f.grad(x, y)
    assert float(gx) == pytest.approx(float((f.value(x + h, y) - f.value(x - h, y)) / (2 * h)), abs=1e-7)
    assert float(gy) == pytest.approx(float((f.value(x, y + h) - f.value(x, y - h)) / (2 * h)), abs=1e-7)
    hxx, hxy, hyy = f.hess(x, y)
    ex, ey = f.grad(x + h, y)
    assert float(hxx) == pytest.approx(float((ex - f.grad(x - h, y)[0]) / (2 * h)), abs=1e-6)
    assert float(hxy) == pytest.approx(float((ey - f.grad(x - h, y)[1]) / (2 * h)), abs=1e-6)
    assert float(f.laplacian(x, y)) == pytest.approx(float(hxx + hyy), abs=1e-12)


def test_field_roundtrip_and_errors():
    for spec in FIELDS:
        f = inv.Field.from_dict(spec)
        assert inv.Field.from_dict(f.to_dict()) == f
    with pytest.raises(inv.DomainError):
        inv.Field.from_dict({"type": "cubic"})
    with pytest.raises(inv.DomainError):
        inv.Field.from_dict({"type": "gaussian_bump", "sigma": -1})


def test_square_geometry(zaremba_square):
    assert zaremba_square.area() == pytest.approx(1.0, abs=1e-13)
    corners = zaremba_square.corners()
    assert len(corners) == 4
    assert all(c.angle == pytest.approx(math.pi / 2) for c in corners)
    js = zaremba_square.junctions()
    assert sorted(j.point for j in js) == [(0.25, 0.0), (0.75, 0.0)]
    for j in js:
        # the tangent points away from the Neumann middle piece
        assert (j.into_dirichlet[0] < 0) == (j.point[0] < 0.5)
        assert j.normal == pytest.approx((0.0, 1.0))


def test_disk_geometry(zaremba_disk):
    assert zaremba_disk.area() == pytest.approx(math.pi, abs=1e-12)
    assert zaremba_disk.corners() == []
    js = zaremba_disk.junctions()
    assert len(js) == 2 and all(j.curvature == pytest.approx(1.0) for j in js)
    assert zaremba_disk.integrate(lambda x, y: x * x) == pytest.approx(math.pi / 4, abs=1e-12)


def test_domain_validation():
    with pytest.raises(inv.DomainError):
        inv.DomainSpec.from_dict({"arcs": [{"type": "segment", "start": [0, 0], "end": [1, 0], "tag": "D"}]})
    with pytest.raises(inv.DomainError):  # clockwise
        inv.DomainSpec(tuple(inv.Arc("segment", "D", start=a, end=b) for a, b in [((0, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 0)), ((1, 0), (0, 0))]))
    with pytest.raises(inv.DomainError):
        inv.Arc.from_dict({"type": "segment", "start": [0, 0], "end": [1, 0], "tag": "X"})
    with pytest.raises(inv.DomainError):
        inv.Arc.from_dict({"type": "segment", "start": [0, 0], "end": [1, 0], "tag": "Dirichlet", "S": 1.0})
    with pytest.raises(inv.DomainError):
        inv.load_data("nonexistent")


def test_curvature_jump_at_junction_rejected():
    # a Dirichlet segment meeting a Robin arc tangentially
    arcs = (
        inv.Arc("segment", "D", start=(-1.0, -1.0), end=(1.0, -1.0)),
        inv.Arc("segment", "D", start=(1.0, -1.0), end=(1.0, 0.0)),
        inv.Arc("circular_arc", "R", center=(0.0, 0.0), radius=1.0, theta0=0.0, theta1=math.pi),
        inv.Arc("segment", "D", start=(-1.0, 0.0), end=(-1.0, -1.0)),
    )
    d = inv.DomainSpec(arcs, "stadium")
    with pytest.raises(inv.DomainError):
        d.junctions()


# ----------------------------------------------------------------------------
# predictions
# ----------------------------------------------------------------------------


def test_zaremba_square_prediction(zaremba_square):
    p = inv.predict(zaremba_square, inv.builtin_data("unit"))
    assert p[0].value == pytest.approx(1.0, abs=1e-13)
    assert p[1].value == pytest.approx(-2 / SQRT_PI * 3.5, rel=1e-13)
    assert p[2].value == pytest.approx(16 / math.pi - 1, rel=1e-12)
    assert p[2].terms["Sigma"] == pytest.approx(-1.0)
    assert p[3].value == pytest.approx(0.0, abs=1e-13)
    assert any("not modelled" in f for f in p[3].flags)


def test_zaremba_disk_prediction(zaremba_disk):
    p = inv.predict(zaremba_disk, inv.builtin_data("unit"))
    assert p[0].value == pytest.approx(math.pi, abs=1e-12)
    assert p[1].value == pytest.approx(-2 * SQRT_PI, rel=1e-12)
    assert p[2].value == pytest.approx(math.pi / 2 - 1, rel=1e-12)
    assert p[3].value is None
    assert p[3].unknown_part == {"c1": pytest.approx(2.0)}
    assert p[3].numeric_part == pytest.approx(SQRT_PI / 6, rel=1e-12)


def test_dirichlet_disk_against_eigenseries():
    """Fit the exact Bessel-zero series of the unit disk."""
    j = jn_zeros(0, 100000)
    ts = np.geomspace(1e-5, 1e-3, 16)
    q = np.array([4 * math.pi * np.sum(np.exp(-(j**2) * t) / j**2) for t in ts])
    fit = fit_half_powers(ts, q, FitBasis(5, (1e-5, 1e-3)))
    p = inv.predict(_disk(), inv.builtin_data("unit"))
    for n in range(4):
        assert fit.coefficients[n] == pytest.approx(p[n].value, rel=1e-3, abs=1e-4)


def test_dirichlet_and_neumann_squares(domains_dir):
    d = inv.predict(inv.load_domain(domains_dir / "dirichlet_square.json"), inv.builtin_data("unit"))
    assert d[2].value == pytest.approx(16 / math.pi, rel=1e-12)
    assert d[2].corner_part == pytest.approx(16 / math.pi, rel=1e-12)
    n = inv.predict(inv.load_domain(domains_dir / "neumann_square.json"), inv.builtin_data("unit"))
    assert n[0].value == pytest.approx(1.0)
    assert all(abs(b.numeric_part) < 1e-14 for b in n.betas[1:])


@pytest.mark.parametrize("fixture", ["zaremba_square", "zaremba_disk"])
def test_swap_symmetry(fixture, request):
    dom = request.getfixturevalue(fixture)
    data = inv.builtin_data("bump")
    a = inv.predict(dom, data)
    b = inv.predict(dom, data.swapped())
    for x, y in zip(a.betas, b.betas):
        assert x.numeric_part == pytest.approx(y.numeric_part, abs=1e-13)
        assert x.unknown_part == pytest.approx(y.unknown_part, abs=1e-13)


def test_mixed_corner_flagged():
    arcs = (
        inv.Arc("segment", "R", start=(0.0, 0.0), end=(1.0, 0.0)),
        inv.Arc("segment", "D", start=(1.0, 0.0), end=(1.0, 1.0)),
        inv.Arc("segment", "D", start=(1.0, 1.0), end=(0.0, 1.0)),
        inv.Arc("segment", "D", start=(0.0, 1.0), end=(0.0, 0.0)),
    )
    p = inv.predict(inv.DomainSpec(arcs, "mixed"), inv.builtin_data("unit"))
    assert p[2].corner_part is None and p[2].value is None
    assert any("mixed corner" in f for f in p[2].flags)


def test_coefficient_set_roundtrip(zaremba_disk):
    p = inv.predict(zaremba_disk, inv.builtin_data("bump"))
    q = inv.CoefficientSet.from_dict(json.loads(p.to_json()))
    assert q.to_dict() == p.to_dict()
