import json
import time

import pytest

from zaremba_heat import identities as ids

REQUIRED = [
    "weber_schafheitlin", "angular_const", "angular_sin", "angular_cos", "sinh_power", "cosh4",
    "I_tau_closed", "sum_k32", "sum_psi_prime", "sum_telescope_zero", "sum_beta_diff",
    "sum_alt_half", "sum_alt_32", "sum_alt_weighted_beta", "kk4_regularized", "hurwitz_limit_chain",
]


def test_registry_has_required_entries():
    assert set(REQUIRED) <= set(ids.REGISTRY)
    assert len(ids.REGISTRY) >= 15


@pytest.mark.parametrize("name", sorted(ids.REGISTRY))
def test_each_identity_passes(name):
    r = ids.verify(name)
    assert r.passed, r


def test_verify_all_under_budget_and_json():
    t0 = time.perf_counter()
    recs = ids.verify_all()
    assert time.perf_counter() - t0 < 30.0
    doc = json.loads(ids.report_json(recs))
    assert doc["n_entries"] == len(ids.REGISTRY)
    assert doc["all_pass"]


def test_unknown_identity():
    with pytest.raises(ids.UnknownIdentity):
        ids.verify("no_such_identity")


def test_kk4_routes_agree():
    for k in (0, 1, 5):
        assert ids.kk4_direct(k) == pytest.approx(ids.kk4_regularized(k), abs=1e-8)
