import pytest

from contact_pair_lab import ORACLE_IDS, corpus_build, numeric_oracle

DERIVATIVE_TOL = 1e-6
ALGEBRAIC_TOL = 1e-9
NONZERO_FLOOR = 1e-3


@pytest.mark.parametrize("name,params", [("darboux", (1, 1)),
                                         ("darboux", (1, 0)),
                                         ("heis6", None)])
@pytest.mark.parametrize("identity_id", ORACLE_IDS)
def test_certified_identities_have_tiny_residuals(name, params, identity_id):
    scenario = corpus_build(name, params)
    residual = numeric_oracle(scenario, identity_id, probe_count=8, seed=1)
    tolerance = ALGEBRAIC_TOL if identity_id in (
        "d_squared", "pair.reeb", "metric.associated",
        "normality.N1") else DERIVATIVE_TOL
    assert residual < tolerance, (name, identity_id, residual)


def test_minimal_subframes_have_tiny_mean_curvature():
    scenario = corpus_build("heis6")
    for sub in ("factor", "heis6-leaf3", "heis6-n4"):
        residual = numeric_oracle(scenario, f"submanifold.{sub}.minimal",
                                  probe_count=8)
        assert residual < DERIVATIVE_TOL, (sub, residual)


def test_nonminimal_subframe_has_large_residual():
    scenario = corpus_build("darboux-J-noninvariant")
    residual = numeric_oracle(
        scenario, "submanifold.darboux-J-noninvariant.minimal",
        probe_count=8)
    assert residual > NONZERO_FLOOR


def test_oracle_detects_a_broken_metric():
    scenario = corpus_build("heis6")
    scenario.metric[0][0] = "1"
    scenario.metric[1][1] = "1"
    scenario._cache.clear()
    residual = numeric_oracle(scenario, "metric.associated", probe_count=4)
    assert residual > NONZERO_FLOOR


def test_oracle_detects_a_twisted_structure():
    scenario = corpus_build("heis6")
    scenario.phi[0][0] = "z"
    scenario.phi[1][0] = "1"
    scenario.phi[0][1] = "-1 - z^2"
    scenario.phi[1][1] = "-z"
    scenario._cache.clear()
    residual = numeric_oracle(scenario, "normality.N1", probe_count=4)
    assert residual > NONZERO_FLOOR


def test_oracle_is_deterministic_for_a_seed():
    scenario = corpus_build("heis6")
    first = numeric_oracle(scenario, "connection.reeb_derivative", seed=5)
    second = numeric_oracle(scenario, "connection.reeb_derivative", seed=5)
    assert first == second


def test_unknown_identity_rejected():
    with pytest.raises(ValueError):
        numeric_oracle(corpus_build("heis6"), "no-such-identity")
