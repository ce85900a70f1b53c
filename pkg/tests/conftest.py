from fractions import Fraction

import pytest

from contact_pair_lab import (EndoField, MetricField, corpus_build,
                              validate_contact_pair, validate_metric,
                              validate_structure)


def build_mcp(scenario):
    presentation = scenario.presentation()
    alpha1, alpha2 = scenario.forms()
    pair = validate_contact_pair(presentation, alpha1, alpha2,
                                 *scenario.pair_type)
    structure = validate_structure(pair, scenario.phi_endo(),
                                   metric=scenario.metric_field())
    return validate_metric(structure, scenario.metric_field())


@pytest.fixture(scope="session")
def heis6_scenario():
    return corpus_build("heis6")


@pytest.fixture(scope="session")
def heis6_mcp(heis6_scenario):
    return build_mcp(heis6_scenario)


@pytest.fixture(scope="session")
def darboux_scenario():
    return corpus_build("darboux", (1, 1))


@pytest.fixture(scope="session")
def darboux_mcp(darboux_scenario):
    return build_mcp(darboux_scenario)


def perturbed_phi_structure(scenario):
    """heis6 with the sign of the endomorphism flipped on the second
    horizontal block; still a valid contact pair structure, but the
    corpus metric is no longer associated."""
    presentation = scenario.presentation()
    rows = [[presentation.scalar(text) for text in row]
            for row in scenario.phi]
    rows[3][4] = -rows[3][4]
    rows[4][3] = -rows[4][3]
    return EndoField(presentation, rows)


def twisted_phi_structure(scenario):
    """heis6 with the first horizontal block rotated by a matrix that
    depends on the vertical coordinate; the structure axioms still hold
    but the normality tensor no longer vanishes."""
    presentation = scenario.presentation()
    z = presentation.scalar("z")
    one = presentation.one
    rows = [[presentation.scalar(text) for text in row]
            for row in scenario.phi]
    rows[0][0] = z
    rows[1][0] = one
    rows[0][1] = -(one + z * z)
    rows[1][1] = -z
    return EndoField(presentation, rows)


def scaled_metric(scenario):
    """heis6 Gram matrix with the first horizontal block scaled by 2;
    the result is a Riemannian metric that is not associated."""
    presentation = scenario.presentation()
    values = (Fraction(1), Fraction(1), Fraction(1),
              Fraction(1, 2), Fraction(1, 2), Fraction(1))
    gram = [[Fraction(0)] * 6 for _ in range(6)]
    for a, value in enumerate(values):
        gram[a][a] = value
    return MetricField(presentation, gram)
