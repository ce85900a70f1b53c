import warnings

import pytest

from contact_pair_lab.frames import (ChartDomainWarning, FrameError,
                                     FramePresentation, MetricField,
                                     cartan_class, eval_form,
                                     exterior_derivative, form_power,
                                     is_killing, levi_civita,
                                     nonvanishing_certificate, one_form,
                                     seeded_probe_points, wedge)
from contact_pair_lab.frames import bracket


@pytest.fixture(scope="module")
def heis6(heis6_scenario):
    presentation = heis6_scenario.presentation()
    alpha1, alpha2 = heis6_scenario.forms()
    metric = heis6_scenario.metric_field()
    return presentation, alpha1, alpha2, metric


# -- exterior calculus -------------------------------------------------

def test_d_squared_is_zero(heis6):
    presentation, alpha1, alpha2, _ = heis6
    f = presentation.scalar("x*y + z^2")
    for form in (alpha1, alpha2, alpha1.scale(f)):
        assert exterior_derivative(exterior_derivative(form)).is_zero()


def test_derivative_convention_carries_one_half(heis6):
    presentation, alpha1, _, _ = heis6
    d_alpha = exterior_derivative(alpha1)
    half = presentation.scalar("1/2")
    for a in range(presentation.dim):
        for b in range(presentation.dim):
            x = presentation.frame_field(a)
            y = presentation.frame_field(b)
            direct = half * (x.apply(eval_form(alpha1, y))
                             - y.apply(eval_form(alpha1, x))
                             - eval_form(alpha1, bracket(x, y)))
            assert eval_form(d_alpha, x, y) == direct


def test_wedge_antisymmetry_and_square(heis6):
    presentation, alpha1, alpha2, _ = heis6
    assert (wedge(alpha1, alpha2) + wedge(alpha2, alpha1)).is_zero()
    assert wedge(alpha1, alpha1).is_zero()


def test_wedge_associativity(heis6):
    presentation, alpha1, alpha2, _ = heis6
    d1 = exterior_derivative(alpha1)
    lhs = wedge(wedge(alpha1, alpha2), d1)
    rhs = wedge(alpha1, wedge(alpha2, d1))
    assert (lhs - rhs).is_zero()


def test_eval_form_is_alternating(heis6):
    presentation, alpha1, _, _ = heis6
    d_alpha = exterior_derivative(alpha1)
    x = presentation.frame_field(0) + presentation.frame_field(3)
    assert eval_form(d_alpha, x, x).is_zero()


def test_cartan_class_and_degeneracy(heis6):
    presentation, alpha1, alpha2, _ = heis6
    assert cartan_class(alpha1) == 3
    assert cartan_class(alpha2) == 3
    assert form_power(exterior_derivative(alpha1), 2).is_zero()


# -- Levi-Civita connection --------------------------------------------

def test_connection_is_torsion_free(heis6):
    presentation, _, _, metric = heis6
    conn = levi_civita(metric)
    for a in range(presentation.dim):
        for b in range(a + 1, presentation.dim):
            x = presentation.frame_field(a)
            y = presentation.frame_field(b)
            torsion = conn.nabla(x, y) - conn.nabla(y, x) - bracket(x, y)
            assert torsion.is_zero()


def test_connection_is_metric(heis6):
    presentation, _, _, metric = heis6
    conn = levi_civita(metric)
    for a in range(presentation.dim):
        x = presentation.frame_field(a)
        for b in range(presentation.dim):
            for c in range(b, presentation.dim):
                y = presentation.frame_field(b)
                w = presentation.frame_field(c)
                residual = (x.apply(metric.pair(y, w))
                            - metric.pair(conn.nabla(x, y), w)
                            - metric.pair(y, conn.nabla(x, w)))
                assert residual.is_zero()


def test_first_bianchi_identity(heis6):
    presentation, _, _, metric = heis6
    conn = levi_civita(metric)
    fields = [presentation.frame_field(a) for a in (0, 1, 2, 4)]
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            for k in range(j + 1, len(fields)):
                x, y, w = fields[i], fields[j], fields[k]
                total = (conn.curvature(x, y, w) + conn.curvature(y, w, x)
                         + conn.curvature(w, x, y))
                assert total.is_zero()


def test_curvature_is_tensorial(heis6):
    presentation, _, _, metric = heis6
    conn = levi_civita(metric)
    f = presentation.scalar("x^2 + 3")
    x = presentation.frame_field(0)
    y = presentation.frame_field(1)
    w = presentation.frame_field(4)
    assert conn.curvature(x.scale(f), y, w) \
        == conn.curvature(x, y, w).scale(f)
    assert conn.curvature(x, y, w.scale(f)) \
        == conn.curvature(x, y, w).scale(f)


def test_curvature_antisymmetry(heis6):
    presentation, _, _, metric = heis6
    conn = levi_civita(metric)
    x = presentation.frame_field(0)
    y = presentation.frame_field(2)
    w = presentation.frame_field(3)
    assert (conn.curvature(x, y, w) + conn.curvature(y, x, w)).is_zero()


def test_reeb_field_is_killing(heis6):
    presentation, _, _, metric = heis6
    conn = levi_civita(metric)
    assert is_killing(presentation.frame_field(2), conn)
    assert not is_killing(presentation.frame_field(0), conn)


# -- presentation guards and probes ------------------------------------

def test_singular_frame_rejected():
    with pytest.raises(FrameError):
        FramePresentation(["x", "y"], [["1", "1"], ["1", "1"]],
                          {"x": 0, "y": 0})


def test_frame_singular_at_base_rejected():
    with pytest.raises(FrameError):
        FramePresentation(["x", "y"], [["x", "0"], ["0", "1"]],
                          {"x": 0, "y": 0})


def test_missing_base_coordinate_rejected():
    with pytest.raises(FrameError):
        FramePresentation(["x", "y"], [["1", "0"], ["0", "1"]], {"x": 0})


def test_probe_points_are_deterministic_and_regular(heis6):
    presentation, _, _, _ = heis6
    first = seeded_probe_points(presentation, seed=3)
    second = seeded_probe_points(presentation, seed=3)
    assert first == second
    assert all(presentation.is_regular_at(p) for p in first)
    assert seeded_probe_points(presentation, seed=4) != first


def test_nonvanishing_certificate(heis6):
    presentation, _, _, _ = heis6
    points = seeded_probe_points(presentation)
    constant = presentation.scalar("2")
    positive = presentation.scalar("x^2 + 1")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert nonvanishing_certificate("const", [constant], points)
        assert nonvanishing_certificate("positive", [positive], points)
    # a value engineered to vanish at the first probe point
    x0 = points[0]["x"]
    killed = presentation.scalar("x") - presentation.scalar(x0)
    with pytest.warns(ChartDomainWarning):
        assert not nonvanishing_certificate("killed", [killed], points)
