import math

import pytest

import liyau


def test_presets_and_operators():
    g = liyau.graph("preset:two-point")
    assert g.size() == 2
    assert liyau.laplacian(g, [0.0, 1.0], "x1") == 1.0
    assert liyau.gamma(g, [0.0, 1.0], "x1") == pytest.approx(0.5)
    tri = liyau.graph("preset:triangle")
    assert liyau.laplacian(tri, [0.0, -1.0, -2.0], "x*") == pytest.approx(-3.0)
    assert "two-point" in liyau.preset_names()


def test_identities_are_exact():
    g = liyau.graph("preset:Z-ball(1,4)")
    u = liyau.random_positive(g, 2.0, 7)
    rep = liyau.identities(g, u)
    assert rep["max"] <= 1e-12


def test_relaxation_closed_forms():
    phi = liyau.RelaxationFunction(liyau.cd("two_point"))
    for t in (0.01, 0.5, 3.0):
        assert phi(t) == pytest.approx(-math.log(math.tanh(t)), rel=1e-12)
    quad = liyau.RelaxationFunction(liyau.cd("quadratic(c=2)"))
    assert quad.value_numeric(1.0) == pytest.approx(0.5, rel=1e-10)
    assert liyau.cd_verify(liyau.cd("ricci_flat(D=2,mu0=1)"))["pass"]
    assert not liyau.cd_verify(liyau.cd("triangle_raw"))["pass"]


def test_heat_flow_and_gradient_bound():
    g = liyau.graph("preset:two-point")
    traj = liyau.solve_heat(g, [3.0, 0.5], [0.1, 1.0])
    mean, dev = 1.75, 1.25 * math.exp(-2.0)
    assert traj.values[1][0] == pytest.approx(mean + dev, rel=1e-12)
    assert traj.mass_drift() <= 1e-10

    rep = liyau.liyau_min_slack("preset:two-point", "two_point", samples=10, seed=3)
    assert rep["pass"]
    assert rep["min_slack"] >= -1e-8


def test_counterexample_machinery():
    for t in (1.0, 2.0):
        assert liyau.star_family_value(t) == pytest.approx(
            6.0 - math.exp(t) - 5.0 * math.exp(-t), abs=1e-10
        )
    res = liyau.search_violation("preset:star(3)", "x*", 0.0, "two_point", samples=4000, seed=1)
    assert res["violation_found"]
    assert res["best_margin"] < -100.0
    assert liyau.tightness_residual(1, 1.0, 2.0) <= 1e-10


def test_harnack_and_sharpness():
    rep = liyau.harnack_min_slack("preset:path3", "path3", instances=20, seed=5)
    assert rep["pass"]
    assert liyau.sharpness_gap(1e9) <= 1e-4
