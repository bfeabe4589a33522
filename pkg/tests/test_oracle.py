import numpy as np
import pytest

from balcut.errors import SizeGuardError
from balcut.functionals import objective_T
from balcut.graph import Graph, MuScheme, balanced_cut_value, theta_cut_value
from balcut.instances import complete_graph, cycle_graph, petersen_graph, square_graph
from balcut.oracle import brute_force_h, brute_force_h_theta, brute_force_inner, theta_curve

from conftest import small_graphs


def test_h_examples():
    assert brute_force_h(petersen_graph()).value == pytest.approx(1 / 3, abs=1e-15)
    assert brute_force_h(square_graph()).value == 0.5
    assert brute_force_h(complete_graph(2, MuScheme.UNIT)).value == 1.0


def test_h_theta_examples():
    g = petersen_graph()
    assert brute_force_h_theta(g, 0.5).value == pytest.approx(0.3, abs=1e-15)
    assert brute_force_h_theta(g, 0.0).value == 0.0
    assert brute_force_h_theta(g, 1.0).value == pytest.approx(1 / 3, abs=1e-15)


def test_curve_examples():
    assert [v for _, v in theta_curve(petersen_graph(), [0, 0.5, 1])] == pytest.approx([0, 0.3, 1 / 3])
    assert theta_curve(complete_graph(10), [1.0])[0][1] == pytest.approx(25 / 45)
    assert theta_curve(cycle_graph(10), [1.0])[0][1] == pytest.approx(1 / 5)


def test_witness_values_and_consistency():
    for g in small_graphs(12, 60, n_hi=9):
        r = brute_force_h(g)
        assert r.value == balanced_cut_value(g, r.witness)
        assert r.enumerated == 2 ** (g.n - 1) - 1
        t = brute_force_h_theta(g, 1.0)
        assert t.value == pytest.approx(r.value, rel=1e-12)
        for th in (0.25, 0.7):
            t = brute_force_h_theta(g, th)
            assert t.value == pytest.approx(theta_cut_value(g, t.witness, th), rel=1e-12)
            assert t.value == pytest.approx(objective_T(g, t.witness.indicator(), th), rel=1e-9)
        curve = theta_curve(g, np.linspace(0, 1, 21))
        vals = [v for _, v in curve]
        assert vals[0] == 0.0 and vals[-1] == pytest.approx(r.value, rel=1e-12)
        assert np.all(np.diff(vals) >= -1e-12)


def test_guards():
    big = Graph.from_edges(25, [(i, i + 1, 1.0) for i in range(24)], MuScheme.DEGREE)
    with pytest.raises(SizeGuardError):
        brute_force_h(big)
    with pytest.raises(SizeGuardError):
        brute_force_h_theta(cycle_graph(15), 0.5)
    with pytest.raises(SizeGuardError):
        brute_force_inner(np.ones(17), 1.0)


def test_inner_examples():
    assert brute_force_inner([0.6, 0.5, 0.3], 1.0) == pytest.approx(-2 / 15, abs=1e-15)
    assert brute_force_inner([1.0, 0.5, 0.25], 1.0) == pytest.approx(-0.25, abs=1e-15)
    assert brute_force_inner([0.5, 0.5], 1.0) == 0.0
