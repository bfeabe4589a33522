import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balcut.errors import DomainError
from balcut.functionals import (h_r, i_plus, i_total, l_theta, lovasz_eval, n_value, norm_1d,
                                norm_inf, objective_B, objective_T, weighted_median)
from balcut.graph import BinaryCut, TernaryPartition, balanced_cut_value, theta_cut_value
from balcut.instances import path_graph, square_graph

from conftest import graph_and_vector, small_graphs

P6_X = np.array([0, 1, 0, 1, 1, 0]) / 3


def test_i_total_square():
    assert i_total(square_graph(), np.array([1, 1, -1, 1]) / 4) == 1.0
    assert i_total(square_graph(), np.ones(4)) == 0.0


def test_i_plus_p6():
    assert i_plus(path_graph(6), P6_X) == pytest.approx(2.0, abs=1e-15)
    assert i_plus(path_graph(6), np.zeros(6)) == 0.0


def test_weighted_median_examples():
    m = weighted_median(path_graph(6).mu, P6_X)
    assert (m.cL, m.cR) == (1 / 3, 1 / 3) and m.value == pytest.approx(4 / 3, abs=1e-15)
    m = weighted_median([2, 2, 2, 2], np.array([1, 1, -1, -1]) / 4)
    assert (m.cL, m.cR, m.value) == (-0.25, 0.25, 2.0)
    m = weighted_median([1, 1, 1], np.full(3, 0.7))
    assert m.cL == m.cR == 0.7 and m.value == 0.0


def test_objective_examples():
    g = square_graph()
    assert objective_B(g, np.array([1, 1, -1, 1]) / 4) == pytest.approx(1.0, abs=1e-12)
    assert objective_B(g, np.array([1, 1, -1, -1]) / 4) == pytest.approx(0.5, abs=1e-12)
    x = np.array([1, 1, -1, 1]) / 4
    assert objective_B(g, -3 * x) == pytest.approx(objective_B(g, x), abs=1e-15)
    assert objective_T(g, x, 1.0) == objective_B(g, x)
    p6 = path_graph(6)
    assert objective_T(p6, P6_X, 0.2) == pytest.approx(1 / 5, abs=1e-12)
    assert objective_T(p6, np.array([0, -1, 0, 1, 1, 0]) / 3, 0.2) == pytest.approx(2 / 15, abs=1e-12)


def test_constant_vector_rejected():
    with pytest.raises(DomainError):
        objective_B(square_graph(), np.ones(4))
    with pytest.raises(DomainError):
        objective_T(square_graph(), np.zeros(4), 0.5)


def test_h_r_and_l_theta():
    p6 = path_graph(6)
    assert h_r(p6, np.zeros(6), 0.3) == 0.0
    assert h_r(p6, P6_X, 0.0) == pytest.approx(i_plus(p6, P6_X) / p6.e)
    assert h_r(p6, P6_X, 0.2) == pytest.approx(34 / 150, abs=1e-15)
    s = np.linspace(-1, 1, 6)
    assert l_theta(p6, np.zeros(6), s, 0.4) == 0.0
    assert l_theta(p6, P6_X, s, 1.0) == pytest.approx(norm_inf(P6_X) - P6_X @ s)
    with pytest.raises(DomainError):
        h_r(p6, P6_X, -1.0)


def test_batched_matches_single():
    g = small_graphs(1, 3)[0]
    X = np.random.default_rng(0).standard_normal((5, g.n))
    assert np.allclose(objective_T(g, X, 0.4), [objective_T(g, x, 0.4) for x in X], rtol=1e-14, atol=0)
    assert np.array_equal(n_value(g, X), [n_value(g, x) for x in X])


@settings(max_examples=150, deadline=None)
@given(graph_and_vector(), st.floats(-5, 5).filter(lambda t: abs(t) > 1e-3))
def test_absolute_homogeneity(gx, t):
    g, x = gx
    for F in (lambda y: i_total(g, y), lambda y: i_plus(g, y), lambda y: n_value(g, y),
              norm_inf, lambda y: norm_1d(g, y)):
        assert F(t * x) == pytest.approx(abs(t) * F(x), rel=1e-12, abs=1e-12)


@settings(max_examples=150, deadline=None)
@given(graph_and_vector())
def test_degree_norm_bound_and_median_value(gx):
    g, x = gx
    assert g.e * norm_inf(x) >= norm_1d(g, x) - 1e-9
    m = weighted_median(g.mu, x)
    assert m.cL <= m.cR
    assert m.value == pytest.approx(n_value(g, x), rel=1e-12, abs=1e-12)
    for c in (m.cL, m.cR, 0.5 * (m.cL + m.cR)):
        assert np.sum(g.mu * np.abs(x - c)) == pytest.approx(m.value, rel=1e-12, abs=1e-12)
    for c in np.linspace(x.min() - 1, x.max() + 1, 25):
        assert np.sum(g.mu * np.abs(x - c)) >= m.value - 1e-9


def _support_max(mu, x):
    # LP max <v,x> s.t. sum v = 0, |v| <= mu: vertex solutions saturate all but one coordinate
    n = len(mu)
    best = -np.inf
    for k in range(n):
        for signs in range(2 ** (n - 1)):
            v = np.empty(n)
            others = [i for i in range(n) if i != k]
            for b, i in enumerate(others):
                v[i] = mu[i] if (signs >> b) & 1 else -mu[i]
            v[k] = -np.sum(v[others])
            if abs(v[k]) <= mu[k] + 1e-12:
                best = max(best, v @ x)
    return best


def test_n_equals_support_function():
    rng = np.random.default_rng(7)
    for _ in range(60):
        n = int(rng.integers(2, 7))
        mu = rng.uniform(0.2, 3, n)
        x = rng.standard_normal(n)
        assert n_value(mu, x) == pytest.approx(_support_max(mu, x), rel=1e-10, abs=1e-12)


def test_indicator_identities():
    for g in small_graphs(8, 4, n_hi=8):
        for code in range(1, 2 ** (g.n - 1)):
            S = [i for i in range(g.n) if (code >> i) & 1]
            cut = BinaryCut(g.n, S)
            assert objective_B(g, cut.indicator()) == pytest.approx(balanced_cut_value(g, cut), abs=1e-9)
        for code in range(1, 3 ** g.n, 5):
            dig = [(code // 3 ** i) % 3 for i in range(g.n)]
            V1 = [i for i, t in enumerate(dig) if t == 1]
            V2 = [i for i, t in enumerate(dig) if t == 2]
            if not V1 + V2 or len(V1) == g.n or len(V2) == g.n:
                continue
            p = TernaryPartition(g.n, V1, V2)
            for th in (0.0, 0.3, 1.0):
                assert objective_T(g, p.indicator(), th) == pytest.approx(theta_cut_value(g, p, th), abs=1e-9)


def lovasz_pairs(g):
    def sum_d(a, b):
        return float(g.d[a | b].sum())

    def iplus(a, b):
        u = a | b
        same = (a[g.ei] & a[g.ej]) | (b[g.ei] & b[g.ej])
        bnd = u[g.ei] != u[g.ej]
        return 2 * g.w[same].sum() + g.w[bnd].sum()

    def nset(a, b):
        tot = g.mu.sum()
        va, vb = g.mu[a].sum(), g.mu[b].sum()
        return float(min(va, tot - va) + min(vb, tot - vb))

    return {"inf": (lambda a, b: 1.0, norm_inf), "1d": (sum_d, lambda x: norm_1d(g, x)),
            "iplus": (iplus, lambda x: i_plus(g, x)), "N": (nset, lambda x: n_value(g, x))}


def test_lovasz_examples():
    g = path_graph(6)
    x = np.random.default_rng(1).standard_normal(6)
    for name, (f, closed) in lovasz_pairs(g).items():
        assert lovasz_eval(f, x) == pytest.approx(closed(x), abs=1e-12), name
