"""Small named graphs and seeded random generators used by tests, docs and the bench."""
from __future__ import annotations

import numpy as np

from .graph import Graph, MuScheme


def path_graph(n: int, mu_scheme=MuScheme.DEGREE) -> Graph:
    return Graph.from_edges(n, [(i, i + 1, 1.0) for i in range(n - 1)], mu_scheme, name=f"P{n}")


def cycle_graph(n: int, mu_scheme=MuScheme.DEGREE) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n, 1.0) for i in range(n)], mu_scheme, name=f"C{n}")


def square_graph(mu_scheme=MuScheme.DEGREE) -> Graph:
    return cycle_graph(4, mu_scheme)


def complete_graph(n: int, mu_scheme=MuScheme.DEGREE) -> Graph:
    edges = [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)]
    return Graph.from_edges(n, edges, mu_scheme, name=f"K{n}")


def petersen_graph(mu_scheme=MuScheme.DEGREE) -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges = [(a, b, 1.0) for a, b in outer + spokes + inner]
    return Graph.from_edges(10, edges, mu_scheme, name="petersen")


def random_connected_graph(n: int, rng: np.random.Generator, edge_prob: float = 0.4,
                           max_weight: float = 2.0, mu_scheme=MuScheme.DEGREE) -> Graph:
    """Random spanning tree plus independent extra edges; weights uniform in (0, max_weight]."""
    perm = rng.permutation(n)
    pairs = {tuple(sorted((int(perm[k]), int(perm[rng.integers(k)])))) for k in range(1, n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                pairs.add((i, j))
    pairs = sorted(pairs)
    # 1 - U[0,1) lies in (0, 1], so weights are strictly positive
    weights = max_weight * (1.0 - rng.random(len(pairs)))
    return Graph.from_edges(n, [(i, j, w) for (i, j), w in zip(pairs, weights)], mu_scheme)


def random_gnm_graph(n: int, m: int, rng: np.random.Generator, mu_scheme=MuScheme.DEGREE,
                     name: str = "") -> Graph:
    """Uniform random simple graph with exactly ``m`` unit-weight edges.

    Same model as the random-graph family of the G-set collection (G1-G5 use
    n=800 at 6% density, i.e. m=19176).
    """
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError("too many edges for a simple graph")
    codes = np.sort(rng.choice(total, size=m, replace=False))
    # decode pair index -> (i, j) with i < j in row-major upper-triangular order
    row_start = np.cumsum(np.arange(n - 1, 0, -1)) - np.arange(n - 1, 0, -1)
    i = np.searchsorted(row_start, codes, side="right") - 1
    j = codes - row_start[i] + i + 1
    g = Graph._build(n, i.astype(np.int64), j.astype(np.int64), np.ones(m), MuScheme(mu_scheme),
                     None, name)
    return g
