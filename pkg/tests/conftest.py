import numpy as np
import pytest
from hypothesis import strategies as st

from balcut.instances import random_connected_graph


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def small_graphs(count, seed, n_lo=4, n_hi=10, **kw):
    rng = np.random.default_rng(seed)
    return [random_connected_graph(int(rng.integers(n_lo, n_hi + 1)), rng, **kw)
            for _ in range(count)]


@st.composite
def graph_and_vector(draw, n_max=9, nonconstant=True):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    n = draw(st.integers(2, n_max))
    g = random_connected_graph(n, rng)
    x = draw(st.lists(st.floats(-10, 10, allow_nan=False, width=32), min_size=n, max_size=n))
    x = np.array(x, dtype=float)
    if nonconstant and np.all(x == x[0]):
        x[0] += 1.0
    return g, x


ACCEPTANCE_LINES: list[str] = []


def acceptance_line(num, ok, detail):
    status = {True: "PASS", False: "FAIL", None: "SKIP"}[ok]
    line = f"criterion {num:>2}: {status}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
