import numpy as np
import pytest
from hypothesis import strategies as st

from graph_spectra.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def two_vertex():
    return Graph.from_arrays([1.0, 1.0], {(0, 1): 1.0})


@pytest.fixture
def k3():
    return Graph.from_arrays([1.0, 1.0, 1.0], {(0, 1): 1.0, (1, 2): 1.0, (0, 2): 1.0})


@pytest.fixture
def single():
    return Graph.from_arrays([2.0], {}, c=[6.0])


@st.composite
def graphs(draw, min_size=1, max_size=7, zero_potential=False):
    """Small valid graphs with bounded, well-scaled weights."""
    n = draw(st.integers(min_size, max_size))
    reals = lambda lo, hi: st.floats(lo, hi, allow_nan=False, allow_infinity=False)
    m = draw(st.lists(reals(0.1, 10.0), min_size=n, max_size=n))
    c = [0.0] * n if zero_potential else draw(st.lists(reals(0.0, 5.0), min_size=n, max_size=n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    edges = {p: draw(reals(0.0, 5.0)) for p in chosen}
    return Graph.from_arrays(np.array(m), edges, np.array(c))


@st.composite
def vectors(draw, n):
    return np.array(draw(st.lists(st.floats(-10, 10, allow_nan=False), min_size=n, max_size=n)))
