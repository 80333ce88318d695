import random

import pytest
from hypothesis import strategies as hst

from dist2col import generators as gen

# lines collected by the acceptance suite, echoed after the run
ACCEPTANCE_LINES: list[str] = []


@hst.composite
def plane_graphs(draw, max_n=16, min_girth=3):
    seed = draw(hst.integers(0, 2**32 - 1))
    n = draw(hst.integers(1, max_n))
    extra = draw(hst.integers(0, 2 * n))
    return gen.random_plane_graph(random.Random(seed), n, extra, min_girth=min_girth)


@hst.composite
def girth6_graphs(draw, max_n=24):
    seed = draw(hst.integers(0, 2**32 - 1))
    n = draw(hst.integers(7, max_n))
    hub = draw(hst.integers(0, min(8, n - 1)))
    extra = draw(hst.integers(0, n // 2))
    return gen.random_plane_graph(random.Random(seed), n, extra, min_girth=6, hub_degree=hub)


@pytest.fixture
def k4s():
    return gen.subdivide(gen.k4_graph())


@pytest.fixture
def c6():
    return gen.cycle_graph(6)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
