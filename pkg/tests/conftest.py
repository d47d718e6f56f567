import random

import pytest

from spinecert.digraph import make_digraph
from spinecert.recognition import SpinePartition

C5_ARCS = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]


@pytest.fixture
def c5():
    return make_digraph(5, C5_ARCS)


@pytest.fixture
def c5_spine():
    return SpinePartition.of((1, 2, 3, 4), {0})


def random_digraph(rng: random.Random, n: int, density: float):
    return make_digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density])


def zigzag_free_spine(rng: random.Random, nx: int, ny: int, p: float):
    """Spine digraph whose id-ordered X path is zigzag-free by construction.

    Each y gets a cut c: it may receive arcs from x_0..x_c (never from the
    last vertex) and send arcs to x_{c+2}.. only, so no consecutive
    out/in pair, no arc into x_0 and no arc out of x_last can appear.
    """
    arcs = {(i, i + 1) for i in range(nx - 1)}
    for u in range(nx):
        for v in range(nx):
            if u != v and rng.random() < 0.3:
                arcs.add((u, v))
    for y in range(nx, nx + ny):
        c = rng.randrange(max(nx - 1, 1))
        for i in range(min(c + 1, nx - 1)):
            if rng.random() < p:
                arcs.add((i, y))
        for j in range(c + 2, nx):
            if rng.random() < p:
                arcs.add((y, j))
    D = make_digraph(nx + ny, sorted(arcs))
    return D, SpinePartition.of(range(nx), range(nx, nx + ny))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
