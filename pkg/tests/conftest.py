import itertools

import pytest

from sylva.core import Digraph, Graph


@pytest.fixture
def triangle():
    return Graph.build(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def k4():
    return Graph.build(4, list(itertools.combinations(range(4), 2)))


@pytest.fixture
def c4():
    return Graph.build(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def doubled_c4():
    pairs = [(0, 1), (1, 2), (2, 3), (3, 0)]
    return Graph.build(4, [p for p in pairs for _ in range(2)])


@pytest.fixture
def directed_triangle():
    return Digraph.build(3, [(0, 1), (1, 2), (2, 0)])
