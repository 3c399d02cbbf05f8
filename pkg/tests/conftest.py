import itertools
import random

import pytest

from edgeforce.graph import Graph, from_edges


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger jit compilation once so timed tests measure the algorithm
    from edgeforce.engine import closure
    closure(from_edges(2, [(0, 1)]), {0})


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return from_edges(n, list(itertools.combinations(range(n), 2)))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [e for e in itertools.combinations(range(n), 2)
             if rng.random() < p]
    return from_edges(n, edges)
