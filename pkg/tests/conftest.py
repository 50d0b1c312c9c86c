import itertools
import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from kmcds.graph import NodeWeightedGraph

_ACCEPTANCE_LINES = []


def record_acceptance(criterion, passed, detail=""):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
    _ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def from_nx(g, weights=None):
    g = nx.convert_node_labels_to_integers(g)
    return NodeWeightedGraph(g.nodes, g.edges, weights)


def complete(n, weights=None):
    return NodeWeightedGraph(range(n), itertools.combinations(range(n), 2), weights)


def cycle(n, weights=None):
    return NodeWeightedGraph(range(n), [(i, (i + 1) % n) for i in range(n)], weights)


def path(n, weights=None):
    return NodeWeightedGraph(range(n), [(i, i + 1) for i in range(n - 1)], weights)


def star(leaves):
    return NodeWeightedGraph(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def petersen():
    return from_nx(nx.petersen_graph())


def random_graph(rng, n, p, weights="unit"):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    if weights == "unit":
        w = None
    elif weights == "int":
        w = [rng.randint(1, 10) for _ in range(n)]
    else:
        w = [round(rng.uniform(0.5, 5.0), 3) for _ in range(n)]
    return NodeWeightedGraph(range(n), edges, w)


@st.composite
def graphs(draw, min_nodes=2, max_nodes=9, weighted=False):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, mask) if keep]
    w = None
    if weighted:
        w = draw(st.lists(st.integers(0, 9), min_size=n, max_size=n))
    return NodeWeightedGraph(range(n), edges, w)


@pytest.fixture
def rng():
    return random.Random(20261014)
