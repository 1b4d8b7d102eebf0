"""Shared fixtures: bundled grid graphs, two small hand-built graphs, seeded random corpora."""

import pytest

from src.core.graph import Graph, parse_edge_list, read_edge_list
from src.oracle.generators import random_connected_graph
from src.utils.project_path import get_bundled_dir

BUNDLED = get_bundled_dir()

# A 4-cycle v1 v2 v4 v3 hanging off the cut vertex v5, which also joins the
# block {v6, v7, v8, a, b}. {v6, v7} and {v1, v2, v4} are both forts.
LEFT_EDGES = """
v1 v2
v2 v5
v5 v4
v4 v3
v3 v1
v2 v4
v5 a
a b
b v8
v6 v5
v6 v8
v6 a
v6 b
v7 v5
v7 v8
v7 a
v7 b
"""

# Three pendant paths of six vertices meeting at the junction v13.
RIGHT_EDGES = "\n".join(
    [f"v{i} v{i + 1}" for i in range(1, 6)]
    + ["v6 v13"]
    + [f"v{i} v{i + 1}" for i in range(7, 12)]
    + ["v12 v13"]
    + [f"u{i} u{i + 1}" for i in range(1, 6)]
    + ["u6 v13"]
)

P_VALUES = (0.2, 0.35, 0.5)


def bundled(name: str) -> Graph:
    return read_edge_list(BUNDLED / f"{name}.edges")


def make_corpus(count: int, seed: int = 1000):
    """Connected G(n, p) graphs cycling n over 4..12 and p over P_VALUES."""
    graphs = []
    for i in range(count):
        n = 4 + i % 9
        p = P_VALUES[(i // 9) % len(P_VALUES)]
        graphs.append(random_connected_graph(n, p, seed=seed + 7 * i))
    return graphs


@pytest.fixture(scope="session")
def ieee14() -> Graph:
    return bundled("ieee14")


@pytest.fixture(scope="session")
def ieee30() -> Graph:
    return bundled("ieee30")


@pytest.fixture(scope="session")
def ieee57() -> Graph:
    return bundled("ieee57")


@pytest.fixture(scope="session")
def ieee118() -> Graph:
    return bundled("ieee118")


@pytest.fixture(scope="session")
def ieee300() -> Graph:
    return bundled("ieee300")


@pytest.fixture
def left_graph() -> Graph:
    return parse_edge_list(LEFT_EDGES)


@pytest.fixture
def right_graph() -> Graph:
    return parse_edge_list(RIGHT_EDGES)


@pytest.fixture(scope="session")
def corpus():
    """216 connected graphs, n in 4..12."""
    return make_corpus(216)


@pytest.fixture(scope="session")
def small_corpus():
    """60 connected graphs for the heavier cross-checks."""
    return make_corpus(60, seed=5000)


@pytest.fixture(scope="session")
def junction_corpus():
    """200 connected graphs with a vertex of degree three, for the junction-only models."""
    return [g for g in make_corpus(400, seed=9000) if g.max_degree >= 3][:200]
