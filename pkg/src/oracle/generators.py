"""
Graph generators for tests, benches and the `gen` command.
"""

from __future__ import annotations

from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from ..core.graph import Graph, components
from ..utils.errors import StructuralError


def generate_gk(k: int) -> Graph:
    """
    K_k with every edge subdivided once and a leaf on each original vertex.

    Labels: v<i> originals, v<i>_<j> subdivision vertices, u<i> leaves.
    n = 2k + k(k-1)/2 and m = k^2; degrees are 1 (leaves), 2 (subdividers) or k.
    """
    if k < 3:
        raise StructuralError(f"generate_gk needs k >= 3, got {k}")
    labels: List[str] = [f"v{i}" for i in range(1, k + 1)]
    edges: List[Tuple[int, int]] = []
    for i, j in combinations(range(k), 2):
        labels.append(f"v{i + 1}_{j + 1}")
        mid = len(labels) - 1
        edges.extend([(i, mid), (mid, j)])
    for i in range(k):
        labels.append(f"u{i + 1}")
        edges.append((i, len(labels) - 1))
    return Graph.from_index_edges(len(labels), edges, labels)


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def cycle_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.cycle_graph(n))


def complete_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def star_graph(leaves: int) -> Graph:
    """Center 0 joined to `leaves` leaves."""
    return Graph.from_networkx(nx.star_graph(leaves))


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Union with labels prefixed by the operand position (g<i>:<label>)."""
    labels: List[str] = []
    edges: List[Tuple[int, int]] = []
    for i, g in enumerate(graphs):
        offset = len(labels)
        labels.extend(f"g{i}:{label}" for label in g.labels)
        edges.extend((offset + u, offset + v) for u, v in g.edges())
    return Graph.from_index_edges(len(labels), edges, labels)


def random_graph(n: int, p: float, seed: Optional[int] = None) -> Graph:
    """Erdos-Renyi G(n, p); may be disconnected."""
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def random_connected_graph(n: int, p: float, seed: int = 0, max_tries: int = 1000) -> Graph:
    """
    Connected G(n, p) sample.

    Seeds seed, seed+1, ... are tried until the sample is connected, so the result
    is a deterministic function of (n, p, seed).
    """
    for attempt in range(max_tries):
        g = random_graph(n, p, seed=seed + attempt)
        if n <= 1 or len(components(g)) == 1:
            return g
    raise StructuralError(f"no connected G({n}, {p}) sample in {max_tries} tries from seed {seed}")
