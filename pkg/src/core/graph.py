"""
Immutable simple undirected graph with dense vertex indices.

Vertices are the integers 0..n-1; original string labels are kept only for I/O.
Neighbor lists are sorted ascending so every traversal in the package is
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from ..utils.errors import GraphParseError, GraphValidationError

VertexSet = FrozenSet[int]
Weight = Union[Fraction, int, float]
Weights = Mapping[int, Weight]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: sorted adjacency tuples plus a label per vertex."""

    adjacency: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]

    def __post_init__(self):
        n = len(self.adjacency)
        if len(self.labels) != n:
            raise GraphValidationError(f"{len(self.labels)} labels for {n} vertices")
        index: Dict[str, int] = {}
        for i, label in enumerate(self.labels):
            if label in index:
                raise GraphValidationError(f"duplicate vertex label {label!r}")
            index[label] = i
        for v, nbrs in enumerate(self.adjacency):
            for a, b in zip(nbrs, nbrs[1:]):
                if a >= b:
                    raise GraphValidationError(f"neighbors of {self.labels[v]!r} not strictly sorted")
            for u in nbrs:
                if u == v:
                    raise GraphValidationError(f"self-loop {self.labels[v]}-{self.labels[v]}")
                if not 0 <= u < n or v not in self.adjacency[u]:
                    raise GraphValidationError(f"adjacency not symmetric at {self.labels[v]!r}")
        object.__setattr__(self, "_index", index)

    # -------------------------
    # Constructors
    # -------------------------
    @classmethod
    def from_index_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        """Build from an edge list over 0..n-1; loops and parallel edges are rejected."""
        labels = tuple(str(i) for i in range(n)) if labels is None else tuple(labels)
        nbrs: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphValidationError(f"self-loop {labels[u]}-{labels[u]}")
            if v in nbrs[u]:
                raise GraphValidationError(f"parallel edge {labels[u]}-{labels[v]}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(tuple(tuple(sorted(s)) for s in nbrs), labels)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Convert a networkx graph; node order is preserved and labels are str(node)."""
        if nx_graph.is_directed() or nx_graph.is_multigraph():
            raise GraphValidationError("only simple undirected graphs are supported")
        nodes = list(nx_graph.nodes)
        position = {node: i for i, node in enumerate(nodes)}
        edges = [(position[a], position[b]) for a, b in nx_graph.edges]
        return cls.from_index_edges(len(nodes), edges, [str(node) for node in nodes])

    # -------------------------
    # Basic queries
    # -------------------------
    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    n = vertex_count

    @cached_property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @property
    def m(self) -> int:
        return self.edge_count

    @cached_property
    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def vertices(self) -> range:
        return range(len(self.adjacency))

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in index order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def open_neighborhood(self, vertices: Iterable[int]) -> VertexSet:
        """N(S): vertices outside S adjacent to some vertex of S."""
        s = set(vertices)
        out = set()
        for v in s:
            out.update(self.adjacency[v])
        return frozenset(out - s)

    def closed_neighborhood(self, vertices: Iterable[int]) -> VertexSet:
        """N[S] = S together with N(S)."""
        out = set(vertices)
        for v in list(out):
            out.update(self.adjacency[v])
        return frozenset(out)

    @cached_property
    def neighbor_masks(self) -> Tuple[int, ...]:
        """Open neighborhoods as integer bitmasks (bit v set for neighbor v)."""
        masks = []
        for nbrs in self.adjacency:
            mask = 0
            for u in nbrs:
                mask |= 1 << u
            masks.append(mask)
        return tuple(masks)

    @cached_property
    def closed_masks(self) -> Tuple[int, ...]:
        return tuple(mask | (1 << v) for v, mask in enumerate(self.neighbor_masks))

    # -------------------------
    # Labels
    # -------------------------
    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphValidationError(f"unknown vertex label {label!r}") from None

    def indices_of(self, labels: Iterable[str]) -> VertexSet:
        return frozenset(self.index_of(label) for label in labels)

    def label_of(self, v: int) -> str:
        return self.labels[v]

    def labels_of(self, vertices: Iterable[int]) -> List[str]:
        """Labels of a vertex set, in index order."""
        return [self.labels[v] for v in sorted(vertices)]

    # -------------------------
    # Derived graphs and export
    # -------------------------
    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", Tuple[int, ...]]:
        """
        Subgraph induced by a vertex set.

        Returns:
            (subgraph, mapping) where mapping[i] is the original index of subgraph vertex i;
            vertices keep their relative order and labels.
        """
        mapping = tuple(sorted(set(vertices)))
        position = {v: i for i, v in enumerate(mapping)}
        adjacency = tuple(
            tuple(position[u] for u in self.adjacency[v] if u in position) for v in mapping
        )
        return Graph(adjacency, tuple(self.labels[v] for v in mapping)), mapping

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.labels)
        g.add_edges_from((self.labels[u], self.labels[v]) for u, v in self.edges())
        return g

    def to_json(self) -> dict:
        """{"nodes": [labels], "edges": [[i, j], ...]} with i < j."""
        return {"nodes": list(self.labels), "edges": [[u, v] for u, v in self.edges()]}

    def to_edge_list_text(self, header: Sequence[str] = ()) -> str:
        """Serialize in the edge-list format; isolated vertices become single-label lines."""
        lines = [f"# {line}" for line in header]
        lines.append(f"# n={self.vertex_count} m={self.edge_count}")
        for v in self.vertices():
            if not self.adjacency[v]:
                lines.append(self.labels[v])
        lines.extend(f"{self.labels[u]} {self.labels[v]}" for u, v in self.edges())
        return "\n".join(lines) + "\n"


def parse_edge_list(text: Union[str, Iterable[str]]) -> Graph:
    """
    Parse the edge-list format.

    Each non-comment line holds two whitespace-separated labels (an edge) or a single
    label (an isolated vertex). Lines starting with '#' and blank lines are ignored.
    Labels are interned in order of first appearance.

    Raises:
        GraphParseError: Line with zero or more than two tokens
        GraphValidationError: Self-loop or repeated edge
    """
    lines = text.splitlines() if isinstance(text, str) else text
    index: Dict[str, int] = {}
    edges: List[Tuple[int, int]] = []
    seen = set()

    def intern(label: str) -> int:
        if label not in index:
            index[label] = len(index)
        return index[label]

    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) == 1:
            intern(tokens[0])
            continue
        if len(tokens) != 2:
            raise GraphParseError(f"expected two vertex labels, got {len(tokens)} tokens", line_number)
        a, b = tokens
        if a == b:
            raise GraphValidationError(f"line {line_number}: self-loop {a}-{b}")
        u, v = intern(a), intern(b)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphValidationError(f"line {line_number}: parallel edge {a}-{b}")
        seen.add(key)
        edges.append(key)

    return Graph.from_index_edges(len(index), edges, list(index))


def read_edge_list(path: Union[str, Path]) -> Graph:
    """Read an edge-list file."""
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def components(g: Graph) -> List[VertexSet]:
    """Connected components, ordered by their smallest vertex index."""
    seen = [False] * g.vertex_count
    out: List[VertexSet] = []
    for start in g.vertices():
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        comp = [start]
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.vertex_count > 0 and len(components(g)) == 1


def parse_weights(text: str, g: Graph) -> Dict[int, Fraction]:
    """
    Parse a weight sidecar: lines "label weight" with exact rationals (p/q, integers or decimals).

    Vertices not listed have weight 0 (absent from the returned dict).
    """
    weights: Dict[int, Fraction] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError("expected 'label weight'", line_number)
        try:
            value = Fraction(tokens[1])
        except (ValueError, ZeroDivisionError):
            raise GraphParseError(f"bad weight {tokens[1]!r}", line_number) from None
        if value < 0:
            raise GraphValidationError(f"line {line_number}: negative weight for {tokens[0]!r}")
        weights[g.index_of(tokens[0])] = value
    return weights


def format_weights(weights: Weights, g: Graph) -> str:
    """Inverse of parse_weights; zero weights are omitted."""
    lines = []
    for v in sorted(weights):
        value = Fraction(weights[v])
        if value:
            lines.append(f"{g.labels[v]} {value}")
    return "\n".join(lines) + ("\n" if lines else "")
