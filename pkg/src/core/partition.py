"""
Junction partition of a graph.

Junctions are the vertices of degree at least three. Removing them leaves
components of maximum degree two; each one is a junction path, or a cycle when
the whole component of G is a cycle. Junctions and paths partition V.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple, Union

from .graph import Graph, VertexSet

JUNCTION = "junction"


@dataclass(frozen=True)
class JunctionPath:
    """One component of G[V minus J(G)] with its outside neighborhood N(P)."""

    index: int
    vertices: Tuple[int, ...]  # consecutive vertices adjacent in G
    neighborhood: VertexSet
    cyclic: bool = False

    @cached_property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertex_set


@dataclass(frozen=True)
class JunctionPartition:
    """J(G), the junction paths, and a vertex -> class lookup."""

    graph: Graph
    junctions: VertexSet
    paths: Tuple[JunctionPath, ...]
    path_of: Tuple[int, ...]  # path index per vertex, -1 for junctions

    @cached_property
    def junction_list(self) -> Tuple[int, ...]:
        return tuple(sorted(self.junctions))

    @property
    def is_junction_free(self) -> bool:
        return not self.junctions

    def vertex_class(self, v: int) -> Union[str, int]:
        """JUNCTION for junctions, otherwise the index of the containing path."""
        p = self.path_of[v]
        return JUNCTION if p < 0 else p

    def path_containing(self, v: int) -> Optional[JunctionPath]:
        p = self.path_of[v]
        return None if p < 0 else self.paths[p]

    @cached_property
    def paths_at(self) -> Dict[int, Tuple[int, ...]]:
        """Junction -> indices of the paths whose neighborhood contains it."""
        out: Dict[int, List[int]] = {v: [] for v in self.junction_list}
        for path in self.paths:
            for v in sorted(path.neighborhood):
                out[v].append(path.index)
        return {v: tuple(ps) for v, ps in out.items()}

    def contacts(self, v: int, path: JunctionPath) -> int:
        """|N(v) intersect P|."""
        return sum(1 for u in self.graph.adjacency[v] if self.path_of[u] == path.index)


def _order_path(g: Graph, comp: List[int]) -> Tuple[Tuple[int, ...], bool]:
    """Order a max-degree-two component along the path; detect cycles."""
    members = set(comp)

    def inner(v: int) -> List[int]:
        return [u for u in g.adjacency[v] if u in members]

    ends = [v for v in comp if len(inner(v)) <= 1]
    cyclic = not ends
    start = min(comp) if cyclic else min(ends)

    order = [start]
    prev, cur = -1, start
    while True:
        step = [u for u in inner(cur) if u != prev and u != start]
        if not step:
            break
        prev, cur = cur, step[0]
        order.append(cur)
    return tuple(order), cyclic


def junction_partition(g: Graph) -> JunctionPartition:
    """
    Split V into junctions (deg >= 3) and junction paths.

    Paths are discovered in order of their smallest vertex index and numbered in that
    order; N(P) is taken over the whole path, so for a connected graph with junctions it
    is the set of junctions adjacent to the path endpoints.
    """
    n = g.vertex_count
    is_junction = [g.degree(v) >= 3 for v in g.vertices()]
    path_of = [-1] * n
    paths: List[JunctionPath] = []

    for start in g.vertices():
        if is_junction[start] or path_of[start] >= 0:
            continue
        index = len(paths)
        path_of[start] = index
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.adjacency[v]:
                if not is_junction[u] and path_of[u] < 0:
                    path_of[u] = index
                    stack.append(u)

        vertices, cyclic = _order_path(g, comp)
        nbhd = frozenset(u for v in comp for u in g.adjacency[v] if is_junction[u])
        paths.append(JunctionPath(index, vertices, nbhd, cyclic))

    junctions = frozenset(v for v in g.vertices() if is_junction[v])
    return JunctionPartition(g, junctions, tuple(paths), tuple(path_of))
