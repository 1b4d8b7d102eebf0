"""
Color-change engines and certified verifiers.

power_domination_closure applies the domination step (color N[S]) and then the
propagation step (a colored vertex with exactly one uncolored neighbor colors it)
until nothing changes. The fixed point does not depend on the order of forces;
the engine always fires the lowest-index eligible forcer so the recorded force
sequence is deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from .graph import Graph, VertexSet, Weights, components
from .partition import JunctionPartition, junction_partition

Force = Tuple[int, int]


@dataclass(frozen=True)
class ColorClosure:
    """cl_P(S) with the domination set N[S] and a replayable force sequence."""

    colored: VertexSet
    dominated: VertexSet
    force_sequence: Tuple[Force, ...]

    def is_complete(self, g: Graph) -> bool:
        return len(self.colored) == g.vertex_count

    def uncolored(self, g: Graph) -> VertexSet:
        return frozenset(v for v in g.vertices() if v not in self.colored)

    def certificate_labels(self, g: Graph) -> List[List[str]]:
        return [[g.labels[a], g.labels[b]] for a, b in self.force_sequence]


@dataclass(frozen=True)
class FortNeighborhood:
    """
    A fort neighborhood M with its decomposition.

    M is the union of junctions_in and the paths listed in paths_in. boundary_junctions
    (J_N) are the junctions of M with a neighbor outside M, and interior_fort = M minus J_N
    is a fort whose closed neighborhood is M.
    """

    vertices: VertexSet
    junctions_in: VertexSet
    paths_in: Tuple[int, ...]
    boundary_junctions: VertexSet
    interior_fort: VertexSet
    origin: str = field(default="", compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def weight(self, w: Weights):
        return sum((w.get(v, 0) for v in self.vertices), 0)

    def tagged(self, origin: str) -> "FortNeighborhood":
        return FortNeighborhood(
            self.vertices, self.junctions_in, self.paths_in,
            self.boundary_junctions, self.interior_fort, origin,
        )

    def to_dict(self, g: Graph) -> dict:
        return {
            "vertices": g.labels_of(self.vertices),
            "interior_fort": g.labels_of(self.interior_fort),
            "origin": self.origin,
        }


def _propagate(g: Graph, colored: List[bool]) -> List[Force]:
    """Run the propagation step in place on a color array; return the forces made."""
    uncolored_count = [0] * g.vertex_count
    for v in g.vertices():
        uncolored_count[v] = sum(1 for u in g.adjacency[v] if not colored[u])

    heap = [v for v in g.vertices() if colored[v] and uncolored_count[v] == 1]
    heapq.heapify(heap)
    forces: List[Force] = []

    while heap:
        v = heapq.heappop(heap)
        if uncolored_count[v] != 1:
            continue
        target = next(u for u in g.adjacency[v] if not colored[u])
        colored[target] = True
        forces.append((v, target))
        for x in g.adjacency[target]:
            uncolored_count[x] -= 1
            if colored[x] and uncolored_count[x] == 1:
                heapq.heappush(heap, x)
        if uncolored_count[target] == 1:
            heapq.heappush(heap, target)

    return forces


def power_domination_closure(g: Graph, s: Iterable[int]) -> ColorClosure:
    """cl_P(S) with its certificate; S empty gives the empty closure."""
    dominated = g.closed_neighborhood(s)
    colored = [False] * g.vertex_count
    for v in dominated:
        colored[v] = True
    forces = _propagate(g, colored) if dominated else []
    return ColorClosure(
        colored=frozenset(v for v in g.vertices() if colored[v]),
        dominated=dominated,
        force_sequence=tuple(forces),
    )


def is_power_dominating(g: Graph, s: Iterable[int]) -> bool:
    return power_domination_closure(g, s).is_complete(g)


def zero_forcing_closure(g: Graph, s: Iterable[int]) -> VertexSet:
    """Fixed point of the propagation step alone, started from S."""
    colored = [False] * g.vertex_count
    for v in s:
        colored[v] = True
    _propagate(g, colored)
    return frozenset(v for v in g.vertices() if colored[v])


def verify_closure_certificate(g: Graph, s: Iterable[int], closure: ColorClosure) -> bool:
    """
    Replay a force sequence from N[S].

    Every forcer must be colored and have exactly one uncolored neighbor, the forced
    vertex, at its step; the replay must end at closure.colored.
    """
    colored = set(g.closed_neighborhood(s))
    if colored != set(closure.dominated):
        return False
    for forcer, forced in closure.force_sequence:
        if forcer not in colored or forced in colored:
            return False
        uncolored = [u for u in g.adjacency[forcer] if u not in colored]
        if uncolored != [forced]:
            return False
        colored.add(forced)
    return colored == set(closure.colored)


def extend_to_power_dominating(g: Graph, s: Iterable[int]) -> VertexSet:
    """Add the smallest uncolored vertex until S is power dominating."""
    current = set(s)
    closure = power_domination_closure(g, current)
    while not closure.is_complete(g):
        current.add(min(closure.uncolored(g)))
        closure = power_domination_closure(g, current)
    return frozenset(current)


def is_fort(g: Graph, f: Iterable[int]) -> bool:
    """Nonempty F where every vertex of N(F) has at least two neighbors in F."""
    fort = frozenset(f)
    if not fort:
        return False
    for v in g.open_neighborhood(fort):
        if sum(1 for u in g.adjacency[v] if u in fort) < 2:
            return False
    return True


def fort_neighborhood_of(g: Graph, f: Iterable[int]) -> VertexSet:
    return g.closed_neighborhood(f)


def is_fort_neighborhood(
    g: Graph, partition: JunctionPartition, m: Iterable[int]
) -> Optional[FortNeighborhood]:
    """
    Linear-time certificate check for M being the closed neighborhood of a fort.

    M must be a union of junctions and whole junction paths such that every
    neighbor of an included path is an included junction, and every junction of M
    with a neighbor outside M (J_N) has at least two neighbors in M minus J_N. On
    success the interior fort is M minus J_N. Returns None otherwise.
    """
    members = frozenset(m)
    if not members:
        return None

    junctions_in = members & partition.junctions
    paths_in = sorted({partition.path_of[v] for v in members if partition.path_of[v] >= 0})
    for p in paths_in:
        path = partition.paths[p]
        if not path.vertex_set <= members:
            return None
        if not path.neighborhood <= junctions_in:
            return None

    boundary = frozenset(
        v for v in junctions_in if any(u not in members for u in g.adjacency[v])
    )
    for u in boundary:
        inside = sum(1 for x in g.adjacency[u] if x in members and x not in boundary)
        if inside < 2:
            return None

    return FortNeighborhood(
        vertices=members,
        junctions_in=junctions_in,
        paths_in=tuple(paths_in),
        boundary_junctions=boundary,
        interior_fort=members - boundary,
    )


def complement_fort_separation(
    g: Graph, s: Iterable[int], partition: Optional[JunctionPartition] = None
) -> Optional[FortNeighborhood]:
    """
    Fort neighborhood N[V minus cl_P(S)] disjoint from S, or None if S is power dominating.

    The uncolored set is a fort; its closed neighborhood misses S because N[S] is colored.
    """
    closure = power_domination_closure(g, s)
    if closure.is_complete(g):
        return None
    if partition is None:
        partition = junction_partition(g)
    m = fort_neighborhood_of(g, closure.uncolored(g))
    certificate = is_fort_neighborhood(g, partition, m)
    if certificate is None:
        raise AssertionError("closed neighborhood of an uncolored set failed verification")
    return certificate.tagged("closure")


def split_fort_neighborhood(
    g: Graph, partition: JunctionPartition, fn: FortNeighborhood
) -> List[FortNeighborhood]:
    """
    Split M into the connected components of G[M], each certified as a fort neighborhood.

    Any single component is a smaller row that implies M's row. The whole of M comes back
    unchanged when G[M] is connected or a component fails verification.
    """
    sub, mapping = g.induced_subgraph(fn.vertices)
    parts = components(sub)
    if len(parts) == 1:
        return [fn]
    pieces: List[FortNeighborhood] = []
    for part in parts:
        certificate = is_fort_neighborhood(g, partition, (mapping[v] for v in part))
        if certificate is None:
            return [fn]
        pieces.append(certificate.tagged(fn.origin))
    return pieces
