"""
Fort neighborhoods found by inspection of the junction partition.

Type I:   a junction v and two paths P1, P2 with N(P1) = N(P2) = {v}.
Type II:  a junction v and a path P with N(P) = {v} and |N(v) & P| = 2.
Type III: junctions v, u and two paths P1, P2 with N(P1) = N(P2) = {v, u}.

At most one type I/II neighborhood is kept per junction and one type III per
junction pair, so the result seeds the master without redundant rows.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, FrozenSet, Iterable, List, Set

from ..core.partition import JunctionPartition
from ..core.propagation import FortNeighborhood, is_fort_neighborhood
from ..utils.logging_helpers import get_logger

logger = get_logger("special")

TYPE_I = "type-I"
TYPE_II = "type-II"
TYPE_III = "type-III"
SPECIAL_TYPES = (TYPE_I, TYPE_II, TYPE_III)


def _certify(partition: JunctionPartition, members: Iterable[int], origin: str) -> FortNeighborhood:
    certificate = is_fort_neighborhood(partition.graph, partition, members)
    if certificate is None:
        raise AssertionError(f"{origin} candidate failed fort neighborhood verification")
    return certificate.tagged(origin)


def detect_special_fns(partition: JunctionPartition) -> List[FortNeighborhood]:
    """Scan paths in index order and collect type I/II/III fort neighborhoods."""
    claimed: Set[int] = set()
    pendant_at: Dict[int, int] = {}
    pair_path: Dict[FrozenSet[int], int] = {}
    pairs_done: Set[FrozenSet[int]] = set()
    found: List[FortNeighborhood] = []

    for path in partition.paths:
        nbhd = path.neighborhood
        if len(nbhd) == 1:
            (v,) = nbhd
            if partition.contacts(v, path) == 2:
                if v not in claimed:
                    claimed.add(v)
                    found.append(_certify(partition, {v, *path.vertices}, TYPE_II))
                continue
            if v in pendant_at:
                if v not in claimed:
                    claimed.add(v)
                    other = partition.paths[pendant_at[v]]
                    found.append(_certify(partition, {v, *path.vertices, *other.vertices}, TYPE_I))
            else:
                pendant_at[v] = path.index
        elif len(nbhd) == 2:
            if nbhd in pair_path:
                if nbhd not in pairs_done:
                    pairs_done.add(nbhd)
                    other = partition.paths[pair_path[nbhd]]
                    found.append(_certify(partition, {*nbhd, *path.vertices, *other.vertices}, TYPE_III))
            else:
                pair_path[nbhd] = path.index

    logger.debug(f"special fort neighborhoods: {dict(special_counts(found))}")
    return found


def special_counts(fns: Iterable[FortNeighborhood]) -> Dict[str, int]:
    """Count per type, with every type present."""
    counts = Counter(fn.origin for fn in fns)
    return {kind: counts.get(kind, 0) for kind in SPECIAL_TYPES}
