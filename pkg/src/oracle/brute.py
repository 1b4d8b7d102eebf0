"""
Brute-force reference oracles.

These enumerate subsets with integer bitmask kernels and exist to cross-check the
MILP code on small graphs. Each one refuses instances above its cap.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

from ..core import config
from ..core.graph import Graph, VertexSet, Weights
from ..utils.errors import OracleLimitError
from ..utils.logging_helpers import get_logger

logger = get_logger("oracle")


def _check_cap(g: Graph, cap: Optional[int], default: int, what: str) -> None:
    limit = default if cap is None else cap
    if g.vertex_count > limit:
        raise OracleLimitError(
            f"{what} refuses n={g.vertex_count} (cap {limit}); raise the cap explicitly if intended"
        )


def _mask_to_set(mask: int) -> VertexSet:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _closure_mask(g: Graph, s_mask: int) -> int:
    """Power domination closure on bitmasks."""
    nbr = g.neighbor_masks
    closed = g.closed_masks
    colored = 0
    rest = s_mask
    while rest:
        low = rest & -rest
        colored |= closed[low.bit_length() - 1]
        rest ^= low
    full = (1 << g.vertex_count) - 1
    changed = True
    while changed and colored != full:
        changed = False
        rest = colored
        while rest:
            low = rest & -rest
            rest ^= low
            open_nbrs = nbr[low.bit_length() - 1] & ~colored
            if open_nbrs and open_nbrs & (open_nbrs - 1) == 0:
                colored |= open_nbrs
                changed = True
    return colored


def brute_force_gamma_p(g: Graph, cap: Optional[int] = None) -> Tuple[int, VertexSet]:
    """
    Power domination number by enumeration.

    Subsets are tried by increasing size in lexicographic index order, so the
    witness is the lexicographically least optimum.

    Raises:
        OracleLimitError: n above the cap (FORTCOVER_ORACLE_CAP, default 20)
    """
    _check_cap(g, cap, config.ORACLE_CAP, "brute_force_gamma_p")
    n = g.vertex_count
    if n == 0:
        return 0, frozenset()
    full = (1 << n) - 1
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if _closure_mask(g, mask) == full:
                return size, frozenset(combo)
    raise AssertionError("V is always power dominating")


def _fort_masks(g: Graph) -> List[int]:
    """All forts as bitmasks, with their closed neighborhoods built incrementally."""
    n = g.vertex_count
    nbr = g.neighbor_masks
    closed = g.closed_masks
    nbhd = [0] * (1 << n)
    forts = []
    for mask in range(1, 1 << n):
        low = mask & -mask
        nbhd[mask] = nbhd[mask ^ low] | closed[low.bit_length() - 1]
        boundary = nbhd[mask] & ~mask
        ok = True
        while boundary:
            b = boundary & -boundary
            boundary ^= b
            inside = nbr[b.bit_length() - 1] & mask
            if inside & (inside - 1) == 0:
                ok = False
                break
        if ok:
            forts.append(mask)
    return forts


def enumerate_forts(g: Graph, cap: Optional[int] = None) -> List[VertexSet]:
    """Every fort of g."""
    _check_cap(g, cap, config.ENUM_CAP, "enumerate_forts")
    return [_mask_to_set(mask) for mask in _fort_masks(g)]


def _fort_neighborhood_masks(g: Graph) -> Set[int]:
    closed = g.closed_masks
    out = set()
    for fort in _fort_masks(g):
        nb = 0
        rest = fort
        while rest:
            low = rest & -rest
            rest ^= low
            nb |= closed[low.bit_length() - 1]
        out.add(nb)
    return out


def enumerate_fort_neighborhoods(g: Graph, cap: Optional[int] = None) -> Set[VertexSet]:
    """The family of all fort neighborhoods N[F]."""
    _check_cap(g, cap, config.ENUM_CAP, "enumerate_fort_neighborhoods")
    return {_mask_to_set(mask) for mask in _fort_neighborhood_masks(g)}


def enumerate_minimal_fort_neighborhoods(g: Graph, cap: Optional[int] = None) -> Set[VertexSet]:
    """Inclusion-minimal fort neighborhoods."""
    _check_cap(g, cap, config.ENUM_CAP, "enumerate_minimal_fort_neighborhoods")
    by_size = sorted(_fort_neighborhood_masks(g), key=lambda mask: (mask.bit_count(), mask))
    minimal: List[int] = []
    for mask in by_size:
        if not any(kept & mask == kept for kept in minimal):
            minimal.append(mask)
    logger.debug(f"{len(by_size)} fort neighborhoods, {len(minimal)} minimal")
    return {_mask_to_set(mask) for mask in minimal}


def min_weight_fort_neighborhood_oracle(
    g: Graph,
    w: Weights,
    containing: Optional[int] = None,
    cap: Optional[int] = None,
) -> Optional[Tuple[Fraction, VertexSet]]:
    """
    Minimum total weight over all fort neighborhoods.

    Weights are summed as exact rationals. Ties go to the smaller set, then to the
    lexicographically least sorted index tuple. With containing=v only sets holding v
    are considered (the restricted problem); None is returned when no candidate exists.
    """
    _check_cap(g, cap, config.ENUM_CAP, "min_weight_fort_neighborhood_oracle")
    exact: Dict[int, Fraction] = {v: Fraction(x) for v, x in w.items()}
    best = None
    for mask in _fort_neighborhood_masks(g):
        if containing is not None and not (mask >> containing) & 1:
            continue
        members = _mask_to_set(mask)
        total = sum((exact.get(v, Fraction(0)) for v in members), Fraction(0))
        key = (total, len(members), tuple(sorted(members)))
        if best is None or key < best[0]:
            best = (key, members)
    if best is None:
        return None
    return best[0][0], best[1]
