"""
Set-cover row generation for the power domination number.

The master problem picks a smallest vertex set that hits every fort neighborhood
collected so far. Each round solves the master to integer optimality and asks the
separation routine for a fort neighborhood the incumbent misses; that neighborhood
becomes a new cover row.

Termination: each round adds at least one row violated by the current incumbent, and rows are
drawn from the finite family of fort neighborhoods, so no row is added twice and the
loop ends. An incumbent that misses no fort neighborhood is power dominating, and since
the master relaxes the full cover model it is also minimum.

Components of maximum degree two (paths and cycles) are settled with one vertex each.
With junction restriction on, only junctions may be chosen and every row is cut down to
the junctions it contains; a connected graph with a junction always has a minimum power
dominating set made of junctions.
"""

from __future__ import annotations

import copy
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set

import numpy as np

from ..core import config
from ..core.graph import Graph, VertexSet, components
from ..core.partition import JunctionPartition, junction_partition
from ..core.propagation import (
    FortNeighborhood,
    complement_fort_separation,
    extend_to_power_dominating,
    split_fort_neighborhood,
)
from ..milp.backends import SolveStatus, SolverBackend, get_backend
from ..milp.model import LinearModel, Relation
from ..milp.separation import solve_min_card_fn, solve_min_weight_fn
from ..utils.errors import BackendError, GraphValidationError
from ..utils.logging_helpers import get_logger, timed_step
from .options import SolveOptions
from .report import SolveReport, certify_witness
from .special import SPECIAL_TYPES, detect_special_fns, special_counts

logger = get_logger("setcover")


class _DeadlineReached(Exception):
    pass


def _remaining(deadline: Optional[float]) -> Optional[float]:
    if deadline is None:
        return None
    left = deadline - time.monotonic()
    if left <= 0:
        raise _DeadlineReached()
    return left


@dataclass
class ComponentResult:
    """Outcome for one connected component, in original vertex indices."""

    index: int
    witness: VertexSet
    optimal: bool
    lower_bound: int
    junction_count: int = 0
    initial_constraints: int = 0
    separations: int = 0
    special_counts: Dict[str, int] = field(default_factory=dict)
    bound_history: List[int] = field(default_factory=list)
    timings_ms: Dict[str, float] = field(default_factory=dict)
    # master rows in original indices
    rows: List[VertexSet] = field(default_factory=list)


class CoverMaster:
    """Accumulated cover rows over a fixed candidate set."""

    def __init__(self, candidates: Sequence[int]):
        self.candidates = tuple(candidates)
        self.rows: List[VertexSet] = []
        self._seen: Set[VertexSet] = set()

    def add(self, row: VertexSet) -> bool:
        """Add a row; False when it is already present."""
        row = frozenset(row)
        if not row:
            raise AssertionError("cover row without candidate vertices")
        if row in self._seen:
            return False
        self._seen.add(row)
        self.rows.append(row)
        return True

    def model(self) -> LinearModel:
        model = LinearModel("cover_master")
        for v in self.candidates:
            model.add_binary(f"s_{v}")
        model.set_objective([(i, 1.0) for i in range(len(self.candidates))])
        for i, row in enumerate(self.rows):
            model.add_constraint([(model.var(f"s_{v}"), 1.0) for v in sorted(row)], Relation.GE, 1, f"cover_{i}")
        return model

    def point(self, values: np.ndarray) -> Dict[int, float]:
        return {v: float(values[i]) for i, v in enumerate(self.candidates)}

    def chosen(self, values: np.ndarray) -> VertexSet:
        return frozenset(v for i, v in enumerate(self.candidates) if values[i] > 0.5)


class Separator:
    """
    Find fort neighborhoods missed by an integer incumbent, per the separation mode.

    In closure mode cuts() returns several rows per round: the complement neighborhood of
    the incumbent, plus the complement neighborhoods of the incumbent grown by one vertex
    of it, all split into the connected pieces of G[M]. Every row misses the incumbent.
    """

    def __init__(
        self,
        g: Graph,
        partition: JunctionPartition,
        backend: SolverBackend,
        mode: str,
        epsilon=None,
        deadline: Optional[float] = None,
        repair_pool: Optional[VertexSet] = None,
    ):
        self.g = g
        self.partition = partition
        self.backend = backend
        self.mode = mode
        self.epsilon = epsilon if epsilon is not None else config.EPSILON_INTEGER
        self.deadline = deadline
        # vertices tried as one-vertex repairs; None allows all
        self.repair_pool = repair_pool

    def _weights(self, incumbent: VertexSet) -> Dict[int, int]:
        return {v: int(v in incumbent) for v in self.g.vertices()}

    def _model3(self, incumbent: VertexSet):
        return solve_min_card_fn(
            self.backend, self.partition, self._weights(incumbent),
            epsilon=self.epsilon, time_limit=_remaining(self.deadline),
        )

    def _closure_cuts(self, incumbent: VertexSet) -> List[FortNeighborhood]:
        first = complement_fort_separation(self.g, incumbent, self.partition)
        if first is None:
            return []
        cuts = [first]
        seen = {first.vertices}

        def keep(fn: FortNeighborhood) -> None:
            for piece in split_fort_neighborhood(self.g, self.partition, fn):
                if piece.vertices not in seen:
                    seen.add(piece.vertices)
                    cuts.append(piece)

        keep(first)
        pool = [v for v in sorted(first.vertices) if self.repair_pool is None or v in self.repair_pool]
        for x in pool[: config.CLOSURE_REPAIR_CUTS]:
            _remaining(self.deadline)
            repaired = complement_fort_separation(self.g, incumbent | {x}, self.partition)
            if repaired is not None:
                keep(repaired)
        return cuts

    def cuts(self, incumbent: VertexSet) -> List[FortNeighborhood]:
        """All rows for this round, first the one __call__ returns; empty when S is power dominating."""
        if self.mode == "closure":
            return self._closure_cuts(incumbent)
        fn = self(incumbent)
        return [] if fn is None else [fn]

    def __call__(self, incumbent: VertexSet) -> Optional[FortNeighborhood]:
        if self.mode == "closure":
            return complement_fort_separation(self.g, incumbent, self.partition)

        if self.mode == "closure_then_model3":
            fallback = complement_fort_separation(self.g, incumbent, self.partition)
            if fallback is None:
                return None
            result = self._model3(incumbent)
            return result.neighborhood if result.found else fallback

        if self.mode == "model2":
            result = solve_min_weight_fn(
                self.backend, self.partition, self._weights(incumbent),
                time_limit=_remaining(self.deadline),
            )
        else:
            result = self._model3(incumbent)
        if result.found:
            return result.neighborhood
        if result.status == SolveStatus.LIMIT:
            raise _DeadlineReached()
        return None


def _solve_component(
    index: int,
    g: Graph,
    comp: VertexSet,
    opts: SolveOptions,
    backend: SolverBackend,
    deadline: Optional[float],
) -> ComponentResult:
    sub, mapping = g.induced_subgraph(comp)
    timings: Dict[str, float] = {}

    if sub.max_degree <= 2:
        return ComponentResult(
            index, frozenset({mapping[0]}), True, 1,
            special_counts={kind: 0 for kind in SPECIAL_TYPES}, bound_history=[1],
        )

    with timed_step("partition", timings):
        partition = junction_partition(sub)
    restrict = opts.restrict_to_junctions
    junctions = partition.junctions

    def project(fn: FortNeighborhood) -> VertexSet:
        return fn.vertices & junctions if restrict else fn.vertices

    master = CoverMaster(partition.junction_list if restrict else tuple(sub.vertices()))
    special: List[FortNeighborhood] = []
    with timed_step("init", timings):
        if opts.init_special_fns:
            special = detect_special_fns(partition)
            for fn in special:
                master.add(project(fn))

    separator = Separator(
        sub, partition, backend, opts.separation, opts.epsilon, deadline,
        repair_pool=junctions if restrict else None,
    )
    incumbent: VertexSet = frozenset()
    lower = 1
    history: List[int] = []
    separations = 0
    optimal = False

    try:
        for round_number in range(opts.lp_rounds):
            with timed_step("master", timings):
                solution = backend.solve(master.model(), relax=True, time_limit=_remaining(deadline))
            if solution.status != SolveStatus.OPTIMAL:
                break
            lower = max(lower, math.ceil(solution.objective - config.INTEGRALITY_TOL))
            point = master.point(solution.values)
            weights = {v: point.get(v, 0.0) for v in sub.vertices()}
            with timed_step("separation", timings):
                result = solve_min_card_fn(
                    backend, partition, weights,
                    epsilon=config.EPSILON_FRACTIONAL, time_limit=_remaining(deadline),
                )
            if not result.found or not master.add(project(result.neighborhood.tagged("lp"))):
                break
            separations += 1
            logger.debug(f"component {index} lp round {round_number}: bound {solution.objective:.4f}")

        while True:
            with timed_step("master", timings):
                solution = backend.solve(master.model(), time_limit=_remaining(deadline))
            if solution.status == SolveStatus.LIMIT:
                if solution.has_values:
                    incumbent = master.chosen(solution.values)
                raise _DeadlineReached()
            if solution.status == SolveStatus.INFEASIBLE:
                raise BackendError("cover master reported infeasible")

            incumbent = master.chosen(solution.values)
            lower = max(lower, len(incumbent))
            history.append(len(incumbent))
            with timed_step("separation", timings):
                cuts = separator.cuts(incumbent)
            logger.debug(
                f"component {index} round {len(history)}: bound {len(incumbent)}, "
                f"cuts {[len(fn) for fn in cuts]}"
            )
            if not cuts:
                optimal = True
                break
            added = sum(1 for fn in cuts if master.add(project(fn)))
            if not added:
                raise BackendError("separation returned a fort neighborhood already in the master")
            separations += added
    except _DeadlineReached:
        logger.warning(f"component {index}: time limit reached with lower bound {lower}")

    witness = incumbent if optimal else extend_to_power_dominating(sub, incumbent)
    logger.info(
        f"component {index}: n={sub.vertex_count} J={len(junctions)} gamma_P={len(witness)} "
        f"init={len(special)} separations={separations}" + ("" if optimal else " (not optimal)")
    )
    return ComponentResult(
        index=index,
        witness=frozenset(mapping[v] for v in witness),
        optimal=optimal,
        lower_bound=lower,
        junction_count=len(junctions),
        initial_constraints=len(special),
        separations=separations,
        special_counts=special_counts(special),
        bound_history=history,
        timings_ms=timings,
        rows=[frozenset(mapping[v] for v in row) for row in master.rows],
    )


def _solve_components(
    g: Graph, opts: SolveOptions, backend: Optional[SolverBackend]
) -> List[ComponentResult]:
    deadline = None if opts.time_limit is None else time.monotonic() + opts.time_limit

    make_backend: Callable[[], SolverBackend]
    if backend is not None:
        make_backend = lambda: copy.copy(backend)  # noqa: E731
    else:
        make_backend = lambda: get_backend(opts.backend, opts.seed)  # noqa: E731

    comps = components(g)
    if opts.workers > 1 and len(comps) > 1:
        with ThreadPoolExecutor(max_workers=opts.workers) as pool:
            futures = [
                pool.submit(_solve_component, i, g, comp, opts, make_backend(), deadline)
                for i, comp in enumerate(comps)
            ]
            results = [future.result() for future in futures]
    else:
        shared = backend if backend is not None else make_backend()
        results = [_solve_component(i, g, comp, opts, shared, deadline) for i, comp in enumerate(comps)]
    return results


@dataclass(frozen=True)
class CoverSeed:
    """Rows every feasible set must hit, and a proven lower bound on their minimum size."""

    rows: List[VertexSet]
    lower_bound: int
    optimal: bool


def cover_seed(
    g: Graph, opts: Optional[SolveOptions] = None, backend: Optional[SolverBackend] = None
) -> CoverSeed:
    """
    Run set-cover row generation and keep its rows rather than its answer.

    With junction restriction on, rows hold junctions only and bind junction-only sets;
    off, they bind every power dominating set. The bound holds either way.
    """
    if g.vertex_count == 0:
        raise GraphValidationError("graph has no vertices")
    opts = opts or SolveOptions(method="setcover")
    results = _solve_components(g, opts, backend)
    rows = [row for result in results for row in result.rows]
    optimal = all(r.optimal for r in results)
    lower = sum(len(r.witness) if r.optimal else r.lower_bound for r in results)
    logger.debug(f"cover seed: {len(rows)} rows, lower bound {lower}")
    return CoverSeed(rows, lower, optimal)


def solve_set_cover(
    g: Graph, opts: Optional[SolveOptions] = None, backend: Optional[SolverBackend] = None
) -> SolveReport:
    """Power domination number by set-cover row generation, one component at a time."""
    if g.vertex_count == 0:
        raise GraphValidationError("graph has no vertices")
    opts = opts or SolveOptions(method="setcover")
    results = _solve_components(g, opts, backend)

    timings: Dict[str, float] = {}
    counts = {kind: 0 for kind in SPECIAL_TYPES}
    history: List[int] = []
    for result in results:
        for phase, ms in result.timings_ms.items():
            timings[phase] = timings.get(phase, 0.0) + ms
        for kind, count in result.special_counts.items():
            counts[kind] += count
        history.extend(result.bound_history)

    witness = frozenset().union(*(r.witness for r in results))
    with timed_step("certificate", timings):
        certificate = certify_witness(g, witness)
    optimal = all(r.optimal for r in results)

    return SolveReport(
        graph=g,
        method="setcover",
        witness=witness,
        certificate=certificate,
        optimal=optimal,
        lower_bound=sum(r.lower_bound for r in results) if not optimal else len(witness),
        junction_count=sum(r.junction_count for r in results),
        initial_constraints=sum(r.initial_constraints for r in results),
        separations_performed=sum(r.separations for r in results),
        timings_ms=timings,
        separation=opts.separation,
        backend=backend.name if backend is not None else opts.backend,
        special_counts=counts,
        bound_history=history,
        components=len(results),
        seed=opts.seed,
    )
