"""
Infection model: power domination as an ordering problem.

s_v marks the chosen set; y_uv says v is observed through u, either because u is
chosen (domination) or because u forces v (propagation); x_v is the step at which v
becomes observed. Every vertex is chosen or observed through exactly one arc, arcs point
forward in time, and a force u -> v needs every other neighbor of u observed earlier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..core.graph import Graph, VertexSet, components, is_connected
from ..core.propagation import extend_to_power_dominating, is_power_dominating
from ..utils.errors import BackendError, StructuralError
from ..utils.logging_helpers import get_logger
from .backends import SolveStatus, SolverBackend
from .model import LinearModel, Relation

logger = get_logger("infection")


def check_restricted_eligible(g: Graph) -> None:
    """The junction-only variant needs a connected graph with a vertex of degree three."""
    if not is_connected(g) or g.max_degree < 3:
        raise StructuralError(
            "restricted infection model needs a connected graph with maximum degree >= 3"
        )


def build_model4(
    g: Graph,
    restricted: bool = False,
    cover_rows: Sequence[Iterable[int]] = (),
    lower_bound: int = 0,
) -> LinearModel:
    """
    Build the infection model.

    Steps run from 0 to |C| - 1 inside each component C, and the big-M of the order and
    witness rows is |C|. A chosen vertex sits at step 0. cover_rows are vertex sets every
    feasible set must hit (fort neighborhoods); lower_bound is a proven bound on the
    objective. Both only cut off sets that cannot be power dominating or optimal.
    """
    if restricted:
        check_restricted_eligible(g)

    size = [0] * g.vertex_count
    for comp in components(g):
        for v in comp:
            size[v] = len(comp)

    model = LinearModel("infection_restricted" if restricted else "infection")
    s = [model.add_binary(f"s_{v}") for v in g.vertices()]
    x = [model.add_integer(f"x_{v}", 0, size[v] - 1) for v in g.vertices()]
    y = {}
    for u in g.vertices():
        for v in g.adjacency[u]:
            y[u, v] = model.add_binary(f"y_{u}_{v}")
    model.set_objective([(s[v], 1.0) for v in g.vertices()])

    for v in g.vertices():
        terms = [(s[v], 1.0)] + [(y[u, v], 1.0) for u in g.adjacency[v]]
        model.add_constraint(terms, Relation.EQ, 1, f"assign_{v}")

    for v in g.vertices():
        if size[v] > 1:
            model.add_constraint({x[v]: 1, s[v]: size[v] - 1}, Relation.LE, size[v] - 1, f"start_{v}")

    for (u, v), arc in y.items():
        big = size[u]
        model.add_constraint({x[u]: 1, x[v]: -1, arc: big}, Relation.LE, big - 1, f"order_{u}_{v}")
        for w in g.adjacency[u]:
            if w == v:
                continue
            model.add_constraint(
                {x[w]: 1, x[v]: -1, arc: big, s[u]: -big}, Relation.LE, big - 1, f"witness_{u}_{v}_{w}"
            )

    if restricted:
        for v in g.vertices():
            if g.degree(v) <= 2:
                model.add_constraint({s[v]: 1}, Relation.EQ, 0, f"fix_{v}")

    for i, row in enumerate(cover_rows):
        members = sorted(v for v in set(row) if not restricted or g.degree(v) >= 3)
        if not members:
            raise ValueError(f"cover row {i} has no vertex the model may choose")
        model.add_constraint([(s[v], 1.0) for v in members], Relation.GE, 1, f"cover_{i}")

    if lower_bound > 0:
        model.add_constraint([(s[v], 1.0) for v in g.vertices()], Relation.GE, lower_bound, "bound")

    return model


@dataclass(frozen=True)
class InfectionResult:
    status: SolveStatus
    witness: Optional[VertexSet]
    lower_bound: Optional[float] = None

    @property
    def optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL


def solve_infection(
    g: Graph,
    backend: SolverBackend,
    restricted: bool = False,
    time_limit: Optional[float] = None,
    cover_rows: Sequence[Iterable[int]] = (),
    lower_bound: int = 0,
) -> InfectionResult:
    """
    Solve the infection model and return the chosen set.

    An optimal set is re-verified through the closure engine; a time-limited
    incumbent is completed to a power dominating set instead.
    """
    model = build_model4(g, restricted, cover_rows, lower_bound)
    logger.debug(f"{model.name}: {model.num_variables} variables, {model.num_constraints} constraints")
    solution = backend.solve(model, time_limit=time_limit)

    if solution.status == SolveStatus.INFEASIBLE:
        raise BackendError(f"{model.name} reported infeasible; the model always has a solution")
    if not solution.has_values:
        return InfectionResult(solution.status, None, solution.bound)

    chosen = frozenset(v for v in g.vertices() if model.value_of(solution.values, f"s_{v}") > 0.5)
    if solution.status == SolveStatus.OPTIMAL:
        if not is_power_dominating(g, chosen):
            raise BackendError(f"{model.name}: decoded set is not power dominating")
        return InfectionResult(solution.status, chosen, float(len(chosen)))
    return InfectionResult(solution.status, extend_to_power_dominating(g, chosen), solution.bound)
