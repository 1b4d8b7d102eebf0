"""
Integer programs that find fort neighborhoods.

Both models are defined over the junction partition. Each junction v gets M_v (v in M)
and F_v (v in the interior fort); each junction path P gets F_P (P inside the fort,
hence inside M). The minimum-weight model finds a lightest fort neighborhood; the
minimum-cardinality model finds a smallest one whose weight stays at most 1 - epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..core import config
from ..core.graph import Weights
from ..core.partition import JunctionPartition
from ..core.propagation import FortNeighborhood, is_fort_neighborhood
from ..utils.errors import BackendError, StructuralError
from ..utils.logging_helpers import get_logger
from .backends import SolveStatus, SolverBackend
from .model import LinearModel, Relation

logger = get_logger("separation")


@dataclass(frozen=True)
class SeparationResult:
    """Outcome of one separation call; found implies violated_weight < 1."""

    found: bool
    neighborhood: Optional[FortNeighborhood] = None
    violated_weight: Optional[Fraction] = None
    cardinality: int = 0
    status: SolveStatus = SolveStatus.OPTIMAL


def _m(v: int) -> str:
    return f"M_{v}"


def _f(v: int) -> str:
    return f"F_{v}"


def _fp(p: int) -> str:
    return f"FP_{p}"


def _path_weight(partition: JunctionPartition, p: int, w: Weights) -> float:
    return float(sum(w.get(v, 0) for v in partition.paths[p].vertices))


def _fort_neighborhood_constraints(partition: JunctionPartition, name: str) -> LinearModel:
    """Variables and the shared constraint families of the fort neighborhood models."""
    if partition.is_junction_free:
        raise StructuralError("fort neighborhood models need at least one junction")

    g = partition.graph
    junctions = partition.junction_list
    model = LinearModel(name)
    for v in junctions:
        model.add_binary(_m(v))
        model.add_binary(_f(v))
    for path in partition.paths:
        model.add_binary(_fp(path.index))

    # M is nonempty
    nonempty = [(model.var(_m(v)), 1.0) for v in junctions]
    nonempty += [(model.var(_fp(path.index)), 1.0) for path in partition.paths]
    model.add_constraint(nonempty, Relation.GE, 1, "nonempty")

    for v in junctions:
        fv = model.var(_f(v))
        # a fort junction puts its junction closed neighborhood into M
        for u in (v,) + tuple(x for x in g.adjacency[v] if x in partition.junctions):
            model.add_constraint({fv: 1, model.var(_m(u)): -1}, Relation.LE, 0, f"fort_nbr_{v}_{u}")
        # ... and pulls every adjacent path into the fort
        for p in partition.paths_at.get(v, ()):
            model.add_constraint({fv: 1, model.var(_fp(p)): -1}, Relation.LE, 0, f"fort_path_{v}_{p}")

    for path in partition.paths:
        fp = model.var(_fp(path.index))
        for v in sorted(path.neighborhood):
            model.add_constraint({fp: 1, model.var(_m(v)): -1}, Relation.LE, 0, f"path_nbr_{path.index}_{v}")

    # 2 (M_v - F_v) <= fort neighbors of v
    for v in junctions:
        terms: Dict[int, float] = {model.var(_m(v)): 2.0, model.var(_f(v)): -2.0}
        for u in g.adjacency[v]:
            if u in partition.junctions:
                terms[model.var(_f(u))] = terms.get(model.var(_f(u)), 0.0) - 1.0
        for p in partition.paths_at.get(v, ()):
            contacts = partition.contacts(v, partition.paths[p])
            terms[model.var(_fp(p))] = terms.get(model.var(_fp(p)), 0.0) - float(contacts)
        model.add_constraint(terms, Relation.LE, 0, f"boundary_{v}")

    return model


def _weight_terms(model: LinearModel, partition: JunctionPartition, w: Weights) -> List[Tuple[int, float]]:
    terms = [(model.var(_m(v)), float(w.get(v, 0))) for v in partition.junction_list]
    terms += [(model.var(_fp(p.index)), _path_weight(partition, p.index, w)) for p in partition.paths]
    return terms


def build_model2(partition: JunctionPartition, w: Weights) -> LinearModel:
    """Minimum-weight fort neighborhood: minimize sum of w over M."""
    model = _fort_neighborhood_constraints(partition, "min_weight_fort_neighborhood")
    model.set_objective(_weight_terms(model, partition, w))
    return model


def build_model3(partition: JunctionPartition, w: Weights, epsilon) -> LinearModel:
    """Minimum-cardinality fort neighborhood with weight at most 1 - epsilon."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    model = _fort_neighborhood_constraints(partition, "min_cardinality_fort_neighborhood")
    objective = [(model.var(_m(v)), 1.0) for v in partition.junction_list]
    objective += [(model.var(_fp(p.index)), float(len(p))) for p in partition.paths]
    model.set_objective(objective)
    model.add_constraint(_weight_terms(model, partition, w), Relation.LE, float(1 - epsilon), "weight_cap")
    return model


def default_epsilon(w: Weights) -> Fraction:
    """1/2 for 0/1 weights (weight below one means zero), otherwise a small constant."""
    if all(x in (0, 1) for x in w.values()):
        return config.EPSILON_INTEGER
    return config.EPSILON_FRACTIONAL


def decode_fort_neighborhood(
    model: LinearModel, partition: JunctionPartition, values
) -> FortNeighborhood:
    """Read M off an assignment and re-verify it combinatorially."""
    members = {v for v in partition.junction_list if model.value_of(values, _m(v)) > 0.5}
    for path in partition.paths:
        if model.value_of(values, _fp(path.index)) > 0.5:
            members.update(path.vertices)
    certificate = is_fort_neighborhood(partition.graph, partition, members)
    if certificate is None:
        raise BackendError(f"{model.name}: decoded set failed fort neighborhood verification")
    return certificate


def _run(
    model: LinearModel,
    backend: SolverBackend,
    partition: JunctionPartition,
    w: Weights,
    origin: str,
    time_limit: Optional[float],
) -> SeparationResult:
    solution = backend.solve(model, time_limit=time_limit)
    if solution.status == SolveStatus.INFEASIBLE or not solution.has_values:
        return SeparationResult(found=False, status=solution.status)

    neighborhood = decode_fort_neighborhood(model, partition, solution.values).tagged(origin)
    weight = Fraction(neighborhood.weight({v: Fraction(x) for v, x in w.items()}))
    logger.debug(f"{model.name}: |M|={len(neighborhood)} weight={weight} status={solution.status.value}")
    return SeparationResult(
        found=weight < 1,
        neighborhood=neighborhood,
        violated_weight=weight,
        cardinality=len(neighborhood),
        status=solution.status,
    )


def solve_min_weight_fn(
    backend: SolverBackend,
    partition: JunctionPartition,
    w: Weights,
    time_limit: Optional[float] = None,
) -> SeparationResult:
    """Lightest fort neighborhood; found when its weight is below one."""
    return _run(build_model2(partition, w), backend, partition, w, "model2", time_limit)


def solve_min_card_fn(
    backend: SolverBackend,
    partition: JunctionPartition,
    w: Weights,
    epsilon=None,
    time_limit: Optional[float] = None,
) -> SeparationResult:
    """
    Smallest fort neighborhood of weight at most 1 - epsilon.

    Infeasible means no fort neighborhood that light exists. epsilon defaults to
    default_epsilon(w).
    """
    if epsilon is None:
        epsilon = default_epsilon(w)
    model = build_model3(partition, w, epsilon)
    return _run(model, backend, partition, w, "model3", time_limit)
