"""
Method dispatch: one entry point for every way of computing gamma_P.
"""

from __future__ import annotations

import math
import time
from typing import Dict, Optional

from ..core.graph import Graph
from ..core.propagation import extend_to_power_dominating
from ..milp.backends import SolverBackend, get_backend
from ..milp.infection import check_restricted_eligible, solve_infection
from ..oracle.brute import brute_force_gamma_p
from ..utils.errors import GraphValidationError
from ..utils.logging_helpers import get_logger, timed_step
from .options import SolveOptions
from .report import SolveReport, certify_witness
from .setcover import cover_seed, solve_set_cover

logger = get_logger("solver")


def _junction_count(g: Graph) -> int:
    return sum(1 for v in g.vertices() if g.degree(v) >= 3)


def solve(
    g: Graph, opts: Optional[SolveOptions] = None, backend: Optional[SolverBackend] = None
) -> SolveReport:
    """
    Compute a minimum power dominating set with the method named in opts.

    Raises:
        GraphValidationError: Empty graph
        StructuralError: infection_restricted on a disconnected graph or one without junctions
        OracleLimitError: bruteforce above opts.oracle_cap
    """
    if g.vertex_count == 0:
        raise GraphValidationError("graph has no vertices")
    opts = opts or SolveOptions.from_env()
    logger.debug(f"solving n={g.vertex_count} m={g.edge_count} with {opts.method}")

    if opts.method == "setcover":
        return solve_set_cover(g, opts, backend)

    timings: Dict[str, float] = {}
    optimal = True
    lower_bound: Optional[int] = None
    backend_name: Optional[str] = None

    if opts.method == "bruteforce":
        with timed_step("master", timings):
            size, witness = brute_force_gamma_p(g, cap=opts.oracle_cap)
        lower_bound = size
    else:
        backend = backend or get_backend(opts.backend, opts.seed)
        backend_name = backend.name
        restricted = opts.method == "infection_restricted"
        if restricted:
            check_restricted_eligible(g)
        deadline = None if opts.time_limit is None else time.monotonic() + opts.time_limit

        cover = None
        if opts.cover_rows:
            with timed_step("init", timings):
                cover = cover_seed(
                    g,
                    opts.with_overrides(method="setcover", restrict_to_junctions=restricted),
                    backend,
                )
            logger.debug(f"{opts.method}: {len(cover.rows)} cover rows, lower bound {cover.lower_bound}")

        time_left = None if deadline is None else max(0.0, deadline - time.monotonic())
        with timed_step("master", timings):
            result = solve_infection(
                g, backend, restricted=restricted, time_limit=time_left,
                cover_rows=cover.rows if cover else (),
                lower_bound=cover.lower_bound if cover else 0,
            )
        optimal = result.optimal
        witness = result.witness
        if witness is None:
            # time limit before any incumbent
            witness = extend_to_power_dominating(g, ())
        if result.lower_bound is not None:
            lower_bound = math.ceil(result.lower_bound - 1e-6)
        if not optimal:
            logger.warning(f"{opts.method}: time limit reached, lower bound {lower_bound}")

    with timed_step("certificate", timings):
        certificate = certify_witness(g, witness)

    return SolveReport(
        graph=g,
        method=opts.method,
        witness=frozenset(witness),
        certificate=certificate,
        optimal=optimal,
        lower_bound=lower_bound,
        junction_count=_junction_count(g),
        timings_ms=timings,
        backend=backend_name,
        seed=opts.seed,
    )
