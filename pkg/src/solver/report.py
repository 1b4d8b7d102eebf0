"""
Solve reports and witness certificates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..core.graph import Graph, VertexSet
from ..core.propagation import Force, power_domination_closure, verify_closure_certificate
from ..utils.errors import BackendError


def certify_witness(g: Graph, witness: VertexSet) -> Tuple[Force, ...]:
    """Force sequence proving the witness power dominating; BackendError otherwise."""
    closure = power_domination_closure(g, witness)
    if not closure.is_complete(g):
        missing = g.labels_of(closure.uncolored(g))[:5]
        raise BackendError(f"witness leaves vertices uncolored, e.g. {missing}")
    if not verify_closure_certificate(g, witness, closure):
        raise BackendError("closure certificate failed replay")
    return closure.force_sequence


@dataclass
class SolveReport:
    """Result of one solve: the witness, its certificate and run statistics."""

    graph: Graph = field(repr=False)
    method: str
    witness: VertexSet
    certificate: Tuple[Force, ...] = ()
    optimal: bool = True
    lower_bound: Optional[int] = None
    junction_count: int = 0
    initial_constraints: int = 0
    separations_performed: int = 0
    timings_ms: Dict[str, float] = field(default_factory=dict)
    separation: Optional[str] = None
    backend: Optional[str] = None
    special_counts: Dict[str, int] = field(default_factory=dict)
    bound_history: List[int] = field(default_factory=list)
    components: int = 1
    seed: Optional[int] = None

    @property
    def gamma_p(self) -> int:
        return len(self.witness)

    @property
    def witness_labels(self) -> List[str]:
        return self.graph.labels_of(self.witness)

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "graph": {"n": g.vertex_count, "m": g.edge_count, "junctions": self.junction_count},
            "method": self.method,
            "gamma_p": self.gamma_p,
            "witness": self.witness_labels,
            "initial_constraints": self.initial_constraints,
            "separations": self.separations_performed,
            "timings_ms": {k: round(v, 3) for k, v in self.timings_ms.items()},
            "certificate": [[g.labels[a], g.labels[b]] for a, b in self.certificate],
            "optimal": self.optimal,
            "lower_bound": self.lower_bound,
            "separation": self.separation,
            "backend": self.backend,
            "special_counts": dict(self.special_counts),
            "bound_history": list(self.bound_history),
            "components": self.components,
            "seed": self.seed,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary_lines(self) -> List[str]:
        g = self.graph
        status = "optimal" if self.optimal else f"time limit (lower bound {self.lower_bound})"
        lines = [
            f"graph        n={g.vertex_count} m={g.edge_count} junctions={self.junction_count}",
            f"method       {self.method}" + (f" / {self.separation}" if self.separation else ""),
            f"gamma_P      {self.gamma_p} ({status})",
            f"witness      {' '.join(self.witness_labels)}",
        ]
        if self.method == "setcover":
            lines.append(
                f"constraints  initial={self.initial_constraints} separations={self.separations_performed}"
            )
        if self.timings_ms:
            phases = ", ".join(f"{k}={v:.1f}ms" for k, v in self.timings_ms.items())
            lines.append(f"timings      {phases}")
        return lines
