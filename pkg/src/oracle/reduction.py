"""
3-CNF formulas and their reduction to the restricted minimum-weight fort
neighborhood problem.

The construction yields a graph, vertex weights, a target vertex u_m and a
threshold k+1 such that the formula is satisfiable exactly when some fort
neighborhood contains u_m and weighs less than k+1. It is used here as a
generator of adversarial test instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from ..core.graph import Graph, VertexSet, format_weights
from ..utils.errors import FormulaError
from .brute import min_weight_fort_neighborhood_oracle

Clause = Tuple[int, int, int]


@dataclass(frozen=True)
class CnfFormula:
    """Variables 1..k; literal +i is V_i, -i is its negation."""

    variable_count: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        for j, clause in enumerate(self.clauses, start=1):
            if len(clause) != 3:
                raise FormulaError(f"clause {j} has {len(clause)} literals, expected 3")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise FormulaError(f"clause {j}: literal {lit} outside 1..{self.variable_count}")

    @classmethod
    def from_clauses(cls, clauses: Iterable[Iterable[int]], variable_count: Optional[int] = None) -> "CnfFormula":
        normalized = tuple(tuple(int(lit) for lit in clause) for clause in clauses)
        if variable_count is None:
            variable_count = max((abs(lit) for clause in normalized for lit in clause), default=0)
        return cls(variable_count, normalized)

    def evaluate(self, assignment: Mapping[int, bool]) -> bool:
        return all(
            any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in self.clauses
        )

    def satisfying_assignment(self) -> Optional[Dict[int, bool]]:
        """First satisfying assignment in truth-table order, or None."""
        variables = range(1, self.variable_count + 1)
        for values in product((False, True), repeat=self.variable_count):
            assignment = dict(zip(variables, values))
            if self.evaluate(assignment):
                return assignment
        return None

    def is_satisfiable(self) -> bool:
        return self.satisfying_assignment() is not None

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.variable_count} {len(self.clauses)}"]
        lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in self.clauses)
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """
    Parse DIMACS CNF.

    'c' lines are comments, 'p cnf k l' is the header, clauses are literal runs
    terminated by 0 and may span lines; a '%' line ends the input.
    """
    header: Optional[Tuple[int, int]] = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"line {line_number}: bad header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormulaError(f"line {line_number}: bad header {line!r}") from None
            continue
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise FormulaError(f"line {line_number}: bad literal {token!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if header is None:
        raise FormulaError("missing 'p cnf' header")
    if len(clauses) != header[1]:
        raise FormulaError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))  # type: ignore[arg-type]


def read_dimacs(path: Union[str, Path]) -> CnfFormula:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class ReductionInstance:
    """Graph, weights, target vertex and threshold produced from a formula."""

    formula: CnfFormula
    graph: Graph
    weights: Dict[int, Fraction]
    target_vertex: int
    threshold: int

    def weights_text(self) -> str:
        return format_weights(self.weights, self.graph)

    def restricted_min_answer(self, cap: Optional[int] = None) -> Tuple[bool, Optional[VertexSet]]:
        """
        Brute-force the restricted problem: a fort neighborhood holding the target with
        weight below the threshold. Returns (answer, minimizer).
        """
        found = min_weight_fort_neighborhood_oracle(
            self.graph, self.weights, containing=self.target_vertex, cap=cap
        )
        if found is None:
            return False, None
        weight, members = found
        return weight < self.threshold, members

    def assignment_from(self, m: Iterable[int]) -> Dict[int, bool]:
        """Truth assignment read off a yes-certificate: V_i is true iff v_i lies in M."""
        members = set(m)
        g = self.graph
        return {
            i: g.index_of(f"v{i}") in members for i in range(1, self.formula.variable_count + 1)
        }


def build_sat_reduction(f: CnfFormula) -> ReductionInstance:
    """
    Build the reduction graph.

    Vertices: v_i, vbar_i, vhat_i per variable, c_j per clause, and u_m, u_mbar,
    u_f1, u_f2. Edges: literal vertex to every clause containing the literal; vhat_i
    to v_i, vbar_i, u_mbar and u_f2; c_j to u_mbar and u_f2; u_mbar-u_m, u_m-u_f2,
    u_m-u_f1. A literal repeated inside a clause contributes one edge. Weights: u_mbar
    gets k+1, every v_i and vbar_i gets 1, all others 0.
    """
    k = f.variable_count
    labels: List[str] = []
    for i in range(1, k + 1):
        labels.extend([f"v{i}", f"vbar{i}", f"vhat{i}"])
    labels.extend(f"c{j}" for j in range(1, len(f.clauses) + 1))
    labels.extend(["u_m", "u_mbar", "u_f1", "u_f2"])
    index = {label: i for i, label in enumerate(labels)}

    edges = set()

    def link(a: str, b: str) -> None:
        u, v = index[a], index[b]
        edges.add((min(u, v), max(u, v)))

    for j, clause in enumerate(f.clauses, start=1):
        for lit in clause:
            link(f"v{lit}" if lit > 0 else f"vbar{-lit}", f"c{j}")
        link(f"c{j}", "u_mbar")
        link(f"c{j}", "u_f2")
    for i in range(1, k + 1):
        for other in (f"v{i}", f"vbar{i}", "u_mbar", "u_f2"):
            link(f"vhat{i}", other)
    link("u_mbar", "u_m")
    link("u_m", "u_f2")
    link("u_m", "u_f1")

    graph = Graph.from_index_edges(len(labels), sorted(edges), labels)
    weights: Dict[int, Fraction] = {index["u_mbar"]: Fraction(k + 1)}
    for i in range(1, k + 1):
        weights[index[f"v{i}"]] = Fraction(1)
        weights[index[f"vbar{i}"]] = Fraction(1)
    return ReductionInstance(f, graph, weights, index["u_m"], k + 1)
