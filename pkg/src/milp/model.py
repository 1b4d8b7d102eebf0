"""
Backend-neutral description of an integer linear program.

A LinearModel holds named bounded variables, linear constraints and a linear
objective to minimize. Backends turn it into matrices with `to_arrays()`;
`to_lp_format()` writes CPLEX LP text for debugging with external solvers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import numpy as np
from scipy import sparse

Terms = Union[Mapping[int, float], Iterable[Tuple[int, float]]]


class VarKind(str, Enum):
    BINARY = "binary"
    INTEGER = "integer"
    CONTINUOUS = "continuous"


class Relation(str, Enum):
    LE = "<="
    GE = ">="
    EQ = "="


@dataclass(frozen=True)
class Variable:
    name: str
    kind: VarKind
    lower: float = 0.0
    upper: float = 1.0


@dataclass(frozen=True)
class Constraint:
    terms: Tuple[Tuple[int, float], ...]
    relation: Relation
    rhs: float
    name: str = ""


@dataclass(frozen=True)
class ModelArrays:
    """Dense vectors and a CSR matrix; rows satisfy row_lower <= A x <= row_upper."""

    c: np.ndarray
    A: sparse.csr_array
    row_lower: np.ndarray
    row_upper: np.ndarray
    var_lower: np.ndarray
    var_upper: np.ndarray
    integrality: np.ndarray


class LinearModel:
    """Minimization model built variable by variable, constraint by constraint."""

    def __init__(self, name: str = "model"):
        self.name = name
        self.variables: List[Variable] = []
        self.constraints: List[Constraint] = []
        self.objective: Dict[int, float] = {}
        self._by_name: Dict[str, int] = {}

    # -------------------------
    # Building
    # -------------------------
    def _add(self, var: Variable) -> int:
        if var.name in self._by_name:
            raise ValueError(f"duplicate variable {var.name!r}")
        if not (np.isfinite(var.lower) and np.isfinite(var.upper)) or var.lower > var.upper:
            raise ValueError(f"variable {var.name!r} needs finite bounds lower <= upper")
        self._by_name[var.name] = len(self.variables)
        self.variables.append(var)
        return len(self.variables) - 1

    def add_binary(self, name: str) -> int:
        return self._add(Variable(name, VarKind.BINARY, 0.0, 1.0))

    def add_integer(self, name: str, lower: int, upper: int) -> int:
        return self._add(Variable(name, VarKind.INTEGER, float(lower), float(upper)))

    def add_continuous(self, name: str, lower: float, upper: float) -> int:
        return self._add(Variable(name, VarKind.CONTINUOUS, float(lower), float(upper)))

    def _normalize(self, terms: Terms) -> Tuple[Tuple[int, float], ...]:
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: Dict[int, float] = {}
        for idx, coef in items:
            if not 0 <= idx < len(self.variables):
                raise ValueError(f"term references undeclared variable index {idx}")
            merged[idx] = merged.get(idx, 0.0) + float(coef)
        return tuple((idx, coef) for idx, coef in sorted(merged.items()) if coef != 0.0)

    def add_constraint(self, terms: Terms, relation: Union[Relation, str], rhs: float, name: str = "") -> int:
        relation = Relation(relation)
        row = Constraint(self._normalize(terms), relation, float(rhs), name or f"c{len(self.constraints)}")
        self.constraints.append(row)
        return len(self.constraints) - 1

    def set_objective(self, terms: Terms) -> None:
        self.objective = dict(self._normalize(terms))

    # -------------------------
    # Queries
    # -------------------------
    def var(self, name: str) -> int:
        return self._by_name[name]

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    def value_of(self, values: np.ndarray, name: str) -> float:
        return float(values[self._by_name[name]])

    def objective_value(self, values: np.ndarray) -> float:
        return float(sum(coef * values[idx] for idx, coef in self.objective.items()))

    def is_feasible(self, values: np.ndarray, tol: float = 1e-6) -> bool:
        """Check bounds, integrality and every constraint for an assignment."""
        for idx, var in enumerate(self.variables):
            x = values[idx]
            if x < var.lower - tol or x > var.upper + tol:
                return False
            if var.kind != VarKind.CONTINUOUS and abs(x - round(x)) > tol:
                return False
        for row in self.constraints:
            lhs = sum(coef * values[idx] for idx, coef in row.terms)
            if row.relation == Relation.LE and lhs > row.rhs + tol:
                return False
            if row.relation == Relation.GE and lhs < row.rhs - tol:
                return False
            if row.relation == Relation.EQ and abs(lhs - row.rhs) > tol:
                return False
        return True

    # -------------------------
    # Export
    # -------------------------
    def to_arrays(self, relax: bool = False) -> ModelArrays:
        n = len(self.variables)
        c = np.zeros(n)
        for idx, coef in self.objective.items():
            c[idx] = coef

        rows, cols, data = [], [], []
        row_lower = np.empty(len(self.constraints))
        row_upper = np.empty(len(self.constraints))
        for i, row in enumerate(self.constraints):
            for idx, coef in row.terms:
                rows.append(i)
                cols.append(idx)
                data.append(coef)
            row_lower[i] = row.rhs if row.relation in (Relation.GE, Relation.EQ) else -np.inf
            row_upper[i] = row.rhs if row.relation in (Relation.LE, Relation.EQ) else np.inf
        A = sparse.coo_array(
            (
                np.asarray(data, dtype=float),
                (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64)),
            ),
            shape=(len(self.constraints), n),
        ).tocsr()

        integrality = np.array(
            [0 if relax or v.kind == VarKind.CONTINUOUS else 1 for v in self.variables], dtype=int
        )
        return ModelArrays(
            c=c,
            A=A,
            row_lower=row_lower,
            row_upper=row_upper,
            var_lower=np.array([v.lower for v in self.variables]),
            var_upper=np.array([v.upper for v in self.variables]),
            integrality=integrality,
        )

    def to_lp_format(self) -> str:
        """CPLEX LP text."""
        names = [_lp_name(v.name) for v in self.variables]

        def expr(terms: Iterable[Tuple[int, float]]) -> str:
            parts = [f"{'+' if coef >= 0 else '-'} {_num(abs(coef))} {names[idx]}" for idx, coef in terms]
            return " ".join(parts) if parts else "0 " + (names[0] if names else "")

        lines = [f"\\ {self.name}", "Minimize", f" obj: {expr(sorted(self.objective.items()))}", "Subject To"]
        for row in self.constraints:
            lines.append(f" {_lp_name(row.name)}: {expr(row.terms)} {row.relation.value} {_num(row.rhs)}")

        lines.append("Bounds")
        for name, var in zip(names, self.variables):
            if var.kind != VarKind.BINARY:
                lines.append(f" {_num(var.lower)} <= {name} <= {_num(var.upper)}")
        binaries = [name for name, v in zip(names, self.variables) if v.kind == VarKind.BINARY]
        generals = [name for name, v in zip(names, self.variables) if v.kind == VarKind.INTEGER]
        if binaries:
            lines.append("Binary")
            lines.extend(f" {name}" for name in binaries)
        if generals:
            lines.append("General")
            lines.extend(f" {name}" for name in generals)
        lines.append("End")
        return "\n".join(lines) + "\n"


def _lp_name(name: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_.]", "_", name)
    return cleaned if cleaned and not cleaned[0].isdigit() else f"x_{cleaned}"


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))
