"""
Solver backends for LinearModel.

HighsBackend hands the whole model to scipy.optimize.milp (HiGHS). The bundled
BranchAndBoundBackend runs depth-first branch and bound over LP relaxations
solved with scipy.optimize.linprog, which keeps an independent exact engine
around for cross-checking.
"""

from __future__ import annotations

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from ..core import config
from ..utils.errors import BackendError, ConfigurationError
from ..utils.logging_helpers import get_logger
from .model import LinearModel, ModelArrays

logger = get_logger("milp")


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    LIMIT = "limit"


@dataclass
class Solution:
    """Backend answer; values is set on OPTIMAL and on LIMIT when an incumbent exists."""

    status: SolveStatus
    values: Optional[np.ndarray] = None
    objective: Optional[float] = None
    bound: Optional[float] = None

    @property
    def has_values(self) -> bool:
        return self.values is not None


class SolverBackend(ABC):
    """Solve a LinearModel to optimality (or its LP relaxation)."""

    name = "abstract"
    supports_incremental = False
    supports_relaxation = True

    @abstractmethod
    def solve(
        self, model: LinearModel, relax: bool = False, time_limit: Optional[float] = None
    ) -> Solution:
        """Minimize the model; relax=True drops integrality."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


def _empty_solution(model: LinearModel) -> Optional[Solution]:
    if model.num_variables:
        return None
    return Solution(SolveStatus.OPTIMAL, np.zeros(0), 0.0, 0.0)


def _round_integral(values: np.ndarray, arrays: ModelArrays) -> np.ndarray:
    out = np.array(values, dtype=float)
    mask = arrays.integrality.astype(bool)
    out[mask] = np.round(out[mask])
    return out


class HighsBackend(SolverBackend):
    """scipy.optimize.milp with a zero relative gap."""

    name = "highs"

    def __init__(self, mip_rel_gap: float = 0.0, presolve: bool = True):
        self.mip_rel_gap = mip_rel_gap
        self.presolve = presolve

    def solve(
        self, model: LinearModel, relax: bool = False, time_limit: Optional[float] = None
    ) -> Solution:
        trivial = _empty_solution(model)
        if trivial is not None:
            return trivial
        if time_limit is not None and time_limit <= 0:
            return Solution(SolveStatus.LIMIT)

        arrays = model.to_arrays(relax=relax)
        constraints = None
        if model.num_constraints:
            constraints = LinearConstraint(arrays.A, arrays.row_lower, arrays.row_upper)
        options = {"disp": False, "presolve": self.presolve, "mip_rel_gap": self.mip_rel_gap}
        if time_limit is not None:
            options["time_limit"] = float(time_limit)

        res = milp(
            arrays.c,
            integrality=arrays.integrality,
            bounds=Bounds(arrays.var_lower, arrays.var_upper),
            constraints=constraints,
            options=options,
        )
        bound = getattr(res, "mip_dual_bound", None)

        if res.status == 0:
            values = _round_integral(res.x, arrays)
            return Solution(SolveStatus.OPTIMAL, values, float(res.fun), bound)
        if res.status == 1:
            values = None if res.x is None else _round_integral(res.x, arrays)
            objective = None if res.x is None else float(res.fun)
            return Solution(SolveStatus.LIMIT, values, objective, bound)
        if res.status == 2:
            return Solution(SolveStatus.INFEASIBLE)
        raise BackendError(f"HiGHS failed on {model.name}: {res.message}")


class BranchAndBoundBackend(SolverBackend):
    """
    Depth-first branch and bound over linprog relaxations.

    Branches on the most fractional variable (ties ordered by a seeded permutation)
    and explores the nearer rounding first.
    """

    name = "bnb"

    def __init__(self, seed: int = 0, node_limit: int = 200_000, tol: float = config.INTEGRALITY_TOL):
        self.seed = seed
        self.node_limit = node_limit
        self.tol = tol

    @staticmethod
    def _split_rows(arrays: ModelArrays):
        A = arrays.A
        lo, hi = arrays.row_lower, arrays.row_upper
        eq = np.flatnonzero(np.isfinite(lo) & np.isfinite(hi) & (lo == hi))
        le = np.flatnonzero(np.isfinite(hi) & ~(np.isfinite(lo) & (lo == hi)))
        ge = np.flatnonzero(np.isfinite(lo) & ~(np.isfinite(hi) & (lo == hi)))

        blocks, rhs = [], []
        if le.size:
            blocks.append(A[le])
            rhs.append(hi[le])
        if ge.size:
            blocks.append(-A[ge])
            rhs.append(-lo[ge])
        A_ub = sparse.vstack(blocks).tocsr() if blocks else None
        b_ub = np.concatenate(rhs) if rhs else None
        A_eq = A[eq] if eq.size else None
        b_eq = lo[eq] if eq.size else None
        return A_ub, b_ub, A_eq, b_eq

    def solve(
        self, model: LinearModel, relax: bool = False, time_limit: Optional[float] = None
    ) -> Solution:
        trivial = _empty_solution(model)
        if trivial is not None:
            return trivial

        arrays = model.to_arrays(relax=relax)
        A_ub, b_ub, A_eq, b_eq = self._split_rows(arrays)
        integral = arrays.integrality.astype(bool)
        priority = np.random.default_rng(self.seed).permutation(model.num_variables)
        deadline = None if time_limit is None else time.monotonic() + time_limit

        def relaxation(lower: np.ndarray, upper: np.ndarray):
            return linprog(
                arrays.c,
                A_ub=A_ub,
                b_ub=b_ub,
                A_eq=A_eq,
                b_eq=b_eq,
                bounds=list(zip(lower, upper)),
                method="highs",
            )

        stack: List[Tuple[np.ndarray, np.ndarray]] = [(arrays.var_lower.copy(), arrays.var_upper.copy())]
        best_value = np.inf
        incumbent: Optional[np.ndarray] = None
        nodes = 0
        limited = False

        while stack:
            if nodes >= self.node_limit or (deadline is not None and time.monotonic() > deadline):
                limited = True
                break
            lower, upper = stack.pop()
            res = relaxation(lower, upper)
            nodes += 1
            if res.status == 2:
                continue
            if res.status != 0:
                raise BackendError(f"linprog failed on {model.name}: {res.message}")
            if res.fun >= best_value - 1e-9:
                continue

            x = res.x
            fractionality = np.where(integral, np.abs(x - np.round(x)), 0.0)
            if relax or fractionality.max(initial=0.0) <= self.tol:
                best_value = float(res.fun)
                incumbent = _round_integral(x, arrays) if not relax else np.array(x)
                if relax:
                    break
                continue

            candidates = np.flatnonzero(fractionality > self.tol)
            order = np.lexsort((priority[candidates], -fractionality[candidates]))
            i = candidates[order[0]]
            down_upper = upper.copy()
            down_upper[i] = np.floor(x[i])
            up_lower = lower.copy()
            up_lower[i] = np.ceil(x[i])
            down, up = (lower, down_upper), (up_lower, upper)
            # stack is LIFO: push the farther side first
            if x[i] - np.floor(x[i]) < 0.5:
                stack.extend([up, down])
            else:
                stack.extend([down, up])

        logger.debug(f"branch and bound on {model.name}: {nodes} nodes, best {best_value}")
        if limited:
            objective = None if incumbent is None else best_value
            return Solution(SolveStatus.LIMIT, incumbent, objective)
        if incumbent is None:
            return Solution(SolveStatus.INFEASIBLE)
        return Solution(SolveStatus.OPTIMAL, incumbent, best_value, best_value)


def get_backend(name: Optional[str] = None, seed: Optional[int] = None) -> SolverBackend:
    """Backend by name ("highs" or "bnb"); defaults to FORTCOVER_BACKEND."""
    name = (name or config.DEFAULT_BACKEND).lower()
    if name == "highs":
        return HighsBackend()
    if name == "bnb":
        return BranchAndBoundBackend(seed=config.SEED if seed is None else seed)
    raise ConfigurationError(f"unknown backend {name!r}; choose from {', '.join(config.BACKENDS)}")
