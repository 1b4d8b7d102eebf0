"""LinearModel and the two solver backends."""

import numpy as np
import pytest

from src.milp.backends import (
    BranchAndBoundBackend,
    HighsBackend,
    SolveStatus,
    get_backend,
)
from src.milp.model import LinearModel, Relation, VarKind
from src.utils.errors import ConfigurationError

BACKENDS = [HighsBackend(), BranchAndBoundBackend(seed=3)]


def knapsack_cover() -> LinearModel:
    """min x0 + x1 + x2 subject to pairwise cover rows; optimum 2."""
    model = LinearModel("triangle_cover")
    for i in range(3):
        model.add_binary(f"x{i}")
    model.set_objective({0: 1, 1: 1, 2: 1})
    model.add_constraint({0: 1, 1: 1}, Relation.GE, 1, "ab")
    model.add_constraint({1: 1, 2: 1}, ">=", 1, "bc")
    model.add_constraint({0: 1, 2: 1}, Relation.GE, 1, "ac")
    return model


def test_model_bookkeeping():
    model = knapsack_cover()
    assert model.num_variables == 3
    assert model.num_constraints == 3
    assert model.var("x1") == 1
    assert model.variables[0].kind == VarKind.BINARY
    with pytest.raises(ValueError, match="duplicate"):
        model.add_binary("x0")
    with pytest.raises(ValueError, match="undeclared"):
        model.add_constraint({7: 1}, Relation.LE, 0)


def test_terms_are_merged_and_zeros_dropped():
    model = LinearModel()
    a = model.add_continuous("a", 0, 5)
    b = model.add_integer("b", -2, 2)
    model.add_constraint([(a, 1), (b, 2), (a, 1), (b, -2)], Relation.LE, 3)
    assert model.constraints[0].terms == ((a, 2.0),)
    assert model.constraints[0].name == "c0"


def test_to_arrays():
    arrays = knapsack_cover().to_arrays()
    assert arrays.A.shape == (3, 3)
    assert arrays.A.toarray().tolist() == [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert np.all(arrays.row_lower == 1)
    assert np.all(np.isinf(arrays.row_upper))
    assert arrays.integrality.tolist() == [1, 1, 1]
    assert knapsack_cover().to_arrays(relax=True).integrality.tolist() == [0, 0, 0]


def test_is_feasible():
    model = knapsack_cover()
    assert model.is_feasible(np.array([1.0, 1.0, 0.0]))
    assert not model.is_feasible(np.array([1.0, 0.0, 0.0]))
    assert not model.is_feasible(np.array([0.5, 0.5, 0.5]))


def test_lp_format():
    model = LinearModel("demo model")
    x = model.add_binary("M_3")
    y = model.add_integer("x 1", 0, 4)
    model.set_objective({x: 1, y: 2})
    model.add_constraint({x: 1, y: -1}, Relation.EQ, 0, "link")
    text = model.to_lp_format()
    assert text.splitlines()[:4] == ["\\ demo model", "Minimize", " obj: + 1 M_3 + 2 x_1", "Subject To"]
    assert " link: + 1 M_3 - 1 x_1 = 0" in text
    assert " 0 <= x_1 <= 4" in text
    assert "Binary\n M_3\n" in text
    assert "General\n x_1\n" in text
    assert text.endswith("End\n")


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.name)
def test_triangle_cover_optimum(backend):
    model = knapsack_cover()
    solution = backend.solve(model)
    assert solution.status == SolveStatus.OPTIMAL
    assert solution.objective == pytest.approx(2.0)
    assert model.objective_value(solution.values) == pytest.approx(2.0)
    assert model.is_feasible(solution.values)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.name)
def test_relaxation_is_fractional(backend):
    solution = backend.solve(knapsack_cover(), relax=True)
    assert solution.status == SolveStatus.OPTIMAL
    assert solution.objective == pytest.approx(1.5)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.name)
def test_infeasible(backend):
    model = LinearModel("infeasible")
    x = model.add_binary("x")
    y = model.add_binary("y")
    model.set_objective({x: 1})
    model.add_constraint({x: 1, y: 1}, Relation.GE, 3)
    assert backend.solve(model).status == SolveStatus.INFEASIBLE


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.name)
def test_general_integers_and_equalities(backend):
    # min -x - y with x + 2y = 7, x <= 3, y integer
    model = LinearModel("eq")
    x = model.add_integer("x", 0, 3)
    y = model.add_integer("y", 0, 10)
    model.set_objective({x: -1, y: -1})
    model.add_constraint({x: 1, y: 2}, Relation.EQ, 7)
    solution = backend.solve(model)
    assert solution.status == SolveStatus.OPTIMAL
    assert solution.values.tolist() == [3.0, 2.0]
    assert solution.objective == pytest.approx(-5.0)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.name)
def test_empty_model(backend):
    solution = backend.solve(LinearModel("empty"))
    assert solution.status == SolveStatus.OPTIMAL
    assert solution.objective == 0.0


def test_model_without_constraints():
    model = LinearModel("free")
    x = model.add_binary("x")
    model.set_objective({x: -1})
    solution = HighsBackend().solve(model)
    assert solution.values.tolist() == [1.0]


def test_exhausted_time_limit_reports_limit():
    solution = HighsBackend().solve(knapsack_cover(), time_limit=0)
    assert solution.status == SolveStatus.LIMIT
    assert not solution.has_values


def test_node_limit_reports_limit():
    solution = BranchAndBoundBackend(node_limit=1).solve(knapsack_cover())
    assert solution.status == SolveStatus.LIMIT


def test_get_backend():
    assert isinstance(get_backend("highs"), HighsBackend)
    bnb = get_backend("BnB", seed=9)
    assert isinstance(bnb, BranchAndBoundBackend)
    assert bnb.seed == 9
    with pytest.raises(ConfigurationError, match="unknown backend"):
        get_backend("gurobi")
