"""Method dispatch and cross-method agreement."""

import pytest

from src.core.graph import Graph
from src.core.propagation import is_power_dominating
from src.milp.backends import HighsBackend
from src.oracle.brute import brute_force_gamma_p
from src.oracle.generators import path_graph
from src.solver.dispatch import solve
from src.solver.options import SolveOptions
from src.utils.errors import GraphValidationError, OracleLimitError, StructuralError


def run(g, method, **overrides):
    return solve(g, SolveOptions(method=method, **overrides))


def test_bruteforce_report(left_graph):
    report = run(left_graph, "bruteforce")
    assert report.method == "bruteforce"
    assert report.witness_labels == ["v5"]
    assert report.lower_bound == 1
    assert report.backend is None
    assert report.junction_count == 8


def test_bruteforce_respects_cap(ieee30):
    with pytest.raises(OracleLimitError):
        run(ieee30, "bruteforce")
    with pytest.raises(OracleLimitError):
        run(path_graph(6), "bruteforce", oracle_cap=5)


def test_infection_report(ieee14):
    report = run(ieee14, "infection")
    assert report.method == "infection"
    assert report.gamma_p == 2
    assert report.optimal
    assert report.backend == "highs"
    assert report.certificate


def test_restricted_infection_preconditions():
    with pytest.raises(StructuralError):
        run(path_graph(5), "infection_restricted")


def test_empty_graph():
    with pytest.raises(GraphValidationError):
        solve(Graph.from_index_edges(0, []))


def test_explicit_backend_is_used(ieee14):
    report = solve(ieee14, SolveOptions(method="infection_restricted"), backend=HighsBackend())
    assert report.gamma_p == 2


@pytest.mark.parametrize(
    "name, expected",
    [("ieee14", 2), ("ieee30", 3), ("ieee57", 3), pytest.param("ieee118", 8, marks=pytest.mark.slow)],
)
def test_infection_on_power_grids(request, name, expected):
    g = request.getfixturevalue(name)
    for method in ("infection", "infection_restricted"):
        report = run(g, method)
        assert report.gamma_p == expected
        assert is_power_dominating(g, report.witness)


def test_restricted_infection_on_ieee300(ieee300):
    report = run(ieee300, "infection_restricted", time_limit=60)
    assert report.optimal
    assert report.gamma_p == 30
    assert report.lower_bound == 30
    assert is_power_dominating(ieee300, report.witness)


def test_infection_without_cover_rows(ieee30):
    report = run(ieee30, "infection", cover_rows=False)
    assert report.gamma_p == 3
    assert "init" not in report.timings_ms
    assert "init" in run(ieee30, "infection").timings_ms


@pytest.fixture(scope="module")
def brute_force_answers(corpus):
    return [brute_force_gamma_p(g)[0] for g in corpus]


@pytest.mark.parametrize("separation", ["closure", "model2", "model3", "closure_then_model3"])
def test_setcover_agrees_with_brute_force(corpus, brute_force_answers, separation):
    for g, expected in zip(corpus, brute_force_answers):
        report = run(g, "setcover", separation=separation)
        assert report.gamma_p == expected, f"{separation} on {g.to_json()}"
        assert is_power_dominating(g, report.witness)


def test_junction_restriction_keeps_the_optimum(corpus, brute_force_answers):
    checked = 0
    for g, expected in zip(corpus, brute_force_answers):
        if g.max_degree < 3:
            continue
        restricted = run(g, "setcover", separation="closure")
        plain = run(g, "setcover", separation="closure", restrict_to_junctions=False)
        assert restricted.gamma_p == plain.gamma_p == expected
        assert all(g.degree(v) >= 3 for v in restricted.witness)
        checked += 1
    assert checked > 100


@pytest.mark.parametrize("cover_rows", [True, False], ids=["cover-rows", "bare"])
def test_infection_agrees_with_brute_force(corpus, brute_force_answers, cover_rows):
    assert len(corpus) >= 200
    for g, expected in zip(corpus, brute_force_answers):
        report = run(g, "infection", cover_rows=cover_rows)
        assert report.gamma_p == expected, g.to_json()
        assert report.optimal


def test_restricted_infection_agrees_with_brute_force(junction_corpus):
    assert len(junction_corpus) == 200
    for g in junction_corpus:
        expected, _ = brute_force_gamma_p(g)
        report = run(g, "infection_restricted")
        assert report.gamma_p == expected, g.to_json()
        assert all(g.degree(v) >= 3 for v in report.witness)
