"""Set-cover row generation."""

import copy

import pytest

from src.core.graph import Graph
from src.core.partition import junction_partition
from src.core.propagation import is_fort_neighborhood, is_power_dominating
from src.milp.backends import BranchAndBoundBackend, HighsBackend
from src.oracle.generators import cycle_graph, disjoint_union, generate_gk, path_graph
from src.solver.options import SolveOptions
from src.solver.setcover import CoverMaster, Separator, cover_seed, solve_set_cover
from src.solver.special import TYPE_I
from src.utils.errors import GraphValidationError

GRIDS = [("ieee14", 2), ("ieee30", 3), ("ieee57", 3), ("ieee118", 8)]


def options(**overrides):
    return SolveOptions(method="setcover", **overrides)


def test_cover_master():
    master = CoverMaster([3, 5, 8])
    assert master.add({3, 5})
    assert not master.add(frozenset({5, 3}))
    with pytest.raises(AssertionError):
        master.add(set())
    model = master.model()
    assert model.num_variables == 3
    assert model.var("s_8") == 2
    assert master.chosen([1.0, 0.0, 0.9]) == frozenset({3, 8})
    assert master.point([0.25, 0.5, 0.0]) == {3: 0.25, 5: 0.5, 8: 0.0}


@pytest.mark.parametrize("mode", ["closure", "model2", "model3", "closure_then_model3"])
def test_separator_finds_a_missed_neighborhood(left_graph, mode):
    g = left_graph
    partition = junction_partition(g)
    separator = Separator(g, partition, HighsBackend(), mode)
    incumbent = frozenset({g.index_of("v1")})
    fn = separator(incumbent)
    assert fn is not None
    assert not fn.vertices & incumbent
    assert separator(frozenset({g.index_of("v5")})) is None


def test_separator_model3_prefers_small_neighborhoods(left_graph):
    g = left_graph
    separator = Separator(g, junction_partition(g), HighsBackend(), "model3")
    closure_fn = Separator(g, junction_partition(g), HighsBackend(), "closure")(frozenset({0}))
    assert len(separator(frozenset({0}))) <= len(closure_fn)


@pytest.mark.parametrize("incumbent", [frozenset(), frozenset({0}), frozenset({13})])
def test_closure_cuts_are_certified_and_miss_the_incumbent(ieee14, incumbent):
    partition = junction_partition(ieee14)
    separator = Separator(ieee14, partition, HighsBackend(), "closure")
    cuts = separator.cuts(incumbent)
    assert cuts[0] == separator(incumbent)
    assert len({fn.vertices for fn in cuts}) == len(cuts)
    for fn in cuts:
        assert not fn.vertices & incumbent
        assert is_fort_neighborhood(ieee14, partition, fn.vertices) is not None


def test_closure_cuts_add_one_vertex_repairs(ieee14):
    separator = Separator(ieee14, junction_partition(ieee14), HighsBackend(), "closure")
    cuts = separator.cuts(frozenset())
    # gamma_P is 2, so no single added vertex dominates and every repair leaves a cut
    assert cuts[0].vertices == frozenset(ieee14.vertices())
    assert len(cuts) > 1


def test_closure_cuts_respect_the_repair_pool(ieee14):
    partition = junction_partition(ieee14)
    everything = Separator(ieee14, partition, HighsBackend(), "closure")
    nothing = Separator(ieee14, partition, HighsBackend(), "closure", repair_pool=frozenset())
    assert nothing.cuts(frozenset()) == [everything(frozenset())]
    assert len(everything.cuts(frozenset())) > 1


def test_cuts_for_model_separations_are_single(left_graph):
    separator = Separator(left_graph, junction_partition(left_graph), HighsBackend(), "model3")
    assert len(separator.cuts(frozenset({left_graph.index_of("v1")}))) == 1
    assert separator.cuts(frozenset({left_graph.index_of("v5")})) == []


GRID_SEPARATIONS = [
    pytest.param(name, expected, separation, marks=pytest.mark.slow)
    if (name, separation) == ("ieee118", "closure")
    else (name, expected, separation)
    for name, expected in GRIDS
    for separation in ("closure", "model2", "model3", "closure_then_model3")
]


@pytest.mark.parametrize("name, expected, separation", GRID_SEPARATIONS)
def test_power_grids(request, name, expected, separation):
    g = request.getfixturevalue(name)
    report = solve_set_cover(g, options(separation=separation))
    assert report.gamma_p == expected
    assert report.optimal
    assert report.lower_bound == expected
    assert report.bound_history[-1] == expected
    assert report.bound_history == sorted(report.bound_history)
    assert is_power_dominating(g, report.witness)
    assert all(g.degree(v) >= 3 for v in report.witness)


def test_ieee300(ieee300):
    report = solve_set_cover(ieee300, options())
    assert report.gamma_p == 30
    assert report.initial_constraints == 14
    assert report.junction_count == 155


@pytest.mark.parametrize("name, expected", GRIDS)
def test_switches_do_not_change_the_optimum(request, name, expected):
    g = request.getfixturevalue(name)
    plain = solve_set_cover(g, options(init_special_fns=False, restrict_to_junctions=False))
    assert plain.gamma_p == expected
    assert plain.initial_constraints == 0
    rounds = solve_set_cover(g, options(lp_rounds=3))
    assert rounds.gamma_p == expected


def test_right_graph_report(right_graph):
    report = solve_set_cover(right_graph, options())
    assert report.witness_labels == ["v13"]
    assert report.initial_constraints == 1
    assert report.special_counts[TYPE_I] == 1
    assert report.junction_count == 1


@pytest.mark.parametrize("workers", [1, 3])
def test_components_are_solved_separately(left_graph, workers):
    g = disjoint_union([left_graph, path_graph(4), cycle_graph(5), generate_gk(3)])
    report = solve_set_cover(g, options(workers=workers))
    assert report.components == 4
    assert report.gamma_p == 1 + 1 + 1 + 2
    assert is_power_dominating(g, report.witness)


def test_branch_and_bound_backend(left_graph):
    backend = BranchAndBoundBackend(seed=1)
    report = solve_set_cover(generate_gk(3), options(separation="model2"), backend=backend)
    assert report.gamma_p == 2
    assert report.backend == "bnb"
    assert solve_set_cover(left_graph, options(separation="closure"), backend=copy.copy(backend)).gamma_p == 1


def test_deadline_returns_a_valid_partial_answer(ieee118):
    report = solve_set_cover(ieee118, options(time_limit=1e-9))
    assert not report.optimal
    assert 1 <= report.lower_bound <= report.gamma_p
    assert is_power_dominating(ieee118, report.witness)


def test_empty_graph_is_rejected():
    with pytest.raises(GraphValidationError):
        solve_set_cover(Graph.from_index_edges(0, []))


def test_cover_seed_rows_bind_every_minimum_set(ieee30):
    cover = cover_seed(ieee30, options())
    assert cover.optimal
    assert cover.lower_bound == 3
    assert cover.rows
    junctions = {v for v in ieee30.vertices() if ieee30.degree(v) >= 3}
    assert all(row <= junctions for row in cover.rows)
    witness = solve_set_cover(ieee30, options()).witness
    assert all(row & witness for row in cover.rows)


def test_cover_seed_over_components(left_graph):
    g = disjoint_union([left_graph, path_graph(4)])
    cover = cover_seed(g, options(restrict_to_junctions=False))
    assert cover.lower_bound == 2
    assert all(max(row) < left_graph.vertex_count for row in cover.rows)
