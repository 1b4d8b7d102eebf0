"""
fortcover - exact power domination numbers via fort neighborhoods.

Computes a minimum power dominating set of a graph by set-cover row generation:
every power dominating set must hit every fort neighborhood, and violated fort
neighborhoods are separated combinatorially or with small integer programs.

Usage:
    from src import read_edge_list, solve, SolveOptions

    g = read_edge_list("src/data/instances/ieee118.edges")
    report = solve(g, SolveOptions(method="setcover"))
    print(report.gamma_p, report.witness_labels)
"""

__version__ = "0.3.0"

_EXPORTS = {
    # Graph model
    "Graph": ".core.graph",
    "parse_edge_list": ".core.graph",
    "read_edge_list": ".core.graph",
    "components": ".core.graph",
    "parse_weights": ".core.graph",
    "format_weights": ".core.graph",
    # Junction partition and propagation
    "JunctionPartition": ".core.partition",
    "JunctionPath": ".core.partition",
    "junction_partition": ".core.partition",
    "ColorClosure": ".core.propagation",
    "FortNeighborhood": ".core.propagation",
    "power_domination_closure": ".core.propagation",
    "zero_forcing_closure": ".core.propagation",
    "is_power_dominating": ".core.propagation",
    "is_fort": ".core.propagation",
    "is_fort_neighborhood": ".core.propagation",
    "complement_fort_separation": ".core.propagation",
    # Catalog
    "CatalogConfig": ".core.catalog",
    "InstanceCatalog": ".core.catalog",
    # Models and backends
    "LinearModel": ".milp.model",
    "SolverBackend": ".milp.backends",
    "HighsBackend": ".milp.backends",
    "BranchAndBoundBackend": ".milp.backends",
    "get_backend": ".milp.backends",
    "build_model2": ".milp.separation",
    "build_model3": ".milp.separation",
    "solve_min_weight_fn": ".milp.separation",
    "solve_min_card_fn": ".milp.separation",
    "build_model4": ".milp.infection",
    "solve_infection": ".milp.infection",
    # Solvers
    "SolveOptions": ".solver.options",
    "SolveReport": ".solver.report",
    "detect_special_fns": ".solver.special",
    "solve_set_cover": ".solver.setcover",
    "solve": ".solver.dispatch",
    # Oracles and generators
    "brute_force_gamma_p": ".oracle.brute",
    "enumerate_fort_neighborhoods": ".oracle.brute",
    "min_weight_fort_neighborhood_oracle": ".oracle.brute",
    "generate_gk": ".oracle.generators",
    "random_connected_graph": ".oracle.generators",
    "CnfFormula": ".oracle.reduction",
    "parse_dimacs": ".oracle.reduction",
    "build_sat_reduction": ".oracle.reduction",
    # Data export
    "export_table": ".data.export",
}


def __getattr__(name):
    """Lazy imports: scipy, networkx and pandas are only loaded on first access."""
    module_name = _EXPORTS.get(name)
    if module_name is None:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
    from importlib import import_module

    value = getattr(import_module(module_name, __name__), name)
    globals()[name] = value
    return value


__all__ = ["__version__", *_EXPORTS]
