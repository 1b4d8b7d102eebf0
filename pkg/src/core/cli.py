"""
fortcover CLI - power domination numbers from edge-list files.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import config
from .catalog import InstanceCatalog
from .graph import Graph, parse_weights, read_edge_list
from .partition import junction_partition
from .propagation import power_domination_closure
from ..bench.runner import STATUS_PASS, STATUS_SKIPPED, run_bench, summarize
from ..bench.suite import load_suite
from ..data.export import export_table
from ..milp.infection import build_model4
from ..milp.separation import build_model2, build_model3, default_epsilon
from ..oracle.generators import generate_gk, random_connected_graph
from ..oracle.reduction import build_sat_reduction, read_dimacs
from ..solver.dispatch import solve
from ..solver.options import add_solve_arguments, options_from_args
from ..solver.special import detect_special_fns, special_counts
from ..utils.errors import FortcoverError
from ..utils.logging_helpers import get_logger, setup_logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TIMEOUT = 2
EXIT_NOT_DOMINATING = 3

LP_MODELS = ["model2", "model3", "model4", "model4-restricted"]

logger = get_logger("cli")


def _load(path: str) -> Graph:
    return read_edge_list(path)


def _write_text(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        print(f"✅ Wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


# -------------------------
# Commands
# -------------------------
def cmd_solve(args: argparse.Namespace) -> int:
    g = _load(args.path)
    report = solve(g, options_from_args(args))
    if args.json_out:
        Path(args.json_out).write_text(report.to_json(), encoding="utf-8")
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(report.summary_lines()))
    return EXIT_OK if report.optimal else EXIT_TIMEOUT


def cmd_check(args: argparse.Namespace) -> int:
    g = _load(args.path)
    s = g.indices_of(args.vertices)
    closure = power_domination_closure(g, s)
    complete = closure.is_complete(g)
    if args.json:
        print(json.dumps({
            "power_dominating": complete,
            "colored": len(closure.colored),
            "uncolored": g.labels_of(closure.uncolored(g)),
            "certificate": closure.certificate_labels(g),
        }, indent=2))
    else:
        print(f"dominated by N[S]: {len(closure.dominated)} of {g.vertex_count}")
        for forcer, forced in closure.certificate_labels(g):
            print(f"  {forcer} -> {forced}")
        if complete:
            print(f"✅ {len(s)} vertices power dominate all {g.vertex_count}")
        else:
            missing = g.labels_of(closure.uncolored(g))
            print(f"❌ {len(missing)} vertices stay uncolored: {' '.join(missing)}")
    return EXIT_OK if complete else EXIT_NOT_DOMINATING


def cmd_partition(args: argparse.Namespace) -> int:
    g = _load(args.path)
    partition = junction_partition(g)
    counts = special_counts(detect_special_fns(partition))
    summary = {
        "n": g.vertex_count,
        "m": g.edge_count,
        "junctions": len(partition.junctions),
        "paths": len(partition.paths),
        "junction_free": partition.is_junction_free,
        "special_fort_neighborhoods": counts,
        "init_constraints": sum(counts.values()),
    }
    if args.json:
        print(json.dumps(summary, indent=2))
        return EXIT_OK
    print(f"n={g.vertex_count} m={g.edge_count}")
    print(f"junctions    {summary['junctions']}" + ("  (junction-free)" if partition.is_junction_free else ""))
    print(f"paths        {summary['paths']}")
    print("special      " + " ".join(f"{kind}={count}" for kind, count in counts.items()))
    print(f"init         {summary['init_constraints']}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    cases = load_suite(args.suite)
    opts = options_from_args(args, exclude=("workers",))
    catalog = InstanceCatalog()
    df = run_bench(
        cases,
        opts,
        catalog=catalog,
        include_optional=args.include_optional,
        parallel=args.parallel,
        workers=args.workers,
        progress=not args.no_progress,
    )
    print("\n".join(summarize(df)))
    if args.out:
        path = export_table(df, args.out)
        print(f"✅ Exported {len(df):,} rows to {path}")
    if args.save:
        path = catalog.save_table(args.save, df)
        print(f"✅ Saved results table to {path}")
    required = df[~df["optional"].astype(bool)]
    failed = required[~required["status"].isin([STATUS_PASS, STATUS_SKIPPED])]
    return EXIT_OK if failed.empty else EXIT_ERROR


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "gk":
        g = generate_gk(args.k)
        _write_text(g.to_edge_list_text([f"gk({args.k})"]), args.out)
        return EXIT_OK

    if args.kind == "random":
        g = random_connected_graph(args.n, args.p, seed=args.seed)
        _write_text(g.to_edge_list_text([f"random connected G({args.n}, {args.p}) seed={args.seed}"]), args.out)
        return EXIT_OK

    formula = read_dimacs(args.cnf)
    instance = build_sat_reduction(formula)
    header = [
        f"reduction of {Path(args.cnf).name}: k={formula.variable_count} clauses={len(formula.clauses)}",
        f"target {instance.graph.label_of(instance.target_vertex)} threshold {instance.threshold}",
    ]
    if formula.variable_count <= config.SAT_HEADER_CAP:
        assignment = formula.satisfying_assignment()
        if assignment is None:
            header.append("satisfiable no")
        else:
            values = " ".join(f"V{i}={int(value)}" for i, value in sorted(assignment.items()))
            header.append(f"satisfiable yes: {values}")
    _write_text(instance.graph.to_edge_list_text(header), args.out)
    weights_out = args.weights_out
    if weights_out is None:
        base = Path(args.out) if args.out else Path(Path(args.cnf).name)
        weights_out = str(base.with_suffix(".weights"))
    Path(weights_out).write_text(instance.weights_text(), encoding="utf-8")
    print(f"✅ Wrote weights to {weights_out}", file=sys.stderr)
    return EXIT_OK


def cmd_lp(args: argparse.Namespace) -> int:
    g = _load(args.path)
    if args.model.startswith("model4"):
        model = build_model4(g, restricted=args.model == "model4-restricted")
    else:
        weights = parse_weights(Path(args.weights).read_text(encoding="utf-8"), g) if args.weights else {}
        partition = junction_partition(g)
        if args.model == "model2":
            model = build_model2(partition, weights)
        else:
            epsilon = Fraction(args.epsilon) if args.epsilon else default_epsilon(weights)
            model = build_model3(partition, weights, epsilon)
    _write_text(model.to_lp_format(), args.out)
    return EXIT_OK


# -------------------------
# Parser
# -------------------------
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fortcover",
        description="Exact power domination numbers via fort neighborhood row generation.",
    )
    ap.add_argument("--verbose", action="store_true", help="Debug logging on the console.")
    ap.add_argument("--log-dir", default=None, help="Also log to a daily file in this directory.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    # Solve command
    ap_solve = sub.add_parser("solve", help="Compute gamma_P and a witness.")
    ap_solve.add_argument("path", help="Edge-list file.")
    ap_solve.add_argument("--json", action="store_true", help="Print the report as JSON.")
    ap_solve.add_argument("--json-out", default=None, help="Also write the JSON report here.")
    add_solve_arguments(ap_solve)
    ap_solve.set_defaults(func=cmd_solve)

    # Check command
    ap_check = sub.add_parser("check", help="Is a vertex set power dominating?")
    ap_check.add_argument("path", help="Edge-list file.")
    ap_check.add_argument("vertices", nargs="*", help="Vertex labels.")
    ap_check.add_argument("--json", action="store_true")
    ap_check.set_defaults(func=cmd_check)

    # Partition command
    ap_part = sub.add_parser("partition", help="Junctions, paths and special fort neighborhoods.")
    ap_part.add_argument("path", help="Edge-list file.")
    ap_part.add_argument("--json", action="store_true")
    ap_part.set_defaults(func=cmd_partition)

    # Bench command
    ap_bench = sub.add_parser("bench", help="Run a benchmark suite against published values.")
    ap_bench.add_argument("suite", nargs="?", default=None, help="Suite JSON (default: bundled suite).")
    ap_bench.add_argument("--include-optional", action="store_true", help="Also run optional cases.")
    ap_bench.add_argument("--parallel", action="store_true", help="Run cases on a thread pool.")
    ap_bench.add_argument("--workers", type=int, default=4, help="Pool size for --parallel (default: 4)")
    ap_bench.add_argument("--out", default=None, help="Result table (.parquet, .csv or .json)")
    ap_bench.add_argument("--save", default=None, metavar="KEY",
                          help="Persist the table under <data dir>/results/KEY")
    ap_bench.add_argument("--no-progress", action="store_true", help="Hide the progress bar.")
    add_solve_arguments(ap_bench, exclude=("workers",))
    ap_bench.set_defaults(func=cmd_bench)

    # Gen command
    ap_gen = sub.add_parser("gen", help="Generate instances.")
    gen_sub = ap_gen.add_subparsers(dest="kind", required=True)
    ap_gk = gen_sub.add_parser("gk", help="Subdivided K_k with a leaf per original vertex.")
    ap_gk.add_argument("k", type=int)
    ap_gk.add_argument("--out", default=None)
    ap_sat = gen_sub.add_parser("sat", help="Reduction instance from a 3-CNF DIMACS file.")
    ap_sat.add_argument("cnf")
    ap_sat.add_argument("--out", default=None)
    ap_sat.add_argument("--weights-out", default=None, help="Weight sidecar (default: <out or cnf>.weights)")
    ap_rand = gen_sub.add_parser("random", help="Seeded connected G(n, p).")
    ap_rand.add_argument("n", type=int)
    ap_rand.add_argument("p", type=float)
    ap_rand.add_argument("--seed", type=int, default=0)
    ap_rand.add_argument("--out", default=None)
    ap_gen.set_defaults(func=cmd_gen)

    # LP export command
    ap_lp = sub.add_parser("lp", help="Export a model in LP format.")
    ap_lp.add_argument("path", help="Edge-list file.")
    ap_lp.add_argument("--model", required=True, choices=LP_MODELS)
    ap_lp.add_argument("--weights", default=None, help="Weight sidecar for model2/model3.")
    ap_lp.add_argument("--epsilon", default=None, help="Weight-cap offset for model3.")
    ap_lp.add_argument("--out", default=None)
    ap_lp.set_defaults(func=cmd_lp)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(
        log_dir=args.log_dir or config.LOG_DIR,
        level=config.LOG_LEVEL,
        verbose=args.verbose,
    )
    try:
        return args.func(args)
    except (FortcoverError, OSError, ValueError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
