"""
Benchmark runner: solve every suite case and tabulate observed vs published values.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from tqdm import tqdm

from ..core.catalog import InstanceCatalog
from ..core.partition import junction_partition
from ..solver.dispatch import solve
from ..solver.options import SolveOptions
from ..solver.special import detect_special_fns
from ..utils.errors import DatasetError, FortcoverError, handle_errors
from ..utils.logging_helpers import get_logger
from .suite import EXPECTED_COLUMNS, BenchCase

logger = get_logger("bench")

TQDM_NCOLS = 80

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_SKIPPED = "skipped"
STATUS_ERROR = "error"


def run_case(case: BenchCase, catalog: InstanceCatalog, opts: SolveOptions) -> Dict[str, Any]:
    """One result row; structural columns are computed independently of the method."""
    row: Dict[str, Any] = {"case": case.name, "optional": case.optional}
    for column, value in case.expected.as_dict().items():
        row[f"expected_{column}"] = value

    try:
        g = catalog.load_graph(case.file, url=case.url, sha256=case.sha256)
    except DatasetError as e:
        row.update(status=STATUS_SKIPPED if case.optional else STATUS_ERROR, error=str(e))
        return row

    start = time.perf_counter()
    try:
        partition = junction_partition(g)
        report = solve(g, opts)
    except FortcoverError as e:
        logger.error(f"{case.name}: {e}")
        row.update(status=STATUS_ERROR, error=str(e))
        return row

    observed = {
        "n": g.vertex_count,
        "m": g.edge_count,
        "J": len(partition.junctions),
        "init_constraints": len(detect_special_fns(partition)),
        "gamma_p": report.gamma_p,
    }
    mismatches = case.expected.compare(observed)
    if not report.optimal:
        mismatches.append("solve stopped at the time limit")
    row.update(observed)
    row.update(
        status=STATUS_PASS if not mismatches else STATUS_FAIL,
        optimal=report.optimal,
        separations=report.separations_performed,
        time_s=round(time.perf_counter() - start, 3),
        mismatches="; ".join(mismatches),
        error="",
    )
    for line in mismatches:
        logger.warning(f"{case.name}: {line}")
    return row


_guarded_case = handle_errors(default_return=None)(run_case)


def _run_guarded(case: BenchCase, catalog: InstanceCatalog, opts: SolveOptions) -> Dict[str, Any]:
    """run_case, with an unexpected crash logged and turned into an error row."""
    row = _guarded_case(case, catalog, opts)
    if row is None:
        row = {"case": case.name, "optional": case.optional, "status": STATUS_ERROR,
               "error": "unexpected failure, see the log"}
    return row


def run_bench(
    cases: Sequence[BenchCase],
    opts: Optional[SolveOptions] = None,
    catalog: Optional[InstanceCatalog] = None,
    include_optional: bool = False,
    parallel: bool = False,
    workers: int = 4,
    progress: bool = True,
) -> pd.DataFrame:
    """Run the selected cases; rows keep suite order whatever the execution order."""
    opts = opts or SolveOptions.from_env()
    catalog = catalog or InstanceCatalog()
    selected = [case for case in cases if include_optional or not case.optional]
    order = {case.name: i for i, case in enumerate(selected)}
    rows: List[Dict[str, Any]] = []

    bar = tqdm(
        total=len(selected),
        desc="Benchmark",
        unit="case",
        file=sys.stderr,
        dynamic_ncols=False,
        ncols=TQDM_NCOLS,
        disable=not progress,
    )
    with bar:
        if parallel and len(selected) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_guarded, case, catalog, opts) for case in selected]
                for future in as_completed(futures):
                    rows.append(future.result())
                    bar.update(1)
        else:
            for case in selected:
                bar.set_postfix_str(case.name, refresh=True)
                rows.append(_run_guarded(case, catalog, opts))
                bar.update(1)

    rows.sort(key=lambda row: order[row["case"]])
    columns = ["case", "status", *EXPECTED_COLUMNS, *(f"expected_{c}" for c in EXPECTED_COLUMNS),
               "optimal", "separations", "time_s", "optional", "mismatches", "error"]
    return pd.DataFrame(rows).reindex(columns=columns)


def summarize(df: pd.DataFrame) -> List[str]:
    """Human-readable lines: one per case plus a pass count."""
    lines = []
    for row in df.itertuples(index=False):
        if row.status in (STATUS_SKIPPED, STATUS_ERROR):
            lines.append(f"{row.case:<12} {row.status:<8} {row.error}")
            continue
        lines.append(
            f"{row.case:<12} {row.status:<8} n={row.n} m={row.m} J={row.J} "
            f"init={row.init_constraints} gamma_P={row.gamma_p} ({row.time_s}s)"
        )
        if row.mismatches:
            lines.append(f"{'':<12} {'':<8} {row.mismatches}")
    ran = df[df["status"].isin([STATUS_PASS, STATUS_FAIL])]
    lines.append(f"{int((ran['status'] == STATUS_PASS).sum())}/{len(ran)} cases match")
    return lines
