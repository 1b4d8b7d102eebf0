"""
Write bench result tables to disk (parquet, CSV or JSON by path extension).

Bench rows for skipped or failed cases leave the structural counts empty, which pandas
stores as float NaN; counts are cast back to nullable integers before writing so a
CSV holds "30", not "30.0".
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import pandas as pd

from ..bench.suite import EXPECTED_COLUMNS

COUNT_COLUMNS = (
    *EXPECTED_COLUMNS,
    *(f"expected_{column}" for column in EXPECTED_COLUMNS),
    "separations",
)
FLAG_COLUMNS = ("optimal", "optional")


def normalize_bench_table(df: pd.DataFrame) -> pd.DataFrame:
    """Copy of df with count columns as Int64 and flag columns as boolean; others untouched."""
    out = df.copy()
    for column in COUNT_COLUMNS:
        if column in out.columns:
            out[column] = pd.to_numeric(out[column], errors="coerce").round().astype("Int64")
    for column in FLAG_COLUMNS:
        if column in out.columns:
            out[column] = out[column].astype("boolean")
    return out


def export_table(df: pd.DataFrame, path: Union[str, Path]) -> Path:
    """Write a bench table; format inferred from the extension.

    Args:
        df: Rows from run_bench (any extra columns are written as they are).
        path: Output path (.parquet, .csv or .json); no extension means parquet.

    Returns:
        Resolved Path that was written.
    """
    p = Path(path).resolve()
    p.parent.mkdir(parents=True, exist_ok=True)
    table = normalize_bench_table(df)
    suffix = p.suffix.lower()
    if suffix == ".csv":
        table.to_csv(p, index=False)
    elif suffix == ".json":
        table.to_json(p, orient="records", indent=2)
    else:
        if not p.suffix:
            p = p.with_suffix(".parquet")
        table.to_parquet(p, index=False)
    return p
