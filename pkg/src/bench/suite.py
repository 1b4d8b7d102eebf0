"""
Benchmark suite definitions.

A suite is a JSON file listing instance files with their published structural
columns. Expectations are data; comparing them never fails a run, it produces a
list of mismatch strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from ..utils.errors import DatasetError
from ..utils.project_path import get_bundled_suite

EXPECTED_COLUMNS = ("n", "m", "J", "init_constraints", "gamma_p")


@dataclass(frozen=True)
class BenchExpectation:
    n: Optional[int] = None
    m: Optional[int] = None
    J: Optional[int] = None
    init_constraints: Optional[int] = None
    gamma_p: Optional[int] = None

    def as_dict(self) -> Dict[str, Optional[int]]:
        return {column: getattr(self, column) for column in EXPECTED_COLUMNS}

    def compare(self, observed: Mapping[str, Any]) -> List[str]:
        """Mismatches as 'column: expected X, observed Y'."""
        out = []
        for column, expected in self.as_dict().items():
            if expected is None or column not in observed:
                continue
            if observed[column] != expected:
                out.append(f"{column}: expected {expected}, observed {observed[column]}")
        return out


@dataclass(frozen=True)
class BenchCase:
    name: str
    file: str
    expected: BenchExpectation
    source: str = ""
    optional: bool = False
    url: Optional[str] = None
    sha256: Optional[str] = None


def _case_from_dict(raw: Mapping[str, Any], position: int) -> BenchCase:
    try:
        expected_raw = raw.get("expected", {})
        unknown = set(expected_raw) - set(EXPECTED_COLUMNS)
        if unknown:
            raise DatasetError(f"suite case {position}: unknown expectation columns {sorted(unknown)}")
        return BenchCase(
            name=str(raw["name"]),
            file=str(raw["file"]),
            expected=BenchExpectation(**{k: int(v) for k, v in expected_raw.items()}),
            source=str(raw.get("source", "")),
            optional=bool(raw.get("optional", False)),
            url=raw.get("url"),
            sha256=raw.get("sha256"),
        )
    except KeyError as e:
        raise DatasetError(f"suite case {position}: missing field {e.args[0]!r}") from None


def load_suite(path: Optional[Union[str, Path]] = None) -> List[BenchCase]:
    """Read a suite file; defaults to the bundled one."""
    suite_path = Path(path) if path is not None else get_bundled_suite()
    try:
        data = json.loads(suite_path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DatasetError(f"suite file not found: {suite_path}") from None
    except json.JSONDecodeError as e:
        raise DatasetError(f"suite file {suite_path} is not valid JSON: {e}") from None
    cases = [_case_from_dict(raw, i) for i, raw in enumerate(data.get("cases", []))]
    names = [case.name for case in cases]
    if len(set(names)) != len(names):
        raise DatasetError(f"suite file {suite_path} repeats case names")
    return cases
