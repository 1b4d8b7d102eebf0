"""Bench suite loading, runner and table export."""

import json

import pandas as pd
import pytest

from src.bench.runner import STATUS_FAIL, STATUS_PASS, STATUS_SKIPPED, run_bench, summarize
from src.bench.suite import BenchExpectation, load_suite
from src.core.catalog import CatalogConfig, InstanceCatalog
from src.data import export_table
from src.data.export import normalize_bench_table
from src.solver.options import SolveOptions
from src.utils.errors import DatasetError
from src.utils.project_path import get_bundled_dir


def write_suite(path, cases):
    path.write_text(json.dumps({"name": "test", "cases": cases}), encoding="utf-8")
    return path


@pytest.fixture
def catalog(tmp_path):
    return InstanceCatalog(CatalogConfig(data_dir=tmp_path / "data", bundled_dir=get_bundled_dir(), fmt="csv"))


@pytest.fixture
def small_suite(tmp_path):
    return write_suite(
        tmp_path / "suite.json",
        [
            {"name": "ieee14", "file": "ieee14.edges",
             "expected": {"n": 14, "m": 20, "J": 7, "init_constraints": 0, "gamma_p": 2}},
            {"name": "ieee30-wrong", "file": "ieee30.edges", "expected": {"gamma_p": 4}},
            {"name": "absent", "file": "absent.edges", "optional": True, "expected": {"gamma_p": 1}},
        ],
    )


def test_bundled_suite():
    cases = load_suite()
    assert len(cases) == 9
    required = [case.name for case in cases if not case.optional]
    assert required == ["ieee14", "ieee30", "ieee57", "ieee118", "ieee300"]
    ieee300 = cases[4]
    assert ieee300.expected.gamma_p == 30
    assert ieee300.expected.init_constraints == 14


@pytest.mark.parametrize(
    "content, match",
    [
        ("{not json", "not valid JSON"),
        (json.dumps({"cases": [{"file": "a.edges"}]}), "missing field 'name'"),
        (json.dumps({"cases": [{"name": "a", "file": "a.edges", "expected": {"diameter": 3}}]}),
         "unknown expectation columns"),
        (json.dumps({"cases": [{"name": "a", "file": "a.edges"}, {"name": "a", "file": "b.edges"}]}),
         "repeats case names"),
    ],
)
def test_suite_errors(tmp_path, content, match):
    path = tmp_path / "suite.json"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(DatasetError, match=match):
        load_suite(path)


def test_missing_suite_file(tmp_path):
    with pytest.raises(DatasetError, match="not found"):
        load_suite(tmp_path / "nowhere.json")


def test_expectation_compare():
    expected = BenchExpectation(n=14, gamma_p=2)
    assert expected.compare({"n": 14, "m": 99, "gamma_p": 2}) == []
    assert expected.compare({"n": 15}) == ["n: expected 14, observed 15"]


def test_run_bench(small_suite, catalog):
    cases = load_suite(small_suite)
    df = run_bench(cases, SolveOptions(), catalog=catalog, include_optional=True, progress=False)
    assert list(df["case"]) == ["ieee14", "ieee30-wrong", "absent"]
    assert list(df["status"]) == [STATUS_PASS, STATUS_FAIL, STATUS_SKIPPED]

    ieee14 = df.iloc[0]
    assert ieee14["J"] == 7
    assert ieee14["gamma_p"] == 2
    assert bool(ieee14["optimal"])
    assert df.iloc[1]["mismatches"] == "gamma_p: expected 4, observed 3"
    assert "absent.edges" in df.iloc[2]["error"]

    lines = summarize(df)
    assert lines[-1] == "1/2 cases match"
    assert lines[0].startswith("ieee14")


def test_optional_cases_are_excluded_by_default(small_suite, catalog):
    df = run_bench(load_suite(small_suite), SolveOptions(), catalog=catalog, progress=False)
    assert "absent" not in set(df["case"])


def test_parallel_keeps_suite_order(small_suite, catalog):
    cases = load_suite(small_suite)
    sequential = run_bench(cases, SolveOptions(), catalog=catalog, progress=False)
    parallel = run_bench(cases, SolveOptions(), catalog=catalog, parallel=True, workers=2, progress=False)
    assert list(parallel["case"]) == list(sequential["case"])
    assert list(parallel["gamma_p"]) == list(sequential["gamma_p"])


def test_required_case_missing_is_an_error(tmp_path, catalog):
    suite = write_suite(tmp_path / "suite.json", [{"name": "gone", "file": "gone.edges"}])
    df = run_bench(load_suite(suite), SolveOptions(), catalog=catalog, progress=False)
    assert df.iloc[0]["status"] == "error"
    assert summarize(df)[-1] == "0/0 cases match"


def test_unexpected_crash_becomes_an_error_row(small_suite, catalog, monkeypatch):
    def crash(g, opts):
        raise RuntimeError("solver exploded")

    monkeypatch.setattr("src.bench.runner.solve", crash)
    df = run_bench(load_suite(small_suite), SolveOptions(), catalog=catalog, progress=False)
    assert list(df["case"]) == ["ieee14", "ieee30-wrong"]
    assert list(df["status"]) == ["error", "error"]
    assert df.iloc[0]["error"] == "unexpected failure, see the log"
    assert summarize(df)[-1] == "0/0 cases match"


@pytest.mark.parametrize("name", ["table.csv", "table.json", "table.parquet", "table"])
def test_export_table(tmp_path, name):
    df = pd.DataFrame({"case": ["ieee14", "ieee30"], "gamma_p": [2, 3]})
    path = export_table(df, tmp_path / "out" / name)
    assert path.is_file()
    if path.suffix == ".csv":
        loaded = pd.read_csv(path)
    elif path.suffix == ".json":
        loaded = pd.read_json(path, orient="records")
    else:
        assert path.suffix == ".parquet"
        loaded = pd.read_parquet(path)
    assert loaded["gamma_p"].tolist() == [2, 3]


def test_counts_stay_integers_when_a_row_is_empty(tmp_path):
    df = pd.DataFrame([
        {"case": "ieee14", "status": "pass", "gamma_p": 2, "expected_gamma_p": 2, "optimal": True},
        {"case": "gone", "status": "error", "gamma_p": None, "expected_gamma_p": None, "optimal": None},
    ])
    assert df["gamma_p"].dtype == "float64"

    table = normalize_bench_table(df)
    assert str(table["gamma_p"].dtype) == "Int64"
    assert str(table["optimal"].dtype) == "boolean"
    assert table["gamma_p"].isna().tolist() == [False, True]

    lines = export_table(df, tmp_path / "bench.csv").read_text().splitlines()
    assert lines[1] == "ieee14,pass,2,2,True"
    assert lines[2] == "gone,error,,,"
