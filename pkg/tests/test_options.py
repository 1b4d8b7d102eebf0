"""Solve options: defaults, environment, CLI flags."""

import argparse
from fractions import Fraction

import pytest

from src.core import config
from src.solver.options import SOLVE_OPTIONS, SolveOptions, add_solve_arguments, options_from_args
from src.utils.errors import ConfigurationError


@pytest.fixture
def clean_env(monkeypatch):
    for option in SOLVE_OPTIONS:
        monkeypatch.delenv(option.env, raising=False)
    yield monkeypatch
    monkeypatch.undo()
    config.reload_from_env()


def parse(argv, exclude=()):
    parser = argparse.ArgumentParser()
    add_solve_arguments(parser, exclude=exclude)
    return options_from_args(parser.parse_args(argv), exclude=exclude)


def test_defaults(clean_env):
    opts = SolveOptions.from_env()
    assert opts.method == "setcover"
    assert opts.separation == "closure_then_model3"
    assert opts.init_special_fns and opts.restrict_to_junctions
    assert opts.epsilon is None
    assert opts.time_limit is None
    assert opts.backend == "highs"
    assert opts.workers == 1
    assert opts.cover_rows


def test_environment_overrides_defaults(clean_env):
    clean_env.setenv("FORTCOVER_METHOD", "Infection")
    clean_env.setenv("FORTCOVER_INIT", "no")
    clean_env.setenv("FORTCOVER_EPSILON", "1/4")
    clean_env.setenv("FORTCOVER_TIME_LIMIT", "2.5")
    opts = SolveOptions.from_env()
    assert opts.method == "infection"
    assert not opts.init_special_fns
    assert opts.epsilon == Fraction(1, 4)
    assert opts.time_limit == 2.5


def test_flags_override_environment(clean_env):
    clean_env.setenv("FORTCOVER_SEPARATION", "model2")
    clean_env.setenv("FORTCOVER_SEED", "4")
    opts = parse(["--separation", "closure", "--no-junction-restrict", "--epsilon", "0.001"])
    assert opts.separation == "closure"
    assert not opts.restrict_to_junctions
    assert opts.epsilon == Fraction(1, 1000)
    assert opts.seed == 4


def test_cover_rows_switch(clean_env):
    clean_env.setenv("FORTCOVER_COVER_ROWS", "false")
    assert not SolveOptions.from_env().cover_rows
    assert parse(["--cover-rows"]).cover_rows
    clean_env.delenv("FORTCOVER_COVER_ROWS")
    assert not parse(["--no-cover-rows"]).cover_rows


def test_unset_flags_fall_through(clean_env):
    opts = parse([])
    assert opts == SolveOptions.from_env()


def test_excluded_flags_are_not_registered(clean_env):
    parser = argparse.ArgumentParser()
    add_solve_arguments(parser, exclude=("workers",))
    parser.add_argument("--workers", type=int, default=4)
    args = parser.parse_args(["--workers", "8", "--lp-rounds", "2"])
    opts = options_from_args(args, exclude=("workers",))
    assert opts.workers == 1
    assert opts.lp_rounds == 2


@pytest.mark.parametrize(
    "kwargs",
    [
        {"method": "magic"},
        {"separation": "none"},
        {"backend": "cplex"},
        {"epsilon": 1},
        {"epsilon": 0},
        {"time_limit": 0},
        {"lp_rounds": -1},
        {"workers": 0},
        {"oracle_cap": 0},
    ],
)
def test_invalid_values(kwargs):
    with pytest.raises(ConfigurationError):
        SolveOptions(**kwargs)


def test_malformed_environment(clean_env):
    clean_env.setenv("FORTCOVER_WORKERS", "many")
    with pytest.raises(ConfigurationError, match="FORTCOVER_WORKERS"):
        SolveOptions.from_env()
    clean_env.setenv("FORTCOVER_WORKERS", "2")
    clean_env.setenv("FORTCOVER_EPSILON", "one half")
    with pytest.raises(ConfigurationError, match="FORTCOVER_EPSILON"):
        SolveOptions.from_env()


def test_with_overrides_and_to_dict():
    opts = SolveOptions(epsilon=Fraction(1, 3)).with_overrides(seed=7)
    assert opts.seed == 7
    data = opts.to_dict()
    assert data["epsilon"] == "1/3"
    assert set(data) == {option.key for option in SOLVE_OPTIONS}


def test_config_reload(clean_env):
    clean_env.setenv("FORTCOVER_ORACLE_CAP", "12")
    config.reload_from_env()
    assert config.ORACLE_CAP == 12
    assert SolveOptions().oracle_cap == 12
