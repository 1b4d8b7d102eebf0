"""
Solve options.

A declarative schema (one SolveOption per setting) drives both the argparse flags
and the environment lookup, so a CLI flag overrides FORTCOVER_* variables which
override the built-in defaults.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Tuple

from ..core import config
from ..utils.config_helpers import (
    get_env_or_none,
    parse_bool_env,
    parse_choice_env,
    parse_float_env,
    parse_int_env,
)
from ..utils.errors import ConfigurationError


@dataclass(frozen=True)
class SolveOption:
    key: str
    env: str
    default: Callable[[], Any]
    kind: str  # choice | bool | int | float | fraction
    flag: str
    help: str
    choices: Tuple[str, ...] = ()
    negatable: bool = False


SOLVE_OPTIONS: Tuple[SolveOption, ...] = (
    SolveOption("method", "FORTCOVER_METHOD", lambda: config.DEFAULT_METHOD, "choice", "--method",
                "Solution method.", config.METHODS),
    SolveOption("separation", "FORTCOVER_SEPARATION", lambda: config.DEFAULT_SEPARATION, "choice",
                "--separation", "Separation routine for set-cover row generation.", config.SEPARATIONS),
    SolveOption("init_special_fns", "FORTCOVER_INIT", lambda: True, "bool", "--init",
                "Seed the master with type I/II/III fort neighborhoods.", negatable=True),
    SolveOption("restrict_to_junctions", "FORTCOVER_JUNCTION_RESTRICT", lambda: True, "bool",
                "--junction-restrict", "Only junctions may enter the set.", negatable=True),
    SolveOption("epsilon", "FORTCOVER_EPSILON", lambda: None, "fraction", "--epsilon",
                "Weight-cap offset for the minimum-cardinality model (p/q or decimal)."),
    SolveOption("time_limit", "FORTCOVER_TIME_LIMIT", lambda: config.TIME_LIMIT, "float", "--timeout-s",
                "Wall-clock limit in seconds."),
    SolveOption("seed", "FORTCOVER_SEED", lambda: config.SEED, "int", "--seed",
                "Seed for backend tie-breaking."),
    SolveOption("backend", "FORTCOVER_BACKEND", lambda: config.DEFAULT_BACKEND, "choice", "--backend",
                "MILP backend.", config.BACKENDS),
    SolveOption("lp_rounds", "FORTCOVER_LP_ROUNDS", lambda: 0, "int", "--lp-rounds",
                "Fractional separation rounds per component before integer solves."),
    SolveOption("workers", "FORTCOVER_WORKERS", lambda: config.WORKERS, "int", "--workers",
                "Threads used to solve components concurrently."),
    SolveOption("oracle_cap", "FORTCOVER_ORACLE_CAP", lambda: config.ORACLE_CAP, "int", "--oracle-cap",
                "Largest n the brute-force method accepts."),
    SolveOption("cover_rows", "FORTCOVER_COVER_ROWS", lambda: True, "bool", "--cover-rows",
                "Give the infection model the fort neighborhood rows and bound of a set-cover pass.",
                negatable=True),
)


def _parse_fraction(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {value!r}") from None


def _env_value(option: SolveOption) -> Any:
    default = option.default()
    if option.kind == "choice":
        return parse_choice_env(option.env, option.choices, default)
    if option.kind == "bool":
        return parse_bool_env(option.env, default)
    if option.kind == "int":
        return parse_int_env(option.env, default)
    if option.kind == "float":
        return parse_float_env(option.env, default)
    raw = get_env_or_none(option.env)
    if raw is None:
        return default
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError(f"{option.env}={raw!r} is not a rational number") from None


@dataclass
class SolveOptions:
    """Everything that steers one solve."""

    method: str = field(default_factory=lambda: config.DEFAULT_METHOD)
    separation: str = field(default_factory=lambda: config.DEFAULT_SEPARATION)
    init_special_fns: bool = True
    restrict_to_junctions: bool = True
    epsilon: Optional[Fraction] = None
    time_limit: Optional[float] = field(default_factory=lambda: config.TIME_LIMIT)
    seed: int = field(default_factory=lambda: config.SEED)
    backend: str = field(default_factory=lambda: config.DEFAULT_BACKEND)
    lp_rounds: int = 0
    workers: int = field(default_factory=lambda: config.WORKERS)
    oracle_cap: int = field(default_factory=lambda: config.ORACLE_CAP)
    cover_rows: bool = True

    def __post_init__(self):
        if self.method not in config.METHODS:
            raise ConfigurationError(f"unknown method {self.method!r}; choose from {', '.join(config.METHODS)}")
        if self.separation not in config.SEPARATIONS:
            raise ConfigurationError(
                f"unknown separation {self.separation!r}; choose from {', '.join(config.SEPARATIONS)}"
            )
        if self.backend not in config.BACKENDS:
            raise ConfigurationError(f"unknown backend {self.backend!r}; choose from {', '.join(config.BACKENDS)}")
        if self.epsilon is not None:
            self.epsilon = Fraction(self.epsilon)
            if not 0 < self.epsilon < 1:
                raise ConfigurationError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ConfigurationError(f"time limit must be positive, got {self.time_limit}")
        if self.lp_rounds < 0:
            raise ConfigurationError(f"lp_rounds must be >= 0, got {self.lp_rounds}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        if self.oracle_cap < 1:
            raise ConfigurationError(f"oracle_cap must be >= 1, got {self.oracle_cap}")

    @classmethod
    def from_env(cls, **overrides) -> "SolveOptions":
        values = {option.key: _env_value(option) for option in SOLVE_OPTIONS}
        values.update(overrides)
        return cls(**values)

    def with_overrides(self, **overrides) -> "SolveOptions":
        return replace(self, **overrides)

    def to_dict(self) -> Dict[str, Any]:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        if self.epsilon is not None:
            out["epsilon"] = str(self.epsilon)
        return out


def add_solve_arguments(parser: argparse.ArgumentParser, exclude: Tuple[str, ...] = ()) -> None:
    """Register one flag per SolveOption; unset flags stay None so the environment applies."""
    group = parser.add_argument_group("solve options")
    for option in SOLVE_OPTIONS:
        if option.key in exclude:
            continue
        kwargs: Dict[str, Any] = {"dest": option.key, "default": None, "help": option.help}
        if option.kind == "bool":
            kwargs["action"] = argparse.BooleanOptionalAction if option.negatable else "store_const"
            if not option.negatable:
                kwargs["const"] = True
        elif option.kind == "choice":
            kwargs["choices"] = option.choices
        elif option.kind == "int":
            kwargs["type"] = int
        elif option.kind == "float":
            kwargs["type"] = float
        else:
            kwargs["type"] = _parse_fraction
        group.add_argument(option.flag, **kwargs)


def options_from_args(args: argparse.Namespace, exclude: Tuple[str, ...] = ()) -> SolveOptions:
    overrides = {
        option.key: getattr(args, option.key)
        for option in SOLVE_OPTIONS
        if option.key not in exclude and getattr(args, option.key, None) is not None
    }
    return SolveOptions.from_env(**overrides)
