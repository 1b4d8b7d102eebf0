"""
Configuration module.

All environment variables and solver constants are defined here. A `.env` file at
the project root is loaded first so its values behave like exported variables.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from ..utils.config_helpers import (
    parse_choice_env,
    parse_float_env,
    parse_int_env,
    parse_str_env,
    validate_path_env,
)
from ..utils.project_path import get_bundled_dir, get_data_dir, get_project_root

PROJECT_ROOT = get_project_root(__file__)

_env_path = PROJECT_ROOT / ".env"
if _env_path.exists():
    load_dotenv(_env_path)

# ============================================================================
# CHOICES
# ============================================================================
BACKENDS = ("highs", "bnb")
METHODS = ("setcover", "infection", "infection_restricted", "bruteforce")
SEPARATIONS = ("closure", "model2", "model3", "closure_then_model3")

# ============================================================================
# NUMERICS
# ============================================================================
# Backend values within this distance of an integer are rounded
INTEGRALITY_TOL = 1e-6
# Weight cap offset for Model 3: 0/1 incumbents need weight 0, fractional points weight < 1
EPSILON_INTEGER = Fraction(1, 2)
EPSILON_FRACTIONAL = Fraction(1, 1_000_000)

# Closure separation: extra single-vertex repairs tried per round, each giving its own cut
CLOSURE_REPAIR_CUTS = 64

# gen sat states the formula's answer in the header up to this many variables (truth table)
SAT_HEADER_CAP = 16

# ============================================================================
# ENVIRONMENT
# ============================================================================
DATA_DIR: Path
BUNDLED_DIR: Path
LOG_LEVEL: str
LOG_DIR: Optional[Path]
DEFAULT_BACKEND: str
DEFAULT_METHOD: str
DEFAULT_SEPARATION: str
TIME_LIMIT: Optional[float]
ORACLE_CAP: int
ENUM_CAP: int
WORKERS: int
SEED: int


def reload_from_env() -> None:
    """Re-read every environment-driven constant (tests call this after monkeypatching)."""
    global DATA_DIR, BUNDLED_DIR, LOG_LEVEL, LOG_DIR, DEFAULT_BACKEND, DEFAULT_METHOD
    global DEFAULT_SEPARATION, TIME_LIMIT, ORACLE_CAP, ENUM_CAP, WORKERS, SEED

    DATA_DIR = get_data_dir(__file__)
    BUNDLED_DIR = get_bundled_dir()
    LOG_LEVEL = parse_str_env("FORTCOVER_LOG_LEVEL", "INFO").upper()
    LOG_DIR = validate_path_env("FORTCOVER_LOG_DIR")

    DEFAULT_BACKEND = parse_choice_env("FORTCOVER_BACKEND", BACKENDS, "highs")
    DEFAULT_METHOD = parse_choice_env("FORTCOVER_METHOD", METHODS, "setcover")
    DEFAULT_SEPARATION = parse_choice_env(
        "FORTCOVER_SEPARATION", SEPARATIONS, "closure_then_model3"
    )
    TIME_LIMIT = parse_float_env("FORTCOVER_TIME_LIMIT", None)

    # Brute-force caps: gamma_P enumeration and fort enumeration
    ORACLE_CAP = parse_int_env("FORTCOVER_ORACLE_CAP", 20)
    ENUM_CAP = parse_int_env("FORTCOVER_ENUM_CAP", 16)

    WORKERS = max(1, parse_int_env("FORTCOVER_WORKERS", 1))
    SEED = parse_int_env("FORTCOVER_SEED", 0)


reload_from_env()
