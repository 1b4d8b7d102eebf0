"""
Environment variable parsing.

Unset variables fall back to the given default; set-but-malformed values raise
ConfigurationError naming the variable instead of being silently ignored.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional, Sequence

from .errors import ConfigurationError

_TRUE = ("true", "1", "yes", "on")
_FALSE = ("false", "0", "no", "off")


def get_env_or_none(key: str) -> Optional[str]:
    """Return the stripped value of an environment variable, or None if unset/blank."""
    value = os.environ.get(key)
    if value is None or not value.strip():
        return None
    return value.strip()


def parse_bool_env(key: str, default: bool = False) -> bool:
    """
    Parse a boolean environment variable.

    Args:
        key: Environment variable name
        default: Value when unset

    Returns:
        Parsed boolean
    """
    value = get_env_or_none(key)
    if value is None:
        return default
    lowered = value.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ConfigurationError(f"{key}={value!r} is not a boolean")


def parse_int_env(key: str, default: Optional[int] = None) -> Optional[int]:
    """Parse an integer environment variable."""
    value = get_env_or_none(key)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise ConfigurationError(f"{key}={value!r} is not an integer") from None


def parse_float_env(key: str, default: Optional[float] = None) -> Optional[float]:
    """Parse a float environment variable."""
    value = get_env_or_none(key)
    if value is None:
        return default
    try:
        return float(value)
    except ValueError:
        raise ConfigurationError(f"{key}={value!r} is not a number") from None


def parse_str_env(key: str, default: str = "") -> str:
    """Parse a string environment variable."""
    value = get_env_or_none(key)
    return default if value is None else value


def parse_choice_env(key: str, choices: Sequence[str], default: str) -> str:
    """Parse a string environment variable restricted to a fixed set of values."""
    value = get_env_or_none(key)
    if value is None:
        return default
    lowered = value.lower()
    if lowered not in choices:
        raise ConfigurationError(f"{key}={value!r} must be one of {', '.join(choices)}")
    return lowered


def validate_path_env(key: str, must_exist: bool = False, must_be_dir: bool = False) -> Optional[Path]:
    """
    Validate a path taken from an environment variable.

    Args:
        key: Environment variable name
        must_exist: Require the path to exist
        must_be_dir: Require the path to be a directory

    Returns:
        Resolved Path, or None if unset

    Raises:
        ConfigurationError: If validation fails
    """
    value = get_env_or_none(key)
    if value is None:
        return None

    path = Path(value).expanduser().resolve()
    if must_exist and not path.exists():
        raise ConfigurationError(f"Path from {key} does not exist: {path}")
    if must_be_dir and path.exists() and not path.is_dir():
        raise ConfigurationError(f"Path from {key} is not a directory: {path}")
    return path
