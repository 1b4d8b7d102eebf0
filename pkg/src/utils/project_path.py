"""
Project path utilities: project root, user data directory and bundled instances.

The data directory lives under the project root unless FORTCOVER_DATA_DIR is set.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

_PROJECT_MARKERS = ("pyproject.toml", ".git")
DATA_DIR_ENV = "FORTCOVER_DATA_DIR"


def get_project_root(current_file: Optional[str] = None) -> Path:
    """
    Walk up from current_file (or cwd) to the first directory holding a project marker.

    Falls back to the parent of the "src" directory, then to cwd.
    """
    start = Path(current_file).resolve() if current_file else Path.cwd().resolve()
    if start.is_file():
        start = start.parent

    for path in (start, *start.parents):
        if any((path / marker).exists() for marker in _PROJECT_MARKERS):
            return path

    parts = start.parts
    if "src" in parts:
        return Path(*parts[: parts.index("src")]).resolve()
    return Path.cwd().resolve()


def get_data_dir(current_file: Optional[str] = None) -> Path:
    """User data directory: FORTCOVER_DATA_DIR if set, else <project root>/data."""
    env_path = os.environ.get(DATA_DIR_ENV)
    if env_path and env_path.strip():
        return Path(env_path.strip()).expanduser().resolve()
    return (get_project_root(current_file) / "data").resolve()


def get_bundled_dir() -> Path:
    """Directory of the edge-list instances shipped inside the package."""
    return (Path(__file__).resolve().parent.parent / "data" / "instances").resolve()


def get_bundled_suite() -> Path:
    """Path of the bundled bench suite file."""
    return (Path(__file__).resolve().parent.parent / "data" / "suite.json").resolve()
