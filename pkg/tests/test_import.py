"""Test that all public exports are importable."""

import pytest


def test_import_main():
    """Test importing main module."""
    import src
    assert hasattr(src, "solve")
    assert hasattr(src, "__version__")


def test_every_export_resolves():
    import src
    for name in src.__all__:
        assert getattr(src, name) is not None


def test_unknown_attribute():
    import src
    with pytest.raises(AttributeError):
        src.does_not_exist


def test_import_solvers():
    """Test importing solver entry points."""
    from src import SolveOptions, SolveReport, solve, solve_set_cover
    assert all([SolveOptions, SolveReport, solve, solve_set_cover])


def test_import_models():
    """Test importing model builders and backends."""
    from src import (
        BranchAndBoundBackend,
        HighsBackend,
        build_model2,
        build_model3,
        build_model4,
        get_backend,
    )
    assert all([BranchAndBoundBackend, HighsBackend, build_model2, build_model3, build_model4, get_backend])


def test_import_catalog():
    """Test importing catalog classes."""
    from src import CatalogConfig, InstanceCatalog
    assert CatalogConfig is not None
    assert InstanceCatalog is not None


def test_import_errors():
    from src.utils.errors import (
        BackendError,
        DatasetError,
        FortcoverError,
        GraphParseError,
        OracleLimitError,
        StructuralError,
    )
    for error in (BackendError, DatasetError, GraphParseError, OracleLimitError, StructuralError):
        assert issubclass(error, FortcoverError)
