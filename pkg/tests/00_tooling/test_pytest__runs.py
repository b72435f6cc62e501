# tests/00_tooling/test_pytest__runs.py
"""Verify pytest configuration and basic functionality.

Minimal smoke tests for the test harness itself: pytest collects, `src/` is on
the import path and the numeric stack is importable. Run these first when
collection fails.

Run just this test:
    poetry run pytest tests/00_tooling/test_pytest__runs.py
"""

import importlib

import pytest

from tests.utils import PROGRAM_PACKAGE, PROGRAM_SCRIPT, PROJ_ROOT


def test_pytest_runs() -> None:
    """Minimal test to confirm pytest is functioning with our configuration."""
    assert True


@pytest.mark.parametrize(
    "module", ["numpy", "scipy.linalg", "scipy.optimize", "apathetic_logging"]
)
def test_runtime_dependencies_import(module: str) -> None:
    """Runtime dependencies declared in pyproject.toml are importable."""
    # --- execute ---
    imported = importlib.import_module(module)

    # --- verify ---
    assert imported.__name__ == module


def test_package_importable_from_src() -> None:
    """The package imports and exposes its public API."""
    # --- execute ---
    pkg = importlib.import_module(PROGRAM_PACKAGE)

    # --- verify ---
    assert "classify" in pkg.__all__


def test_console_script_points_at_cli_main() -> None:
    """The installed console script runs the CLI entry point."""
    # --- setup ---
    manifest = (PROJ_ROOT / "pyproject.toml").read_text(encoding="utf-8")

    # --- verify ---
    assert f'{PROGRAM_SCRIPT} = "{PROGRAM_PACKAGE}.cli:main"' in manifest


def test_module_entry_point_is_documented() -> None:
    """`python -m` resolves to a documented __main__ module."""
    # --- execute ---
    entry = importlib.import_module(f"{PROGRAM_PACKAGE}.__main__")

    # --- verify ---
    assert entry.__doc__
    assert callable(entry.main)
