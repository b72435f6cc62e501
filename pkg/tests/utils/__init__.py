# tests/utils/__init__.py
"""Shared helpers for the test tiers."""

from .constants import (
    DEFAULT_TEST_LOG_LEVEL,
    DISALLOWED_PACKAGES,
    GOLDEN_DISINFECTION_IDENTITY_45,
    GOLDEN_DISINFECTION_SATURATING_265,
    GOLDEN_DRY_SEASON_TAU3_50,
    GOLDEN_DRY_SEASON_TAU47_31,
    GOLDEN_TOL,
    PROGRAM_PACKAGE,
    PROGRAM_SCRIPT,
    PROJ_ROOT,
)
from .params import (
    DRY_SEASON_CONFIG,
    cosine_init,
    disinfection_params,
    dry_season_params,
    harsh_dry_params,
    ladder_params,
    write_config_file,
)


__all__ = [
    "DEFAULT_TEST_LOG_LEVEL",
    "DISALLOWED_PACKAGES",
    "DRY_SEASON_CONFIG",
    "GOLDEN_DISINFECTION_IDENTITY_45",
    "GOLDEN_DISINFECTION_SATURATING_265",
    "GOLDEN_DRY_SEASON_TAU3_50",
    "GOLDEN_DRY_SEASON_TAU47_31",
    "GOLDEN_TOL",
    "PROGRAM_PACKAGE",
    "PROGRAM_SCRIPT",
    "PROJ_ROOT",
    "cosine_init",
    "disinfection_params",
    "dry_season_params",
    "harsh_dry_params",
    "ladder_params",
    "write_config_file",
]
