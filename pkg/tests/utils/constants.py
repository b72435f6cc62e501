# tests/utils/constants.py
"""Package metadata constants for test utilities."""

from pathlib import Path


#: Project root directory (tests/utils/constants.py -> project root)
PROJ_ROOT = Path(__file__).resolve().parent.parent.parent.resolve()

#: Package name used for imports and module paths
PROGRAM_PACKAGE = "impulsive_fronts"

#: Console script installed by the package
PROGRAM_SCRIPT = "impulsive-fronts"

DEFAULT_TEST_LOG_LEVEL = "warning"

#: Lint test: packages disallowed from `from ... import` statements in tests.
#: All imports from these packages must use `import <package>.<module> as mod_<module>`.
DISALLOWED_PACKAGES = [
    PROGRAM_PACKAGE,
]

#: Golden eigenvalues quoted for the published scenarios, with their tolerance.
GOLDEN_TOL = 0.01
GOLDEN_DISINFECTION_IDENTITY_45 = -0.169
GOLDEN_DISINFECTION_SATURATING_265 = 0.003
GOLDEN_DRY_SEASON_TAU3_50 = -0.360
GOLDEN_DRY_SEASON_TAU47_31 = 0.040
