# tests/conftest.py
"""Shared test setup for project.

Every test starts with the application logger at the test log level and gets
it restored afterwards, so CLI tests that change the level do not leak into
the next test.
"""

from collections.abc import Generator

import pytest

import impulsive_fronts.constants as mod_constants
import impulsive_fronts.logs as mod_logs
from tests.utils import DEFAULT_TEST_LOG_LEVEL


@pytest.fixture(autouse=True)
def app_logger_level(
    monkeypatch: pytest.MonkeyPatch,
) -> Generator[mod_logs.AppLogger, None, None]:
    """Quiet, isolated application logger for each test."""
    monkeypatch.delenv(mod_constants.LOG_LEVEL_ENV_VAR, raising=False)
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    monkeypatch.delenv(mod_constants.OUTPUT_DIR_ENV_VAR, raising=False)
    logger = mod_logs.get_app_logger()
    original = logger.level
    logger.setLevel(DEFAULT_TEST_LOG_LEVEL)
    yield logger
    logger.setLevel(original)
