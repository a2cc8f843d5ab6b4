# tests/test_config.py
import logging

import pytest
from pydantic import ValidationError

from core.config import Settings, app_config, settings
from schemas.cli_schemas import CliConfig
from utils.exception_handler import EXIT_USAGE, handle_cli_exception
from utils.exceptions import (
    InvalidParameterException,
    PoleException,
    TruncationException,
)
from utils.logger import set_log_level, setup_logger


def test_defaults():
    assert settings.N_MAX_LIMIT == 64
    assert settings.DEFAULT_LAMBDAS == ["1", "2", "3", "-1", "-2", "1/2"]
    assert app_config.APP_NAME == "qboole"


def test_environment_is_ignored(monkeypatch):
    monkeypatch.setenv("N_MAX_LIMIT", "5")
    monkeypatch.setenv("DEFAULT_LAMBDAS", "7")
    fresh = Settings()
    assert fresh.N_MAX_LIMIT == 64
    assert fresh.DEFAULT_LAMBDAS == ["1", "2", "3", "-1", "-2", "1/2"]


def test_init_values_are_split():
    assert Settings(DEFAULT_LAMBDAS="4, 1/3").DEFAULT_LAMBDAS == ["4", "1/3"]


def test_exit_codes():
    assert handle_cli_exception(InvalidParameterException("λ must be nonzero")) == EXIT_USAGE
    assert handle_cli_exception(TruncationException()) == 2
    assert handle_cli_exception(PoleException()) == 2
    assert handle_cli_exception(RuntimeError("boom")) == 2
    with pytest.raises(ValidationError) as info:
        CliConfig.model_validate({"subcommand": "table"})
    assert handle_cli_exception(info.value) == 2


def test_exception_detail():
    e = InvalidParameterException("λ must be nonzero")
    assert str(e) == "λ must be nonzero"
    assert e.exit_code == 2


def test_set_log_level():
    logger = setup_logger("TEST_LOGGER")
    set_log_level(logging.DEBUG)
    assert logger.level == logging.DEBUG
    assert all(h.level == logging.DEBUG for h in logger.handlers)
    set_log_level(logging.WARNING)
    assert logger.level == logging.WARNING
    assert not logger.propagate
