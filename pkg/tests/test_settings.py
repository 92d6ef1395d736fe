import logging

import pytest
from pydantic import ValidationError
from rich.logging import RichHandler

from core.settings import DEFAULT_Q_WINDOW, DEFAULT_X_ORDER, load_settings, setup_logging


def test_defaults():
    s = load_settings({})
    assert s.q_window == DEFAULT_Q_WINDOW == 48
    assert s.x_order == DEFAULT_X_ORDER == 8
    assert s.threads >= 1
    assert s.log_level == "INFO"


def test_environment_overrides():
    s = load_settings({"SCHRODER_THREADS": "3", "SCHRODER_QORDER": "20", "SCHRODER_LOG_LEVEL": "debug"})
    assert s.threads == 3
    assert s.q_window == 20
    assert s.log_level == "DEBUG"


@pytest.mark.parametrize("env", [{"SCHRODER_THREADS": "0"}, {"SCHRODER_LOG_LEVEL": "loud"}, {"SCHRODER_XORDER": "x"}])
def test_invalid_environment(env):
    with pytest.raises(ValidationError):
        load_settings(env)


def test_setup_logging_installs_one_handler():
    setup_logging("DEBUG")
    setup_logging("INFO")
    root = logging.getLogger()
    assert sum(isinstance(h, RichHandler) for h in root.handlers) == 1
    assert root.level == logging.INFO
