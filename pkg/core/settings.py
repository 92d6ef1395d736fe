"""Runtime configuration and logging setup.

Values come from environment variables (the deployment knobs) and can be
overridden per invocation by CLI flags.
"""

from __future__ import annotations

import logging
import os
from typing import Optional

from pydantic import BaseModel, Field, field_validator
from rich.console import Console
from rich.logging import RichHandler

DEFAULT_Q_WINDOW = 48
DEFAULT_X_ORDER = 8
DEFAULT_SIZE_CAP = 8


def _default_threads() -> int:
    return max(1, min(4, os.cpu_count() or 1))


class Settings(BaseModel):
    q_window: int = Field(DEFAULT_Q_WINDOW, gt=0)
    x_order: int = Field(DEFAULT_X_ORDER, gt=0)
    size_cap: int = Field(DEFAULT_SIZE_CAP, gt=0)
    threads: int = Field(default_factory=_default_threads, ge=1)
    log_level: str = "INFO"
    report_dir: str = "reports"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, v: str) -> str:
        v = v.upper()
        if v not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {v!r}")
        return v


_ENV_KEYS = {
    "SCHRODER_THREADS": "threads",
    "SCHRODER_LOG_LEVEL": "log_level",
    "SCHRODER_QORDER": "q_window",
    "SCHRODER_XORDER": "x_order",
}


def load_settings(env: Optional[dict] = None) -> Settings:
    env = os.environ if env is None else env
    values = {}
    for key, field_name in _ENV_KEYS.items():
        raw = env.get(key)
        if raw not in (None, ""):
            values[field_name] = raw
    return Settings(**values)


def setup_logging(level: str = "INFO") -> None:
    root = logging.getLogger()
    for h in list(root.handlers):
        if isinstance(h, RichHandler):
            root.removeHandler(h)
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
        log_time_format="%H:%M:%S",
    )
    root.addHandler(handler)
    root.setLevel(level.upper())
