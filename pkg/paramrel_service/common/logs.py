"""per-run logging and crash reporting for the management commands"""

import copy
import logging
import logging.config
from pathlib import Path

from django.conf import settings


__all__ = (
    "configure_run_logging",
    "report_exception",
)


def configure_run_logging(log_path: Path) -> None:
    """`settings.LOGGING` plus a file handler writing timestamped lines to `log_path`

    timestamps go only to the run log, so every other artifact of a run stays
    byte-identical across reruns
    """
    _config = copy.deepcopy(settings.LOGGING)
    _config["handlers"]["run_log"] = {
        "class": "logging.FileHandler",
        "filename": str(log_path),
        "mode": "a",
        "encoding": "utf-8",
        "formatter": "timestamped",
        "level": "DEBUG",
    }
    _config["root"]["handlers"] = [*_config["root"]["handlers"], "run_log"]
    logging.config.dictConfig(_config)


def report_exception(error: BaseException) -> None:
    """forward an unexpected failure to sentry, when configured"""
    if settings.SENTRY_DSN:
        try:
            import sentry_sdk
        except ImportError:
            return
        sentry_sdk.capture_exception(error)
