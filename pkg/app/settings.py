import logging
from pathlib import Path

from app import env


_logger = logging.getLogger(__name__)


if env.SENTRY_DSN:
    try:
        import sentry_sdk
    except ImportError:
        _logger.warning("SENTRY_DSN defined but sentry_sdk not installed!")
    else:
        sentry_sdk.init(dsn=env.SENTRY_DSN)


SECRET_KEY = env.SECRET_KEY
DEBUG = env.DEBUG
SENTRY_DSN = env.SENTRY_DSN

INSTALLED_APPS = [
    "paramrel_service",
]

# no database: runs read and write plain files
DATABASES: dict = {}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True


###
# runs

PARAMREL_OUT_ROOT = Path(env.PARAMREL_OUT_ROOT)
PARAMREL_RUN_LOG_NAME = "run.log"


###
# logging: console only; a command that writes a run directory adds a
# timestamped run log there (see paramrel_service.common.logs)

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "console": {"format": "%(levelname)s %(name)s: %(message)s"},
        "timestamped": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "console",
            "level": env.PARAMREL_LOG_LEVEL,
        },
    },
    "loggers": {
        "paramrel_toolkit": {"level": "DEBUG"},
        "paramrel_service": {"level": "DEBUG"},
    },
    "root": {"handlers": ["console"], "level": "WARNING"},
}
