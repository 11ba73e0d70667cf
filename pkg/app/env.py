"""settings from environment variables
"""

import os


DEBUG = bool(os.environ.get("DEBUG"))  # any non-empty value enables debug mode
SECRET_KEY = os.environ.get("SECRET_KEY", "paramrel-local")  # django insists on one
PARAMREL_LOG_LEVEL = os.environ.get("PARAMREL_LOG_LEVEL", "INFO").upper()
# where run directories go when a command gets no --out
PARAMREL_OUT_ROOT = os.environ.get("PARAMREL_OUT_ROOT", "runs")
# any non-empty value enables the slow end-to-end tests
PARAMREL_E2E = bool(os.environ.get("PARAMREL_E2E"))
SENTRY_DSN = os.environ.get("SENTRY_DSN")
