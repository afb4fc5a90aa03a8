"""Configurations"""

import logging
import os
import sys

from bkverify.settings.consts import (
    BUDGET_ENV_VAR,
    DEFAULT_BUDGET_SECS as _DEFAULT_BUDGET_SECS,
    LOG_FORMAT,
    LOG_LEVEL,
    LOG_TAG,
)


DEBUG = os.getenv("DEBUG", "False").lower() == "true"

DEFAULT_BUDGET_SECS = float(os.getenv(BUDGET_ENV_VAR, _DEFAULT_BUDGET_SECS))


# NB: records go to stdout, so logs go to stderr
handler = logging.StreamHandler(sys.stderr)
handler.setFormatter(logging.Formatter(LOG_FORMAT))
logger = logging.getLogger(LOG_TAG)
logger.addHandler(handler)
logger.setLevel("DEBUG" if DEBUG else os.getenv("BKVERIFY_LOG_LEVEL", LOG_LEVEL))
