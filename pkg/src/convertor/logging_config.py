"""
Logger factory for the convertor package.

Every module calls ``create_logger(__name__)``. Records go to stderr in
color so that stdout carries nothing but the JSON results of a command.
"""

import os
import sys
import traceback
from typing import Optional, Union

import colorlog

LOG_FORMAT = "%(log_color)s[%(levelname)s]%(reset)s %(blue)s[%(name)s]%(reset)s %(message)s"
LOG_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "red,bg_white",
}


def create_logger(name: Optional[str] = None, log_level: Union[int, str, None] = None):
    """
    Create a color-coded stderr logger.

    :param name: Name of the logger (typically __name__)
    :param log_level: Logging level (default: CONVERTOR_LOG_LEVEL or INFO)
    :return: Configured logger instance
    """
    if log_level is None:
        log_level = os.getenv("CONVERTOR_LOG_LEVEL", "INFO").upper()

    logger = colorlog.getLogger(name or "convertor")
    logger.setLevel(log_level)
    logger.propagate = False

    # Re-creating a logger (e.g. after a config reload) must not stack handlers
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    handler = colorlog.StreamHandler(sys.stderr)
    handler.setLevel(log_level)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT, log_colors=LOG_COLORS))
    logger.addHandler(handler)
    return logger


def log_exception(logger, e, context=None):
    """
    Log an exception with its traceback and the command it came from.

    :param logger: Logger instance
    :param e: Exception object
    :param context: Optional mapping describing what was running
    """
    logger.critical("=" * 80)
    logger.critical(f"{type(e).__name__}: {e}")
    if context:
        logger.critical(f"Context: {context}")
    logger.critical(traceback.format_exc().rstrip())
    logger.critical("=" * 80)
