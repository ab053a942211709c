"""Configuration module for convertor settings and environment variables.

Values are read once from the environment (and from a ``.env`` file in the
working directory when present). Library functions take the caps as keyword
arguments whose defaults come from here, so callers can override them
without touching the environment.
"""

import os

from dotenv import load_dotenv

from convertor.exceptions import ConfigurationError
from convertor.logging_config import create_logger

load_dotenv()

logger = create_logger(__name__)

ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))

# Hard ceilings; the environment may lower the caps but never raise past these
TOTAL_ORDER_CEILING = 9
WEAK_ORDER_CEILING = 7
OSCILLATOR_CEILING = 4


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")


DEFAULT_SEED = _int_env("CONVERTOR_SEED", 0)
DEFAULT_MAX_ITER = _int_env("CONVERTOR_MAX_ITER", 10000)
TOTAL_ORDER_CAP = _int_env("CONVERTOR_TOTAL_ORDER_CAP", 8)
WEAK_ORDER_CAP = _int_env("CONVERTOR_WEAK_ORDER_CAP", 6)
OSCILLATOR_CAP = _int_env("CONVERTOR_OSCILLATOR_CAP", 4)
OUTPUT_DIR = os.getenv("CONVERTOR_OUTPUT_DIR", os.path.join(ROOT_DIR, "output"))
LOG_LEVEL = os.getenv("CONVERTOR_LOG_LEVEL", "INFO").upper()


def validate_config() -> None:
    """
    Validate critical configuration parameters.

    :raises ConfigurationError: If configuration is invalid
    """
    caps = [
        ("CONVERTOR_TOTAL_ORDER_CAP", TOTAL_ORDER_CAP, TOTAL_ORDER_CEILING),
        ("CONVERTOR_WEAK_ORDER_CAP", WEAK_ORDER_CAP, WEAK_ORDER_CEILING),
        ("CONVERTOR_OSCILLATOR_CAP", OSCILLATOR_CAP, OSCILLATOR_CEILING),
    ]
    for name, value, ceiling in caps:
        if value < 1:
            raise ConfigurationError(f"{name} must be positive, got {value}")
        if value > ceiling:
            raise ConfigurationError(
                f"{name}={value} exceeds the hard ceiling of {ceiling}"
            )

    if DEFAULT_MAX_ITER < 1:
        raise ConfigurationError(
            f"CONVERTOR_MAX_ITER must be positive, got {DEFAULT_MAX_ITER}"
        )

    if not OUTPUT_DIR:
        raise ConfigurationError("CONVERTOR_OUTPUT_DIR is empty")

    if LOG_LEVEL not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        raise ConfigurationError(f"Unknown CONVERTOR_LOG_LEVEL {LOG_LEVEL!r}")

    logger.debug("Configuration validation successful")


def describe_config() -> dict:
    """Return the effective settings, for the config check and reports."""
    return {
        "seed": DEFAULT_SEED,
        "max_iter": DEFAULT_MAX_ITER,
        "total_order_cap": TOTAL_ORDER_CAP,
        "weak_order_cap": WEAK_ORDER_CAP,
        "oscillator_cap": OSCILLATOR_CAP,
        "output_dir": OUTPUT_DIR,
        "log_level": LOG_LEVEL,
    }
