"""Test module for configuration settings and utilities.

This module contains unit tests for the environment-driven settings,
the output storage helpers and the logging setup.
"""

import importlib
import json
import logging
import os

import pytest

import convertor.config as config
from convertor.exceptions import ConfigurationError
from convertor.logging_config import create_logger
from convertor.storage import dumps_json, ensure_output_directories, get_output_paths, read_json, write_json

# Set up logging
logger = logging.getLogger(__name__)
logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s"
)


def test_configuration() -> None:
    """Comprehensive configuration test to validate settings."""
    logger.info("🔍 Starting Configuration Validation")

    logger.info("🔢 Validating Enumeration Caps")
    cap_checks = [
        ("Total order cap", config.TOTAL_ORDER_CAP, config.TOTAL_ORDER_CEILING),
        ("Weak order cap", config.WEAK_ORDER_CAP, config.WEAK_ORDER_CEILING),
        ("Oscillator cap", config.OSCILLATOR_CAP, config.OSCILLATOR_CEILING),
    ]
    for name, value, ceiling in cap_checks:
        assert 1 <= value <= ceiling, f"{name} {value} outside [1, {ceiling}]"
        logger.info(f"   ✅ {name}: {value} (ceiling {ceiling})")

    logger.info("🌐 Validating Environment Settings")
    assert config.DEFAULT_MAX_ITER >= 1
    assert config.LOG_LEVEL in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
    config.validate_config()

    described = config.describe_config()
    assert set(described) == {
        "seed",
        "max_iter",
        "total_order_cap",
        "weak_order_cap",
        "oscillator_cap",
        "output_dir",
        "log_level",
    }
    logger.info("✨ Configuration Validation Complete")


def test_environment_overrides(monkeypatch) -> None:
    monkeypatch.setenv("CONVERTOR_TOTAL_ORDER_CAP", "5")
    monkeypatch.setenv("CONVERTOR_SEED", "42")
    try:
        reloaded = importlib.reload(config)
        assert reloaded.TOTAL_ORDER_CAP == 5
        assert reloaded.DEFAULT_SEED == 42
    finally:
        monkeypatch.undo()
        importlib.reload(config)


def test_ceiling_is_enforced(monkeypatch) -> None:
    monkeypatch.setenv("CONVERTOR_WEAK_ORDER_CAP", "12")
    try:
        reloaded = importlib.reload(config)
        with pytest.raises(ConfigurationError):
            reloaded.validate_config()
    finally:
        monkeypatch.undo()
        importlib.reload(config)


def test_non_integer_environment_value(monkeypatch) -> None:
    monkeypatch.setenv("CONVERTOR_MAX_ITER", "lots")
    try:
        with pytest.raises(ConfigurationError):
            importlib.reload(config)
    finally:
        monkeypatch.undo()
        importlib.reload(config)


def test_output_directories(tmp_path) -> None:
    paths = ensure_output_directories(str(tmp_path / "output"))
    assert paths == get_output_paths(str(tmp_path / "output"))
    for path in paths.values():
        assert os.path.isdir(path)


def test_json_writer_is_deterministic(tmp_path) -> None:
    document = {"b": [1, 2], "a": "π"}
    path = write_json(document, str(tmp_path / "nested" / "doc.json"))
    text = open(path, encoding="utf-8").read()
    assert text == dumps_json({"a": "π", "b": [1, 2]})
    assert text.endswith("\n") and "π" in text
    assert read_json(path) == document
    assert json.loads(text) == document


def test_logger_writes_to_stderr_only(capsys) -> None:
    log = create_logger("convertor.test_stderr_logger", log_level="DEBUG")
    log.debug("hello")
    log.debug("hello again")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.count("hello") == 2
    # creating the same logger twice keeps a single handler
    assert len(create_logger("convertor.test_stderr_logger").handlers) == 1
