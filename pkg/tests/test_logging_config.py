"""Tests for logging_config module."""

import json
from pathlib import Path
from unittest.mock import patch

import pytest
from loguru import logger

from qrank import logging_config
from qrank.logging_config import CONFIG_ENV_VAR


@pytest.fixture(autouse=True)
def reset_logger():
    """Reset logger state before each test."""
    logger.remove()
    yield
    logger.remove()


def _write_config(path: Path) -> Path:
    path.write_text(json.dumps({"handlers": [{"sink": "sys.stderr"}]}))
    return path


def test_format_record_keeps_bound_logger_name():
    """A bound component name wins over the module name."""
    record = {"extra": {"logger_name": "sweep"}, "name": "qrank.sweep"}

    assert logging_config._format_record(record) == logging_config.LOG_FORMAT  # noqa: SLF001
    assert record["extra"]["logger_name"] == "sweep"


def test_format_record_falls_back_to_module_name():
    """Unbound records are labelled with their module."""
    record = {"extra": {}, "name": "qrank.complexity"}

    logging_config._format_record(record)  # noqa: SLF001

    assert record["extra"]["logger_name"] == "qrank.complexity"


def test_default_loguru_config_stderr_only():
    """Without a log file there is one sink."""
    config = logging_config._default_loguru_config("INFO", None)  # noqa: SLF001

    assert len(config["handlers"]) == 1
    assert config["handlers"][0]["level"] == "INFO"
    assert config["extra"]["logger_name"] == "qrank"


def test_default_loguru_config_with_file(tmp_path: Path):
    """The file sink is enqueued so sweep workers can share it."""
    log_file = tmp_path / "logs" / "sweep.log"

    config = logging_config._default_loguru_config("DEBUG", log_file)  # noqa: SLF001

    assert len(config["handlers"]) == 2  # noqa: PLR2004
    assert config["handlers"][1]["sink"] == log_file
    assert config["handlers"][1]["level"] == "DEBUG"
    assert config["handlers"][1]["enqueue"] is True
    assert log_file.parent.is_dir()


def test_load_external_config(tmp_path: Path):
    """Existing files are handed to LoguruConfig; missing ones are skipped."""
    config_file = _write_config(tmp_path / "logging.json")

    with patch("qrank.logging_config.LoguruConfig.load") as mock_load:
        assert logging_config._load_external_config(config_file) is True  # noqa: SLF001
        mock_load.assert_called_once_with(config_file)

    missing = tmp_path / "missing.json"
    assert logging_config._load_external_config(missing) is False  # noqa: SLF001


@pytest.mark.parametrize(
    ("verbose", "quiet", "level"),
    [
        (False, False, "INFO"),
        (True, False, "DEBUG"),
        (False, True, "ERROR"),
        (True, True, "ERROR"),
    ],
)
def test_setup_logging_levels(tmp_path: Path, verbose: bool, quiet: bool, level: str):
    """quiet wins over verbose; INFO otherwise."""
    with patch("qrank.logging_config.LoguruConfig.load") as mock_load:
        logging_config.setup_logging(tmp_path, verbose=verbose, quiet=quiet)

        config = mock_load.call_args[0][0]
        assert config["handlers"][0]["level"] == level


@pytest.mark.parametrize(("enabled", "sinks"), [(True, 2), (False, 1), (None, 2)])
def test_setup_logging_file_sink(tmp_path: Path, enabled: bool | None, sinks: int):
    """enable_file_logging forces the file sink; None follows log_file."""
    with patch("qrank.logging_config.LoguruConfig.load") as mock_load:
        logging_config.setup_logging(
            tmp_path, log_file=tmp_path / "qrank.log", enable_file_logging=enabled
        )

        assert len(mock_load.call_args[0][0]["handlers"]) == sinks


def test_setup_logging_env_config_takes_precedence(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
):
    """QRANK_LOG_CONFIG is preferred over the application directory."""
    env_config = _write_config(tmp_path / "env_logging.json")
    _write_config(tmp_path / "logging.json")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(env_config))

    with patch("qrank.logging_config.LoguruConfig.load") as mock_load:
        logging_config.setup_logging(tmp_path)

        mock_load.assert_called_once_with(env_config)


def test_setup_logging_loads_app_dir_config(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
):
    """logging.json in the application directory replaces the defaults."""
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    config_file = _write_config(tmp_path / "logging.json")

    with patch("qrank.logging_config.LoguruConfig.load") as mock_load:
        logging_config.setup_logging(tmp_path)

        mock_load.assert_called_once_with(config_file)


def test_bound_logger_writes_component_name(tmp_path: Path):
    """The component bound by get_logger shows up in the file sink."""
    log_file = tmp_path / "qrank.log"
    logging_config.setup_logging(tmp_path, verbose=True, log_file=log_file)

    logging_config.get_logger("sweep").info("swept 13 primes")
    logger.complete()

    content = log_file.read_text()
    assert "sweep" in content
    assert "swept 13 primes" in content


def test_get_logger_without_name():
    """No name returns the shared logger itself."""
    assert logging_config.get_logger() is logging_config._logger  # noqa: SLF001


def test_module_exports():
    """Only the two entry points are exported."""
    assert sorted(logging_config.__all__) == ["get_logger", "setup_logging"]
