"""Loguru setup for the qrank command line.

Library modules log through ``loguru.logger`` directly and stay silent until
the CLI enables the ``qrank`` namespace. :func:`setup_logging` installs the
sinks once per process; :func:`get_logger` hands out a logger bound to a
component name so long sweeps can be filtered by stage.

Configuration is taken from the first of these that exists:

1. the file named by ``QRANK_LOG_CONFIG``,
2. ``logging.json`` in the application directory,
3. the built-in stderr sink (plus an optional file sink).

Sources 1 and 2 are read by :class:`loguru_config.LoguruConfig`, so any
format it accepts (JSON, YAML, TOML) works.
"""

from __future__ import annotations

import os
import sys
from collections.abc import MutableMapping
from pathlib import Path
from typing import TYPE_CHECKING, Any

from loguru import logger as _logger
from loguru_config.loguru_config import LoguruConfig  # type: ignore[import-untyped]

CONFIG_ENV_VAR = "QRANK_LOG_CONFIG"
DEFAULT_CONFIG_FILENAME = "logging.json"
LOG_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{extra[logger_name]}</cyan>:<cyan>{function}</cyan> - "
    "<level>{message}</level>\n{exception}"
)


if TYPE_CHECKING:
    import loguru
    from loguru import Record
else:  # pragma: no cover
    Record = MutableMapping[str, object]


def _format_record(record: Record) -> str:
    """Fill ``logger_name`` from the module name when nothing was bound."""
    record["extra"].setdefault("logger_name", record["name"])
    return LOG_FORMAT


def _level(*, verbose: bool, quiet: bool) -> str:
    if quiet:
        return "ERROR"
    return "DEBUG" if verbose else "INFO"


def _default_loguru_config(level: str, log_file: Path | None) -> dict[str, Any]:
    """Stderr sink at ``level``, plus a plain file sink when asked for."""
    sink_options = {"level": level, "format": _format_record, "diagnose": False}
    handlers: list[dict[str, Any]] = [
        {"sink": sys.stderr, "colorize": True, **sink_options}
    ]
    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append({"sink": log_file, "enqueue": True, **sink_options})
    return {"handlers": handlers, "extra": {"logger_name": "qrank"}}


def _load_external_config(config_path: Path) -> bool:
    if not config_path.is_file():
        return False
    LoguruConfig.load(config_path)
    return True


def setup_logging(
    app_dir: Path,
    *,
    verbose: bool = False,
    quiet: bool = False,
    log_file: Path | None = None,
    enable_file_logging: bool | None = None,
) -> None:
    """Replace every loguru sink with the resolved configuration.

    Args:
        app_dir: Directory searched for ``logging.json``.
        verbose: Log at DEBUG instead of INFO.
        quiet: Log at ERROR only; wins over ``verbose``.
        log_file: File sink target.
        enable_file_logging: ``None`` writes to ``log_file`` whenever it is
            given; ``True``/``False`` force the file sink on or off.

    """
    _logger.remove()

    config_file = os.getenv(CONFIG_ENV_VAR)
    if config_file and _load_external_config(Path(config_file)):
        return
    if _load_external_config(app_dir / DEFAULT_CONFIG_FILENAME):
        return

    if enable_file_logging is None:
        enable_file_logging = log_file is not None
    file_sink = log_file if enable_file_logging else None
    level = _level(verbose=verbose, quiet=quiet)
    LoguruConfig.load(_default_loguru_config(level, file_sink), inplace=True)


def get_logger(name: str | None = None) -> loguru.Logger:
    """Return the shared logger, bound to ``name`` when one is given."""
    if name:
        return _logger.bind(logger_name=name)
    return _logger


__all__ = ["get_logger", "setup_logging"]
