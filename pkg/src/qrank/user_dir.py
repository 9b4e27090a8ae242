"""Where qrank looks for its per-user files (currently only logging.json)."""

import os
from pathlib import Path

import platformdirs

APP_NAME = "qrank"


def get_app_config_dir() -> Path:
    """Return the qrank configuration directory.

    ``$XDG_CONFIG_HOME/qrank`` when that variable is set, otherwise the
    platform's user config directory.
    """
    xdg_config = os.environ.get("XDG_CONFIG_HOME")
    if xdg_config:
        return Path(xdg_config) / APP_NAME
    return Path(platformdirs.user_config_dir(APP_NAME, appauthor=False))
