"""Tests for user_dir module."""

from pathlib import Path

import platformdirs
import pytest

from qrank import user_dir


def test_get_app_config_dir_with_xdg(monkeypatch: pytest.MonkeyPatch) -> None:
    """XDG_CONFIG_HOME wins when set."""
    monkeypatch.setenv("XDG_CONFIG_HOME", "/custom/config")

    assert user_dir.get_app_config_dir() == Path("/custom/config") / "qrank"


def test_get_app_config_dir_without_xdg(monkeypatch: pytest.MonkeyPatch) -> None:
    """Otherwise the platform default is used."""
    monkeypatch.delenv("XDG_CONFIG_HOME", raising=False)

    expected = Path(platformdirs.user_config_dir("qrank", appauthor=False))
    assert user_dir.get_app_config_dir() == expected


def test_get_app_config_dir_empty_xdg(monkeypatch: pytest.MonkeyPatch) -> None:
    """An empty XDG_CONFIG_HOME counts as unset."""
    monkeypatch.setenv("XDG_CONFIG_HOME", "")

    assert user_dir.get_app_config_dir().name == "qrank"
    assert user_dir.get_app_config_dir() != Path("qrank")


def test_app_config_dir_feeds_logging(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    """logging.json is looked up inside the app config dir."""
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))

    app_dir = user_dir.get_app_config_dir()

    assert app_dir == tmp_path / user_dir.APP_NAME
    assert not app_dir.exists()
