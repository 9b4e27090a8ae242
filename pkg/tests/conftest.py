"""qrank pytest configuration file."""

import tomllib
from pathlib import Path

import pytest
from sympy import primerange

from qrank.cfrac import PeriodicCF, parse_cf

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def project_root() -> Path:
    """Return the root path of the project."""
    return Path(__file__).parent.parent


@pytest.fixture(scope="session")
def pyproject_toml(project_root: Path) -> dict:
    """Return the contents of the pyproject.toml file."""
    with (project_root / "pyproject.toml").open("rb") as handle:
        return tomllib.load(handle)


@pytest.fixture(scope="session")
def golden_table() -> str:
    """Return the expected ``table 100`` output."""
    return (GOLDEN_DIR / "table_100.csv").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def primes_3_mod_4() -> list[int]:
    """Primes p = 3 mod 4 below 2000, enough for the fast suites."""
    return [p for p in primerange(3, 2000) if p % 4 == 3]


def cf(text: str) -> PeriodicCF:
    """Shorthand for parsing a continued fraction in test tables."""
    return parse_cf(text)


@pytest.fixture(scope="session")
def project_version(pyproject_toml: dict) -> str:
    """Return the project version from pyproject.toml."""
    return pyproject_toml["project"]["version"]
