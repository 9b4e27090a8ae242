"""test qrank CLI: qrank."""

import importlib
import json
from pathlib import Path

import click
import pytest
from click.testing import CliRunner as ClickRunner
from loguru import logger as loguru_logger
from sympy import primerange
from typer.testing import CliRunner

main_module_name = "qrank.__main__"
main_module = importlib.import_module(main_module_name)
runner = CliRunner()
# Use the Typer app for testing, not the wrapped cli function
cli = main_module.app


def _get_click_cli() -> click.Group:
    """Get the Click group with the version option attached."""
    return main_module.setup_click_group()


def test_cli_help() -> None:
    """Test the main command-line interface help flag."""
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for command in ("expand", "report", "table", "sweep", "functor", "muir"):
        assert command in result.stdout


def test_cli_no_arguments_shows_help() -> None:
    """Without a command the usage is printed."""
    result = runner.invoke(cli, [])
    assert "Usage:" in result.output


def test_cli_entry_point_exists(pyproject_toml: dict) -> None:
    """The qrank script points at the CLI entry function."""
    scripts = pyproject_toml["project"]["scripts"]
    assert scripts["qrank"] == "qrank.__main__:cli"


def test_cli_version_command(project_version: str) -> None:
    """Test the top-level version command."""
    result = runner.invoke(cli, ["version"])
    assert result.exit_code == 0
    assert result.stdout.strip() == f"qrank: {project_version}"


@pytest.mark.parametrize("flag", ["--version", "-V"])
def test_cli_version_option(flag: str, project_version: str) -> None:
    """Test the --version and -V options."""
    result = ClickRunner().invoke(_get_click_cli(), [flag])
    assert result.exit_code == 0
    assert result.output.strip() == f"qrank: {project_version}"


@pytest.mark.parametrize(
    ("d", "expected"),
    [("19", "[4; 2,1,3,1,2,8]"), ("83", "[9; 9,18]"), ("2", "[1; 2]")],
)
def test_expand(d: str, expected: str) -> None:
    """expand prints the bracket form."""
    result = runner.invoke(cli, ["expand", d])
    assert result.exit_code == 0
    assert result.stdout == expected + "\n"


def test_expand_with_convergents() -> None:
    """-n adds A_i/B_i and Q_{i+1} lines."""
    result = runner.invoke(cli, ["expand", "19", "-n", "3"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == [
        "[4; 2,1,3,1,2,8]",
        "0\t4/1\tQ=3",
        "1\t9/2\tQ=5",
        "2\t13/3\tQ=2",
    ]


@pytest.mark.parametrize("d", ["4", "1", "0"])
def test_expand_rejects(d: str) -> None:
    """Squares and radicands below 2 exit 2 with a message."""
    result = runner.invoke(cli, ["expand", d])
    assert result.exit_code == 2
    assert "Error:" in result.stderr


def test_expand_rejects_non_integer() -> None:
    """Click refuses a non-integer argument as a usage error."""
    result = runner.invoke(cli, ["expand", "abc"])
    assert result.exit_code == 2


def test_report_text() -> None:
    """report prints aligned key/value lines."""
    result = runner.invoke(cli, ["report", "43"])
    assert result.exit_code == 0
    assert "[6; 1,1,3,1,5,1,3,1,1,12]" in result.stdout
    assert "almost-culminating" in result.stdout


def test_report_json() -> None:
    """--json prints the full report as one object."""
    result = runner.invoke(cli, ["report", "79", "--json"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["h_K"] == 5
    assert payload["mw_rank"] == 0
    assert payload["complexity_closed"] == 1
    assert payload["conjecture_ok"] is True


def test_report_brute() -> None:
    """--brute fills the brute-force complexity."""
    result = runner.invoke(cli, ["report", "7", "--json", "--brute", "-W", "60"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["complexity_brute"] == 1


def test_report_window_from_settings(monkeypatch: pytest.MonkeyPatch) -> None:
    """QRANK_COMPLETION is used when -W is not given."""
    monkeypatch.setenv("QRANK_COMPLETION", "5")
    result = runner.invoke(cli, ["report", "47", "--brute"])
    assert result.exit_code == 2
    assert "Error:" in result.stderr


@pytest.mark.parametrize("p", ["13", "15", "2"])
def test_report_rejects(p: str) -> None:
    """Composites and primes that are not 3 mod 4 exit 2."""
    result = runner.invoke(cli, ["report", p])
    assert result.exit_code == 2


def test_report_experimental() -> None:
    """--experimental accepts square-free D and prints an unjudged record."""
    result = runner.invoke(cli, ["report", "5", "--experimental"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert (payload["discriminant"], payload["h_k"]) == (-20, 2)


def test_report_experimental_rejects_squares() -> None:
    """--experimental still needs a square-free D."""
    result = runner.invoke(cli, ["report", "12", "--experimental"])
    assert result.exit_code == 2


def test_table_100_matches_golden(golden_table: str) -> None:
    """table 100 is bit-exact against the golden CSV."""
    result = runner.invoke(cli, ["table", "100"])
    assert result.exit_code == 0
    assert result.stdout == golden_table


def test_table_1000_row_count() -> None:
    """One row per prime p = 3 mod 4 below 1000, plus the header."""
    expected = sum(1 for p in primerange(3, 1000) if p % 4 == 3)
    assert expected == 87
    result = runner.invoke(cli, ["table", "1000"])
    assert result.exit_code == 0
    assert len(result.stdout.splitlines()) == expected + 1


def test_table_header_only() -> None:
    """No primes below 3 but the header is still printed."""
    result = runner.invoke(cli, ["table", "3"])
    assert result.exit_code == 0
    assert result.stdout.startswith("p,residue8,cf,")
    assert len(result.stdout.splitlines()) == 1


def test_table_rejects_small_maximum() -> None:
    """A maximum below 3 is a usage error."""
    result = runner.invoke(cli, ["table", "2"])
    assert result.exit_code == 2


def test_sweep_to_file(tmp_path: Path) -> None:
    """sweep writes JSON lines to --out and a summary to stderr."""
    out = tmp_path / "sweep.jsonl"
    result = runner.invoke(cli, ["sweep", "3", "100", "-o", str(out)])
    assert result.exit_code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 13
    assert json.loads(lines[-1])["p"] == 83
    assert "swept 13 primes" in result.stderr


def test_sweep_to_stdout() -> None:
    """Without --out the JSON lines go to stdout."""
    result = runner.invoke(cli, ["sweep", "3", "20"])
    assert result.exit_code == 0
    assert [json.loads(line)["p"] for line in result.stdout.splitlines()] == [
        3,
        7,
        11,
        19,
    ]


def test_sweep_rejects_empty_range(tmp_path: Path) -> None:
    """An empty range exits 2 before the output file is opened."""
    out = tmp_path / "never.jsonl"
    result = runner.invoke(cli, ["sweep", "10", "9", "-o", str(out)])
    assert result.exit_code == 2
    assert not out.exists()


def test_functor() -> None:
    """functor prints the multiplier, both matrices and the recovered params."""
    result = runner.invoke(cli, ["functor", "5"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == [
        "multiplier: m=-1 n=2 (1 mod 4)",
        "trace=0 norm=5",
        "cm matrix: ((0, -1), (5, 0))",
        "rm matrix: ((0, -1), (-5, 0))",
        "params: D=5 f=1",
        "exhaustive minimum: norm=5 agrees=true",
    ]


def test_functor_with_conductor() -> None:
    """A conductor comes back out unchanged."""
    result = runner.invoke(cli, ["functor", "3", "2"])
    assert result.exit_code == 0
    assert "params: D=3 f=2" in result.stdout


@pytest.mark.parametrize("args", [["4"], ["6", "0"]])
def test_functor_rejects(args: list[str]) -> None:
    """Non-square-free D and f < 1 exit 2."""
    result = runner.invoke(cli, ["functor", *args])
    assert result.exit_code == 2


def test_muir() -> None:
    """muir prints the three symbols and the palindromic residual."""
    result = runner.invoke(cli, ["muir", "4"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[:3] == [
        "A[1,1] = x1*x2 + 1",
        "B[1,1] = x2",
        "A[2,1] = x1*x2*x3 + x1 + x3",
    ]
    assert lines[3].startswith("eq5 = ")


@pytest.mark.parametrize("period_len", ["1", "17"])
def test_muir_rejects(period_len: str) -> None:
    """Periods outside 2..16 exit 2."""
    result = runner.invoke(cli, ["muir", period_len])
    assert result.exit_code == 2


def test_cli_debug_flag() -> None:
    """--debug does not change the output."""
    result = runner.invoke(cli, ["--debug", "expand", "3"])
    assert result.exit_code == 0
    assert result.stdout == "[1; 1,2]\n"


def test_cli_with_log_file_option(tmp_path: Path) -> None:
    """Test that log file is created when --log-file is specified."""
    log_file_path = tmp_path / "custom.log"

    result = runner.invoke(cli, ["--log-file", str(log_file_path), "expand", "19"])

    assert result.exit_code == 0, f"Output: {result.output}"

    # the file sink is enqueued; flush it before reading
    loguru_logger.complete()

    assert log_file_path.exists()
    assert "Logging to file:" in log_file_path.read_text()


def test_cli_quiet_flag_drops_info_from_log_file(tmp_path: Path) -> None:
    """--quiet keeps the file sink at ERROR, so the INFO banner is not written."""
    log_file_path = tmp_path / "quiet.log"

    result = runner.invoke(
        cli, ["--quiet", "--log-file", str(log_file_path), "expand", "19"]
    )

    assert result.exit_code == 0, f"Output: {result.output}"
    assert result.stdout == "[4; 2,1,3,1,2,8]\n"
    loguru_logger.complete()
    text = log_file_path.read_text() if log_file_path.exists() else ""
    assert "Logging to file:" not in text


def test_report_brute_disagreement_exits_one() -> None:
    """sqrt(3) measures 1 against a closed form of 2; the report says so."""
    result = runner.invoke(cli, ["report", "3", "--json", "--brute"])
    assert result.exit_code == 1
    payload = json.loads(result.stdout)
    assert payload["complexity_brute"] == 1
    assert payload["complexity_closed"] == 2
    assert payload["conjecture_ok"] is True
