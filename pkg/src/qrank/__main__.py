"""qrank CLI implementation.

Verify the Q-rank conjecture for primes p = 3 mod 4 from the command line.
"""

import sys
from contextlib import contextmanager
from importlib.metadata import version as get_version
from pathlib import Path
from typing import TYPE_CHECKING, cast

import click
import typer
import typer.main
from rich.console import Console
from rich.status import Status

from .cfrac import convergents, expand_sqrt
from .errors import QRankError
from .functor import functor_image, minimize_multiplier
from .logging_config import get_logger, setup_logging
from .muir import eq5_polynomial, symbolic_symbols
from .rank import experimental_record
from .report import build_report, experimental_json, format_text, write_csv
from .settings import Settings
from .sweep import SearchOptions, check_range, iter_reports, run_sweep
from .user_dir import get_app_config_dir

if TYPE_CHECKING:
    from collections.abc import Iterator

    from click import Context, Parameter

console = Console(stderr=True)
logger = get_logger("cli")

app = typer.Typer(no_args_is_help=True)

USAGE_ERROR = 2
CHECK_FAILED = 1


@contextmanager
def _domain_errors() -> "Iterator[None]":
    """Turn a QRankError into a message on stderr and exit code 2."""
    try:
        yield
    except QRankError as error:
        logger.debug("rejected input: {}", error)
        typer.echo(f"Error: {error}", err=True)
        raise typer.Exit(USAGE_ERROR) from error


def _options(  # noqa: PLR0913
    settings: Settings,
    brute: bool,
    window: int | None,
    completion: int | None,
    roundtrip: bool | None,
    covary: int | None,
) -> SearchOptions:
    """Merge CLI flags over the settings."""
    return SearchOptions(
        brute=brute,
        window=window or settings.window,
        completion=completion or settings.completion,
        roundtrip=settings.roundtrip if roundtrip is None else roundtrip,
        covary=settings.covary if covary is None else covary,
    )


def _get_package_version() -> str:
    """Get the package version.

    Raises:
        RuntimeError: If the version cannot be retrieved.

    """
    try:
        return get_version("qrank")
    except Exception as error:
        logger.exception("Failed to retrieve package version:")
        msg = "Error: Failed to retrieve version"
        raise RuntimeError(msg) from error


@app.command(name="version")
def version_command() -> None:
    """Display the version of qrank."""
    try:
        typer.echo(f"qrank: {_get_package_version()}")
    except RuntimeError:
        typer.echo("Error: Failed to retrieve version", err=True)
        raise typer.Exit(code=1) from None


@app.callback()
def main_callback(
    ctx: typer.Context,
    debug: bool = typer.Option(
        False,
        "--debug",
        "-D",
        help="Enable debugging output.",
    ),
    quiet: bool = typer.Option(
        False,
        "--quiet",
        "-q",
        help="Log errors only; overrides --debug.",
    ),
    log_file: Path | None = typer.Option(
        None,
        "--log-file",
        help="Path to log file. If not specified, logging to file is disabled.",
    ),
) -> None:
    """Verify the Q-rank conjecture for primes p = 3 mod 4."""
    ctx.obj = Settings()
    debug = debug or ctx.obj.debug
    quiet = quiet or ctx.obj.quiet
    log_path = log_file or ctx.obj.log_file

    setup_logging(
        get_app_config_dir(),
        verbose=debug,
        quiet=quiet,
        log_file=log_path,
        enable_file_logging=None if log_path else False,
    )

    if debug or log_path:
        logger.enable("qrank")
        if log_path:
            logger.info("Logging to file: {}", log_path)
        logger.debug("settings: {}", ctx.obj)
    else:
        logger.disable("qrank")


@app.command(name="expand")
def expand_command(
    d: int = typer.Argument(..., help="Nonsquare integer D >= 2."),
    count: int = typer.Option(
        0,
        "--convergents",
        "-n",
        min=0,
        help="Also print the first N convergents A_i/B_i and quotients Q_i.",
    ),
) -> None:
    """Print the continued fraction of sqrt(D) as [a0; p1,...,pk]."""
    with _domain_errors():
        cf = expand_sqrt(d)
        typer.echo(str(cf))
        if count:
            table = convergents(cf, count)
            for i, (a, b) in enumerate(zip(table.A, table.B, strict=True)):
                typer.echo(f"{i}\t{a}/{b}\tQ={table.Q[i + 1]}")


@app.command(name="report")
def report_command(  # noqa: PLR0913
    ctx: typer.Context,
    p: int = typer.Argument(..., help="Prime p = 3 mod 4 (or square-free D)."),
    json_output: bool = typer.Option(
        False, "--json", help="Print the report as JSON."
    ),
    brute: bool = typer.Option(
        False, "--brute", help="Also run the brute-force complexity search."
    ),
    window: int | None = typer.Option(
        None, "--window", "-S", min=1, help="Shift window S for --brute."
    ),
    completion: int | None = typer.Option(
        None, "--completion", "-W", min=1, help="Completion window W for --brute."
    ),
    roundtrip: bool | None = typer.Option(
        None,
        "--roundtrip/--no-roundtrip",
        help="Require D to regenerate every perturbed expansion.",
    ),
    covary: int | None = typer.Option(
        None,
        "--covary",
        min=0,
        help="Other representatives a completion may change.",
    ),
    experimental: bool = typer.Option(
        False,
        "--experimental",
        help="Treat the argument as square-free D and print both sides unjudged.",
    ),
) -> None:
    """Report everything known about one prime p = 3 mod 4."""
    options = _options(ctx.obj, brute, window, completion, roundtrip, covary)
    with _domain_errors():
        if experimental:
            record = experimental_record(
                p,
                brute=options.brute,
                window=options.window,
                completion=options.completion,
                roundtrip=options.roundtrip,
                covary=options.covary,
            )
            typer.echo(experimental_json(record))
            return
        report = build_report(
            p,
            brute=options.brute,
            window=options.window,
            completion=options.completion,
            roundtrip=options.roundtrip,
            covary=options.covary,
        )
    typer.echo(report.to_json() if json_output else format_text(report))
    if not report.ok:
        raise typer.Exit(CHECK_FAILED)


@app.command(name="table")
def table_command(  # noqa: PLR0913
    ctx: typer.Context,
    maximum: int = typer.Argument(..., help="Exclusive upper bound for p."),
    brute: bool = typer.Option(False, "--brute", help="Fill the c_brute column."),
    window: int | None = typer.Option(None, "--window", "-S", min=1),
    completion: int | None = typer.Option(None, "--completion", "-W", min=1),
    roundtrip: bool | None = typer.Option(None, "--roundtrip/--no-roundtrip"),
    covary: int | None = typer.Option(None, "--covary", min=0),
) -> None:
    """Print one CSV row per prime p = 3 mod 4 below MAXIMUM."""
    if maximum < 3:  # noqa: PLR2004
        typer.echo(f"Error: maximum must be at least 3, got {maximum}", err=True)
        raise typer.Exit(USAGE_ERROR)
    options = _options(ctx.obj, brute, window, completion, roundtrip, covary)
    reports = []
    if maximum > 3:  # noqa: PLR2004
        with (
            _domain_errors(),
            Status(f"Building table for p < {maximum}", console=console),
        ):
            reports = list(
                iter_reports(
                    3,
                    maximum - 1,
                    jobs=ctx.obj.jobs,
                    chunk_size=ctx.obj.chunk_size,
                    options=options,
                )
            )
    typer.echo(write_csv(reports), nl=False)
    if not all(report.ok for report in reports):
        raise typer.Exit(CHECK_FAILED)


@app.command(name="sweep")
def sweep_command(  # noqa: PLR0913
    ctx: typer.Context,
    start: int = typer.Argument(..., help="Smallest p considered."),
    stop: int = typer.Argument(..., help="Largest p considered."),
    jobs: int | None = typer.Option(None, "--jobs", "-j", min=1),
    out: Path | None = typer.Option(
        None, "--out", "-o", help="JSON-lines output file (default stdout)."
    ),
    brute: bool = typer.Option(False, "--brute"),
    window: int | None = typer.Option(None, "--window", "-S", min=1),
    completion: int | None = typer.Option(None, "--completion", "-W", min=1),
    roundtrip: bool | None = typer.Option(None, "--roundtrip/--no-roundtrip"),
    covary: int | None = typer.Option(None, "--covary", min=0),
) -> None:
    """Write a JSON line per prime p = 3 mod 4 in [START, STOP]."""
    settings: Settings = ctx.obj
    options = _options(settings, brute, window, completion, roundtrip, covary)
    with _domain_errors():
        check_range(start, stop)
    workers = jobs or settings.jobs

    stream = out.open("w", encoding="utf-8") if out else sys.stdout
    try:
        with Status(f"Sweeping [{start}, {stop}] on {workers} jobs", console=console):
            summary = run_sweep(
                start,
                stop,
                stream,
                jobs=workers,
                chunk_size=settings.chunk_size,
                options=options,
            )
    finally:
        if out:
            stream.close()

    style = "green" if summary.ok else "red"
    console.print(f"[{style}]{summary.line()}[/{style}]")
    for p in summary.conjecture_failures + summary.invariant_failures:
        console.print(f"[red]failed:[/red] p={p}")
    if not summary.ok:
        raise typer.Exit(CHECK_FAILED)


@app.command(name="functor")
def functor_command(
    d: int = typer.Argument(..., help="Square-free D >= 2."),
    f: int = typer.Argument(1, help="Conductor f >= 1."),
) -> None:
    """Push the primitive multiplier of (D, f) through the functor."""
    with _domain_errors():
        image = functor_image(d, f)
        confirmed = minimize_multiplier(d, f)
    mult = image.multiplier
    typer.echo(f"multiplier: m={mult.m} n={mult.n} ({mult.case.value})")
    typer.echo(f"trace={mult.trace} norm={mult.norm}")
    typer.echo(f"cm matrix: {image.cm_matrix.as_rows()}")
    typer.echo(f"rm matrix: {image.rm_matrix.as_rows()}")
    typer.echo(f"params: D={image.params[0]} f={image.params[1]}")
    agrees = confirmed.norm == mult.norm
    typer.echo(
        f"exhaustive minimum: norm={confirmed.norm} agrees={str(agrees).lower()}"
    )
    if image.params != (d, f) or not agrees:
        raise typer.Exit(CHECK_FAILED)


@app.command(name="muir")
def muir_command(
    period_len: int = typer.Argument(..., help="Period length P (2..16)."),
) -> None:
    """Print A_{P-3,1}, B_{P-3,1}, A_{P-2,1} and the palindromic period equation."""
    with _domain_errors():
        symbols = symbolic_symbols(period_len)
        residual = eq5_polynomial(period_len)
    for name, poly in symbols.items():
        typer.echo(f"{name} = {poly}")
    typer.echo(f"eq5 = {residual}")


def setup_click_group() -> click.Group:
    """Build the Click group for the Typer app and add ``--version/-V``.

    This function is used by both the CLI entry point and tests.
    """
    click_group = cast("click.Group", typer.main.get_command(app))

    def version_callback(ctx: "Context", _param: "Parameter", value: bool) -> None:
        """Show version and exit."""
        if not value or ctx.resilient_parsing:
            return
        try:
            click.echo(f"qrank: {_get_package_version()}")
        except RuntimeError:
            click.echo("Error: Failed to retrieve version", err=True)
            ctx.exit(1)
        ctx.exit(0)

    click_group.params.append(
        click.Option(
            ["--version", "-V"],
            is_flag=True,
            expose_value=False,
            is_eager=True,
            help="Show the version and exit.",
            callback=version_callback,
        )
    )
    return click_group


def cli() -> None:
    """CLI entry point."""
    setup_click_group()()


if __name__ == "__main__":
    sys.exit(cli())
