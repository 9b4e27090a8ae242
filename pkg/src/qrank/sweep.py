"""Parallel sweep of the primes p = 3 mod 4 in a range.

The range is cut into chunks that are handed to a process pool; ``map``
yields chunk results in submission order, so output is ascending in p no
matter how the workers are scheduled.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import TYPE_CHECKING, TextIO

from loguru import logger
from sympy import primerange

from .complexity import DEFAULT_COVARY, DEFAULT_WINDOW
from .errors import QRankError
from .primes import PRIME_LIMIT
from .report import PrimeReport, build_report

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

DEFAULT_CHUNK_SIZE = 2000


@dataclass(frozen=True, slots=True)
class SearchOptions:
    """Brute-force options forwarded to every report."""

    brute: bool = False
    window: int = DEFAULT_WINDOW
    completion: int | None = None
    roundtrip: bool = False
    covary: int = DEFAULT_COVARY


@dataclass(slots=True)
class SweepSummary:
    """Counts collected while a sweep is written out."""

    start: int
    stop: int
    count: int = 0
    conjecture_failures: list[int] = field(default_factory=list)
    invariant_failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when no report failed."""
        return not self.conjecture_failures and not self.invariant_failures

    def line(self) -> str:
        """One-line human summary."""
        return (
            f"swept {self.count} primes p = 3 mod 4 in [{self.start}, {self.stop}]: "
            f"{len(self.conjecture_failures)} conjecture failures, "
            f"{len(self.invariant_failures)} invariant failures"
        )


def chunks(start: int, stop: int, size: int) -> list[tuple[int, int]]:
    """Split [start, stop] into half-open ranges of at most ``size`` integers."""
    return [(lo, min(lo + size, stop + 1)) for lo in range(start, stop + 1, size)]


def check_range(start: int, stop: int) -> None:
    """Reject an empty range or one outside [3, 2**64)."""
    if start > stop:
        msg = f"empty range: {start} > {stop}"
        raise QRankError(msg)
    if start < 3 or stop >= PRIME_LIMIT:  # noqa: PLR2004
        msg = f"range [{start}, {stop}] must lie within [3, 2**64)"
        raise QRankError(msg)


def reports_in_range(
    bounds: tuple[int, int], options: SearchOptions
) -> list[PrimeReport]:
    """Reports for the primes p = 3 mod 4 in the half-open ``bounds``."""
    lo, hi = bounds
    return [
        build_report(
            p,
            brute=options.brute,
            window=options.window,
            completion=options.completion,
            roundtrip=options.roundtrip,
            covary=options.covary,
        )
        for p in primerange(lo, hi)
        if p % 4 == 3  # noqa: PLR2004
    ]


def iter_reports(
    start: int,
    stop: int,
    *,
    jobs: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    options: SearchOptions | None = None,
) -> Iterator[PrimeReport]:
    """Iterate reports for every prime p = 3 mod 4 in [start, stop], ascending.

    Raises:
        QRankError: If the range is empty or leaves [3, 2**64).

    """
    check_range(start, stop)
    work = partial(reports_in_range, options=options or SearchOptions())
    pieces = chunks(start, stop, chunk_size)
    logger.debug(
        "sweep [{}, {}] in {} chunks on {} jobs", start, stop, len(pieces), jobs
    )
    return _generate(work, pieces, jobs)


def _generate(
    work: Callable[[tuple[int, int]], list[PrimeReport]],
    pieces: list[tuple[int, int]],
    jobs: int,
) -> Iterator[PrimeReport]:
    if jobs <= 1:
        for piece in pieces:
            yield from work(piece)
        return
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        for batch in executor.map(work, pieces):
            yield from batch


def run_sweep(  # noqa: PLR0913
    start: int,
    stop: int,
    out: TextIO,
    *,
    jobs: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    options: SearchOptions | None = None,
    progress: Callable[[PrimeReport], None] | None = None,
) -> SweepSummary:
    """Write one JSON line per report to ``out`` and summarize the failures."""
    summary = SweepSummary(start, stop)
    for report in iter_reports(
        start, stop, jobs=jobs, chunk_size=chunk_size, options=options
    ):
        out.write(report.to_json() + "\n")
        summary.count += 1
        if not report.conjecture_ok:
            summary.conjecture_failures.append(report.p)
        if report.invariant_failures:
            summary.invariant_failures.append(report.p)
        if progress is not None:
            progress(report)
    logger.info(summary.line())
    return summary
