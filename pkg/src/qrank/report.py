"""Per-prime reports: assembly, invariant checks and serialization."""

from __future__ import annotations

import csv
import io
from typing import TYPE_CHECKING

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from .cfrac import expand_sqrt
from .complexity import (
    DEFAULT_COVARY,
    DEFAULT_WINDOW,
    MidpointKind,
    assess_complexity,
    classify_midpoint,
    family_match,
)
from .muir import d_from_solution, period_tuple, solve_m
from .pell import middle_identity, period_parity_check, trichotomy
from .primes import require_prime_3_mod_4
from .rank import ExperimentalRecord, mordell_weil_rank, verify_conjecture

if TYPE_CHECKING:
    from collections.abc import Iterable

CSV_COLUMNS = (
    "p",
    "residue8",
    "cf",
    "period_len",
    "midpoint",
    "q_rank",
    "h_K",
    "mw_rank",
    "c_closed",
    "c_brute",
    "conjecture_ok",
)

# solvable rhs of x^2 - p y^2 = r, keyed by p mod 8
_EXPECTED_RHS = {3: -2, 7: 2}


class PrimeReport(BaseModel):
    """Everything qrank knows about one prime p = 3 mod 4."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    p: int
    residue8: int
    cf_text: str
    period_len: int
    midpoint_class: MidpointKind
    family: str | None = None
    q_rank: int
    h_k: int = Field(alias="h_K")
    mw_rank: int
    complexity_closed: int
    complexity_brute: int | None = None
    conjecture_ok: bool
    invariant_failures: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when the conjecture holds and every invariant check passed."""
        return self.conjecture_ok and not self.invariant_failures

    def csv_row(self) -> list[str]:
        """Values in :data:`CSV_COLUMNS` order."""
        brute = "" if self.complexity_brute is None else str(self.complexity_brute)
        return [
            str(self.p),
            str(self.residue8),
            self.cf_text,
            str(self.period_len),
            self.midpoint_class.value,
            str(self.q_rank),
            str(self.h_k),
            str(self.mw_rank),
            str(self.complexity_closed),
            brute,
            "true" if self.conjecture_ok else "false",
        ]

    def to_json(self) -> str:
        """One JSON line, with the class number keyed ``h_K``."""
        return self.model_dump_json(by_alias=True)


def _check_invariants(p: int, cf_period_len: int, midpoint: MidpointKind) -> list[str]:
    failures = []
    parity = period_parity_check(p)
    if cf_period_len % 2:
        failures.append(f"period {cf_period_len} is odd")
    elif (parity.period_mod_4 == 2) != (p % 8 == 3):  # noqa: PLR2004
        failures.append(f"period {cf_period_len} mod 4 disagrees with p mod 8")
    else:
        if not middle_identity(p).holds:
            failures.append("middle identity A^2 - pB^2 = (-1)^k 2 fails")
        if midpoint is MidpointKind.NEITHER:
            failures.append("midpoint is neither culminating nor almost-culminating")
    if trichotomy(p).solvable_rhs != _EXPECTED_RHS[p % 8]:
        failures.append("solvable Pell equation disagrees with p mod 8")
    return failures


def build_report(  # noqa: PLR0913
    p: int,
    *,
    brute: bool = False,
    window: int = DEFAULT_WINDOW,
    completion: int | None = None,
    roundtrip: bool = False,
    covary: int = DEFAULT_COVARY,
) -> PrimeReport:
    """Assemble the report for a prime p = 3 mod 4 and check its invariants.

    Raises:
        NotPrimeError: If ``p`` is composite.
        WrongResidueError: If ``p`` is not 3 mod 4.

    """
    require_prime_3_mod_4(p)
    cf = expand_sqrt(p)
    midpoint = classify_midpoint(cf)
    failures = _check_invariants(p, cf.period_len, midpoint.kind)

    xs = period_tuple(cf)
    m = solve_m(xs)
    if m is None or d_from_solution(xs, m) != p:
        failures.append("tuple of sqrt(p) does not solve the period equation back to p")

    complexity = assess_complexity(
        p,
        cf,
        brute=brute,
        window=window,
        completion=completion,
        roundtrip=roundtrip,
        covary=covary,
    )
    if not complexity.agrees:
        failures.append(
            f"brute-force complexity {complexity.brute_force} "
            f"!= closed form {complexity.closed_form}"
        )

    rank = mordell_weil_rank(p)
    verdict = verify_conjecture(p, complexity.closed_form)
    family = family_match(cf)
    for failure in failures:
        logger.warning("p={}: {}", p, failure)

    return PrimeReport(
        p=p,
        residue8=p % 8,
        cf_text=str(cf),
        period_len=cf.period_len,
        midpoint_class=midpoint.kind,
        family=family.name if family else None,
        q_rank=rank.q_rank,
        h_K=rank.h_k,
        mw_rank=rank.mw_rank,
        complexity_closed=complexity.closed_form,
        complexity_brute=complexity.brute_force,
        conjecture_ok=verdict.holds,
        invariant_failures=failures,
    )


def format_text(report: PrimeReport) -> str:
    """Aligned ``key: value`` lines for a single report."""
    fields = report.model_dump(by_alias=True)
    width = max(len(key) for key in fields)
    lines = []
    for key, value in fields.items():
        if key == "invariant_failures":
            value = ", ".join(value) or "none"  # noqa: PLW2901
        elif isinstance(value, bool):
            value = "true" if value else "false"  # noqa: PLW2901
        elif value is None:
            value = "-"  # noqa: PLW2901
        lines.append(f"{key:<{width}}  {value}")
    return "\n".join(lines)


def write_csv(reports: Iterable[PrimeReport]) -> str:
    """Render reports as CSV with a header row and ``\\n`` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        writer.writerow(report.csv_row())
    return buffer.getvalue()


def experimental_json(record: ExperimentalRecord) -> str:
    """Serialize an experimental record (no verdict) as JSON."""
    return TypeAdapter(ExperimentalRecord).dump_json(record, indent=2).decode()
