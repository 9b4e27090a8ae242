"""Midpoint classes, families and the arithmetic complexity of a period.

The closed form reads the complexity off p mod 8. The brute-force estimator
shifts representatives x_i (i <= k, mirrors tied) by s in [-S, S] and searches
depth first for a completion: at most ``covary`` of the other representatives
may take new values in [1, W], and solve_m must return a positive integer m.
An index set is free when every combination of its shifts completes; the
dimension is the size of the largest free set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from itertools import combinations, product
from typing import TYPE_CHECKING

from loguru import logger
from sympy import isprime

from .cfrac import PeriodicCF, expand_sqrt, is_square
from .errors import NotASolutionError, OddPeriodError, WindowTooSmallError
from .muir import SolutionTuple, d_from_solution, eq5_residual, solve_m
from .primes import require_prime_3_mod_4

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

DEFAULT_WINDOW = 3
DEFAULT_COVARY = 1

P6_CULMINATING = "P6-culminating"
P6_ALMOST_CULMINATING = "P6-almost-culminating"
P4_ALMOST_CULMINATING = "P4-almost-culminating"


class MidpointKind(StrEnum):
    """Shape of the middle of an even period."""

    CULMINATING = "culminating"
    ALMOST_CULMINATING = "almost-culminating"
    NEITHER = "neither"


@dataclass(frozen=True, slots=True)
class MidpointClass:
    """Midpoint kind of a period P = 2k."""

    kind: MidpointKind
    k: int


@dataclass(frozen=True, slots=True)
class FamilyMatch:
    """Membership of an expansion in one of the parametric families."""

    name: str
    params: dict[str, int]
    d: int


@dataclass(frozen=True, slots=True)
class SearchParams:
    """Windows used by the brute-force estimator."""

    window: int
    completion: int
    roundtrip: bool
    covary: int


@dataclass(frozen=True, slots=True)
class DimensionSearch:
    """Outcome of the brute-force dimension search for one tuple."""

    dimension: int
    free_indices: tuple[int, ...]
    basis: tuple[int, ...]
    params: SearchParams


@dataclass(frozen=True, slots=True)
class ComplexityReport:
    """Closed-form complexity, with the brute-force estimate when requested."""

    closed_form: int
    brute_force: int | None = None
    free_variable_indices: tuple[int, ...] = ()
    search_params: SearchParams | None = None

    @property
    def agrees(self) -> bool:
        """True when there is no brute-force value or it equals the closed form."""
        return self.brute_force is None or self.brute_force == self.closed_form


@dataclass(frozen=True, slots=True)
class StepExtension:
    """One extension of a solution by the inserted pair (y1, y_{k-1})."""

    y1: int
    y_mid: int
    m: int
    d: int
    regenerates: bool
    d_prime: bool
    case: str | None


@dataclass(frozen=True, slots=True)
class StepProbe:
    """All extensions found by :func:`weber_step_probe`."""

    base: tuple[int, ...]
    window: int
    extensions: tuple[StepExtension, ...] = field(default=())

    @property
    def counterexamples(self) -> tuple[StepExtension, ...]:
        """Regenerating prime-D extensions with y_{k-1} = 2 y1."""
        return tuple(
            ext
            for ext in self.extensions
            if ext.regenerates and ext.d_prime and ext.case == "double"
        )

    @property
    def prime_extensions(self) -> tuple[StepExtension, ...]:
        """Regenerating extensions whose D is prime."""
        return tuple(e for e in self.extensions if e.regenerates and e.d_prime)


def _tuple(cf: PeriodicCF) -> tuple[int, ...]:
    return (cf.head, *cf.period)


def classify_midpoint(cf: PeriodicCF) -> MidpointClass:
    """Classify the midpoint x_k of an even period.

    For k = 1 the neighbour x_{k-1} is read on the mirror, x_{k+1} = x_P.
    """
    period_len = cf.period_len
    if period_len % 2:
        msg = f"{cf} has odd period {period_len}"
        raise OddPeriodError(msg)
    xs = _tuple(cf)
    k = period_len // 2
    x0 = xs[0]
    if xs[k] == x0:
        return MidpointClass(MidpointKind.CULMINATING, k)
    neighbour = xs[k - 1] if k >= 2 else xs[k + 1]  # noqa: PLR2004
    if xs[k] == x0 - 1 and neighbour == 1:
        return MidpointClass(MidpointKind.ALMOST_CULMINATING, k)
    return MidpointClass(MidpointKind.NEITHER, k)


def complexity_closed(p: int) -> int:
    """Return 2 for p = 3 mod 8 and 1 for p = 7 mod 8."""
    require_prime_3_mod_4(p)
    return 2 if p % 8 == 3 else 1  # noqa: PLR2004


def p6_culminating_cf(n: int, x1: int) -> tuple[PeriodicCF, int]:
    """Return [x0; x1, 2x1, x0, 2x1, x1, 2x0] and D for x0 = n(2x1**2 + 1) + x1.

    At n = 0 the period collapses to its minimal form (x1, 2x1).
    """
    x0 = n * (2 * x1 * x1 + 1) + x1
    d = x0 * x0 + 4 * n * x1 + 2
    if n == 0:
        return PeriodicCF(x0, (x0, 2 * x0)), d
    return PeriodicCF(x0, (x1, 2 * x1, x0, 2 * x1, x1, 2 * x0)), d


def p6_almost_culminating_cf(s: int) -> tuple[PeriodicCF, int]:
    """Return [3s+1; 2, 1, 3s, 1, 2, 6s+2] and D = (3s+1)**2 + 2s + 1."""
    x0 = 3 * s + 1
    return PeriodicCF(x0, (2, 1, 3 * s, 1, 2, 2 * x0)), x0 * x0 + 2 * s + 1


def p4_almost_culminating_cf(x0: int) -> tuple[PeriodicCF, int]:
    """Return [x0; 1, x0-1, 1, 2x0] and D = (x0+1)**2 - 2."""
    return PeriodicCF(x0, (1, x0 - 1, 1, 2 * x0)), (x0 + 1) ** 2 - 2


def family_match(cf: PeriodicCF) -> FamilyMatch | None:
    """Identify the parametric family an expansion belongs to, if any."""
    x0, period = cf.head, cf.period
    match cf.period_len:
        case 2 if period == (x0, 2 * x0):
            return FamilyMatch(P6_CULMINATING, {"n": 0, "x1": x0}, x0 * x0 + 2)
        case 4 if x0 >= 2 and period == (1, x0 - 1, 1, 2 * x0):  # noqa: PLR2004
            return FamilyMatch(P4_ALMOST_CULMINATING, {"x0": x0}, (x0 + 1) ** 2 - 2)
        case 6:
            return _match_p6(cf)
    return None


def _match_p6(cf: PeriodicCF) -> FamilyMatch | None:
    x0, period = cf.head, cf.period
    x1 = period[0]
    if period == (x1, 2 * x1, x0, 2 * x1, x1, 2 * x0):
        n, remainder = divmod(x0 - x1, 2 * x1 * x1 + 1)
        if remainder == 0 and n >= 0:
            d = x0 * x0 + 4 * n * x1 + 2
            return FamilyMatch(P6_CULMINATING, {"n": n, "x1": x1}, d)
    s, remainder = divmod(x0 - 1, 3)
    if remainder == 0 and s >= 1 and period == (2, 1, 3 * s, 1, 2, 2 * x0):
        return FamilyMatch(P6_ALMOST_CULMINATING, {"s": s}, x0 * x0 + 2 * s + 1)
    return None


def _unfold(reps: Sequence[int], period_len: int) -> tuple[int, ...]:
    """Full tuple (x_0, ..., x_P) from the representatives (x_0, ..., x_k)."""
    mirrored = [reps[min(i, period_len - i)] for i in range(1, period_len)]
    return (reps[0], *mirrored, 2 * reps[0])


class _Completion:
    """Depth-first completion of a partly shifted tuple of representatives."""

    def __init__(self, base: tuple[int, ...], params: SearchParams) -> None:
        self.base = base
        self.params = params
        self.period_len = 2 * (len(base) - 1)
        self._cache: dict[tuple[int, ...], bool] = {}

    def admissible(self, reps: tuple[int, ...]) -> bool:
        """True when ``reps`` unfolds to a solution (and regenerates, if asked)."""
        if reps not in self._cache:
            self._cache[reps] = self._check(reps)
        return self._cache[reps]

    def _check(self, reps: tuple[int, ...]) -> bool:
        if any(v < 1 for v in reps):
            return False
        xs = _unfold(reps, self.period_len)
        m = solve_m(xs)
        if m is None:
            return False
        if not self.params.roundtrip:
            return True
        d = d_from_solution(xs, m)
        if d < 2 or is_square(d):  # noqa: PLR2004
            return False
        return expand_sqrt(d) == PeriodicCF(xs[0], xs[1:])

    def _values(self, index: int) -> list[int]:
        """Candidate values in [1, W], nearest to the base value first."""
        start = self.base[index]
        values = range(1, self.params.completion + 1)
        return sorted((v for v in values if v != start), key=lambda v: abs(v - start))

    def complete(self, shifted: dict[int, int]) -> tuple[int, ...] | None:
        """Return a solution agreeing with ``shifted``, or None.

        At most ``covary`` representatives outside ``shifted`` leave their
        base value; solve_m rejects every non-integral leaf.
        """
        reps = list(self.base)
        for index, value in shifted.items():
            reps[index] = value
        if self.admissible(tuple(reps)):
            return tuple(reps)
        others = [j for j in range(len(reps)) if j not in shifted]
        for size in range(1, min(self.params.covary, len(others)) + 1):
            for chosen in combinations(others, size):
                found = self._fill(reps, chosen, 0)
                if found is not None:
                    return found
        return None

    def _fill(
        self, reps: list[int], chosen: Sequence[int], depth: int
    ) -> tuple[int, ...] | None:
        if depth == len(chosen):
            candidate = tuple(reps)
            return candidate if self.admissible(candidate) else None
        index = chosen[depth]
        for value in self._values(index):
            reps[index] = value
            found = self._fill(reps, chosen, depth + 1)
            if found is not None:
                reps[index] = self.base[index]
                return found
        reps[index] = self.base[index]
        return None

    def shifts(self, index: int) -> range:
        """Values x_i* + s for s in [-S, S] with x_i* + s >= 1."""
        start = self.base[index]
        window = self.params.window
        return range(max(1, start - window), start + window + 1)

    def jointly_free(self, indices: Sequence[int]) -> bool:
        """True when every combination of shifts of ``indices`` completes."""
        for values in product(*(self.shifts(i) for i in indices)):
            if self.complete(dict(zip(indices, values, strict=True))) is None:
                return False
        return True


def dimension_search(
    cf: PeriodicCF,
    window: int = DEFAULT_WINDOW,
    completion: int | None = None,
    *,
    roundtrip: bool = False,
    covary: int = DEFAULT_COVARY,
) -> DimensionSearch:
    """Run the brute-force estimator on the tuple read off ``cf``.

    A representative is free when each of its shifts completes on its own;
    the dimension is the size of the largest set of free representatives
    whose shifts complete jointly.

    Args:
        cf: Expansion of sqrt(D) with even period.
        window: S, the largest shift tested in each direction.
        completion: W, upper bound for completed coordinates; ``None`` picks
            max(2 x0 + 4, max(xs) + S + 1).
        roundtrip: Also require that D regenerates the perturbed expansion.
        covary: How many other representatives a completion may change.

    Raises:
        OddPeriodError: If the period is odd.
        WindowTooSmallError: If the unperturbed tuple is not admissible.

    """
    period_len = cf.period_len
    if period_len % 2:
        msg = f"{cf} has odd period {period_len}"
        raise OddPeriodError(msg)
    xs = _tuple(cf)
    k = period_len // 2
    if completion is None:
        completion = max(2 * xs[0] + 4, max(xs) + window + 1)
    params = SearchParams(window, completion, roundtrip, covary)
    base = tuple(xs[: k + 1])
    search = _Completion(base, params)
    if max(base) > completion or not search.admissible(base):
        msg = f"{cf} is not a solution inside the window W={completion}"
        raise WindowTooSmallError(msg)

    free = [i for i in range(k + 1) if search.jointly_free((i,))]
    basis: tuple[int, ...] = (free[0],) if free else ()
    for size in range(2, len(free) + 1):
        joint = next(
            (s for s in combinations(free, size) if search.jointly_free(s)), None
        )
        if joint is None:
            break
        basis = joint

    logger.debug(
        "dimension search {}: free={} basis={} W={}", cf, free, basis, completion
    )
    return DimensionSearch(len(basis), tuple(free), basis, params)


def dimension_bruteforce(
    cf: PeriodicCF,
    window: int = DEFAULT_WINDOW,
    completion: int | None = None,
    *,
    roundtrip: bool = False,
    covary: int = DEFAULT_COVARY,
) -> int:
    """Return the brute-force dimension of the solution read off ``cf``."""
    return dimension_search(
        cf, window, completion, roundtrip=roundtrip, covary=covary
    ).dimension


def assess_complexity(
    p: int,
    cf: PeriodicCF,
    *,
    brute: bool = False,
    window: int = DEFAULT_WINDOW,
    completion: int | None = None,
    roundtrip: bool = False,
    covary: int = DEFAULT_COVARY,
) -> ComplexityReport:
    """Closed-form complexity of ``p`` plus the optional brute-force estimate."""
    closed = complexity_closed(p)
    if not brute:
        return ComplexityReport(closed)
    search = dimension_search(
        cf, window, completion, roundtrip=roundtrip, covary=covary
    )
    return ComplexityReport(
        closed, search.dimension, search.free_indices, search.params
    )


def _insert_pair(xs: Sequence[int], y1: int, y_mid: int) -> tuple[int, ...]:
    """Insert y1 after x0 and y_mid before the middle, mirrored (P -> P + 4)."""
    period_len = len(xs) - 1
    k = period_len // 2
    left = (y1, *xs[1:k], y_mid)
    return (xs[0], *left, xs[k], *left[::-1], xs[-1])


def _step_case(x1: int, y1: int, y_mid: int) -> str | None:
    if y_mid == 2 * y1:
        return "double"
    if y_mid == 2 * y1 + 1 and x1 == 1:
        return "double_plus_one"
    return None


def weber_step_probe(solution: SolutionTuple, window: int) -> StepProbe:
    """Enumerate extensions of ``solution`` by (y1, y_{k-1}) in [1, W].

    Every pair whose extended tuple solves the period equation is recorded with its D,
    whether D regenerates the extended expansion, and whether D is prime.

    Raises:
        NotASolutionError: If ``solution`` does not satisfy the period equation.
        OddPeriodError: If its period is odd.

    """
    xs = solution.xs
    if eq5_residual(xs, solution.m) != 0:
        msg = f"{xs} with m={solution.m} does not satisfy the period equation"
        raise NotASolutionError(msg)
    if solution.period_len % 2:
        msg = f"{xs} has odd period {solution.period_len}"
        raise OddPeriodError(msg)

    extensions: list[StepExtension] = []
    for y1, y_mid in product(range(1, window + 1), repeat=2):
        extended = _insert_pair(xs, y1, y_mid)
        m = solve_m(extended)
        if m is None:
            continue
        d = d_from_solution(extended, m)
        valid = d >= 2 and not is_square(d)  # noqa: PLR2004
        regenerates = valid and expand_sqrt(d) == PeriodicCF(extended[0], extended[1:])
        extensions.append(
            StepExtension(
                y1,
                y_mid,
                m,
                d,
                regenerates,
                valid and isprime(d),
                _step_case(xs[1], y1, y_mid),
            )
        )
    logger.debug("weber step {}: {} extensions", xs, len(extensions))
    return StepProbe(tuple(xs), window, tuple(extensions))


def culminating_p4_search(bound: int = 200) -> list[tuple[tuple[int, ...], int, int]]:
    """Search x0, x1 <= bound for culminating P = 4 solutions with prime D.

    Tuples are (x0, x1, x0, x1, 2x0); returns (xs, m, D) for every hit.
    """
    hits: list[tuple[tuple[int, ...], int, int]] = []
    for x0, x1 in product(range(1, bound + 1), repeat=2):
        xs = (x0, x1, x0, x1, 2 * x0)
        m = solve_m(xs)
        if m is None:
            continue
        d = d_from_solution(xs, m)
        if isprime(d):
            hits.append((xs, m, d))
    return hits
