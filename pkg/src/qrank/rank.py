"""Q-rank of E(p), class numbers of imaginary quadratic fields, and the verdict.

The rank side is never computed by descent: for p = 3 mod 4 the Mordell-Weil
rank of E(p) is 2 h_K when p = 3 mod 8 and 0 when p = 7 mod 8, with
K = Q(sqrt(-p)) of discriminant -p.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from loguru import logger

from .cfrac import expand_sqrt
from .complexity import (
    DEFAULT_COVARY,
    DEFAULT_WINDOW,
    FamilyMatch,
    MidpointClass,
    classify_midpoint,
    dimension_bruteforce,
    family_match,
)
from .errors import InvalidDiscriminantError
from .primes import require_prime_3_mod_4, require_square_free


@dataclass(frozen=True, slots=True)
class RankRecord:
    """Both ranks of E(p) together with the class number they hinge on."""

    p: int
    q_rank: int
    h_k: int
    mw_rank: int


@dataclass(frozen=True, slots=True)
class Verdict:
    """Both sides of q_rank(p) + 1 = c."""

    p: int
    q_rank: int
    complexity: int

    @property
    def holds(self) -> bool:
        """True when the Q-rank plus one equals the complexity."""
        return self.q_rank + 1 == self.complexity


@dataclass(frozen=True, slots=True)
class ExperimentalRecord:
    """Both sides of the general conjecture for square-free D, f = 1, unjudged."""

    d: int
    discriminant: int
    h_k: int
    cf: str
    period_len: int
    midpoint: MidpointClass | None
    family: FamilyMatch | None
    complexity_brute: int | None


def q_rank(p: int) -> int:
    """Return 1 for p = 3 mod 8 and 0 for p = 7 mod 8."""
    require_prime_3_mod_4(p)
    return 1 if p % 8 == 3 else 0  # noqa: PLR2004


def reduced_forms(disc: int) -> list[tuple[int, int, int]]:
    """Return the reduced primitive forms (a, b, c) of discriminant ``disc``.

    Reduced means |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.

    Raises:
        InvalidDiscriminantError: Unless disc < 0 and disc = 0, 1 mod 4.

    """
    if disc >= 0 or disc % 4 not in {0, 1}:
        msg = f"{disc} is not a negative discriminant (0 or 1 mod 4)"
        raise InvalidDiscriminantError(msg)
    forms = []
    a_max = isqrt(-disc // 3)
    for a in range(1, a_max + 1):
        # b = disc mod 2
        for b in range(-a + 1 + (a + disc + 1) % 2, a + 1, 2):
            c, remainder = divmod(b * b - disc, 4 * a)
            if remainder or c < a:
                continue
            if b < 0 and a == c:
                continue
            if gcd(a, b, c) == 1:
                forms.append((a, b, c))
    return forms


def class_number(disc: int) -> int:
    """Count reduced primitive binary quadratic forms of discriminant ``disc``."""
    return len(reduced_forms(disc))


def mordell_weil_rank(p: int) -> RankRecord:
    """Return q_rank, h_K and the Mordell-Weil rank 2 h_K q_rank of E(p)."""
    rank = q_rank(p)
    h_k = class_number(-p)
    return RankRecord(p, rank, h_k, 2 * h_k * rank)


def verify_conjecture(p: int, complexity: int) -> Verdict:
    """Compare q_rank(p) + 1 with ``complexity``."""
    verdict = Verdict(p, q_rank(p), complexity)
    if not verdict.holds:
        logger.warning(
            "p={}: q_rank + 1 = {} but complexity = {}",
            p,
            verdict.q_rank + 1,
            complexity,
        )
    return verdict


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(-d)) for square-free d > 0."""
    require_square_free(d)
    return -d if d % 4 == 3 else -4 * d  # noqa: PLR2004


def experimental_record(
    d: int,
    *,
    brute: bool = False,
    window: int = DEFAULT_WINDOW,
    completion: int | None = None,
    roundtrip: bool = False,
    covary: int = DEFAULT_COVARY,
) -> ExperimentalRecord:
    """Collect the class number and period data for square-free ``d``.

    The brute-force complexity is only attempted for even periods.
    """
    disc = fundamental_discriminant(d)
    cf = expand_sqrt(d)
    even = cf.period_len % 2 == 0
    complexity = None
    if brute and even:
        complexity = dimension_bruteforce(
            cf, window, completion, roundtrip=roundtrip, covary=covary
        )
    return ExperimentalRecord(
        d=d,
        discriminant=disc,
        h_k=class_number(disc),
        cf=str(cf),
        period_len=cf.period_len,
        midpoint=classify_midpoint(cf) if even else None,
        family=family_match(cf),
        complexity_brute=complexity,
    )
