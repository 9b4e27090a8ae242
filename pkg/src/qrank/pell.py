"""Pell-type equations x**2 - D y**2 = r for r in {1, -1, 2, -2}.

Solutions are read off the convergents of sqrt(D). Every primitive solution
with |r| < sqrt(D) is a convergent, and scanning two periods covers the sign
alternation of odd periods. For D in {2, 3} that bound fails for |r| = 2, so
those radicands fall back to an exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from loguru import logger

from .cfrac import convergents, expand_sqrt, is_square
from .errors import QRankError, UnsupportedRhsError, WrongResidueError
from .primes import require_odd_prime, require_prime

SUPPORTED_RHS = (1, -1, 2, -2)
TRICHOTOMY_RHS = (-1, 2, -2)


@dataclass(frozen=True, slots=True)
class PellSolution:
    """A minimal positive solution of x**2 - d y**2 = rhs."""

    x: int
    y: int
    rhs: int
    d: int


@dataclass(frozen=True, slots=True)
class PrimeClass:
    """Which of x**2 - p y**2 = -1, 2, -2 is solvable for an odd prime p."""

    p: int
    residue8: int
    solvable_rhs: int
    period_len: int


@dataclass(frozen=True, slots=True)
class PeriodParity:
    """Period length of sqrt(p) and its class mod 4."""

    p: int
    period_len: int
    period_mod_4: int


@dataclass(frozen=True, slots=True)
class MiddleIdentity:
    """The norm identity at the midpoint k of an even period."""

    p: int
    k: int
    a: int
    b: int
    q_k: int

    @property
    def holds(self) -> bool:
        """A_{k-1}**2 - p B_{k-1}**2 = (-1)**k * 2 and Q_k = 2."""
        norm = self.a**2 - self.p * self.b**2
        return norm == (-1) ** self.k * 2 and self.q_k == 2  # noqa: PLR2004


def _fundamental_unit(d: int) -> PellSolution:
    cf = expand_sqrt(d)
    table = convergents(cf, 2 * cf.period_len)
    for x, y in zip(table.A, table.B, strict=True):
        if x * x - d * y * y == 1:
            return PellSolution(x, y, 1, d)
    msg = f"no solution of x^2 - {d}y^2 = 1 within two periods"
    raise QRankError(msg)


def _exhaustive(d: int, rhs: int, y_max: int) -> PellSolution | None:
    for y in range(1, y_max + 1):
        x_squared = rhs + d * y * y
        if x_squared > 0 and is_square(x_squared):
            return PellSolution(isqrt(x_squared), y, rhs, d)
    return None


def pell_minimal(d: int, rhs: int) -> PellSolution | None:
    """Return the solution of x**2 - d y**2 = rhs with smallest y, if any.

    Raises:
        UnsupportedRhsError: If ``rhs`` is not one of 1, -1, 2, -2.

    """
    if rhs not in SUPPORTED_RHS:
        msg = f"rhs {rhs} is not one of {SUPPORTED_RHS}"
        raise UnsupportedRhsError(msg)
    cf = expand_sqrt(d)
    if abs(rhs) ** 2 >= d:
        bound = 2 * _fundamental_unit(d).y + 2
        logger.debug("exhaustive Pell search d={} rhs={} y<={}", d, rhs, bound)
        return _exhaustive(d, rhs, bound)

    table = convergents(cf, 2 * cf.period_len)
    for x, y in zip(table.A, table.B, strict=True):
        if x * x - d * y * y == rhs:
            return PellSolution(x, y, rhs, d)
    return None


def trichotomy(p: int) -> PrimeClass:
    """Decide which of x**2 - p y**2 = -1, 2, -2 is solvable.

    Raises:
        NotPrimeError: If ``p`` is composite.
        EvenPrimeError: If ``p`` is 2.
        QRankError: If the count of solvable equations is not exactly one,
            or disagrees with the period parity.

    """
    require_odd_prime(p)
    solvable = [rhs for rhs in TRICHOTOMY_RHS if pell_minimal(p, rhs) is not None]
    if len(solvable) != 1:
        msg = f"p={p}: expected exactly one solvable equation, found {solvable}"
        raise QRankError(msg)
    period_len = expand_sqrt(p).period_len
    if (period_len % 2 == 1) != (solvable[0] == -1):
        msg = f"p={p}: period {period_len} disagrees with solvable rhs {solvable[0]}"
        raise QRankError(msg)
    return PrimeClass(p, p % 8, solvable[0], period_len)


def period_parity_check(p: int) -> PeriodParity:
    """Return the period length of sqrt(p) for a prime p = 3 mod 4."""
    require_prime(p)
    if p % 4 != 3:  # noqa: PLR2004
        msg = f"{p} is not 3 mod 4"
        raise WrongResidueError(msg)
    period_len = expand_sqrt(p).period_len
    return PeriodParity(p, period_len, period_len % 4)


def middle_identity(p: int) -> MiddleIdentity:
    """Evaluate A_{k-1}, B_{k-1} and Q_k at the middle of the period of sqrt(p)."""
    cf = expand_sqrt(p)
    if cf.period_len % 2:
        msg = f"sqrt({p}) has odd period {cf.period_len}"
        raise QRankError(msg)
    k = cf.period_len // 2
    table = convergents(cf, k)
    return MiddleIdentity(p, k, table.A[k - 1], table.B[k - 1], table.Q[k])
