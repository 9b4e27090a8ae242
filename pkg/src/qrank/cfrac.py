"""Exact continued fractions of quadratic surds.

Expansion runs the integer (P, Q) recurrence

    a_i = floor((P_i + sqrt(d)) / Q_i)
    P_{i+1} = a_i Q_i - P_i
    Q_{i+1} = (d - P_{i+1}**2) / Q_i

and detects the period at the first repeated (P, Q) state, so no floating
point is involved anywhere. Reconstruction solves the fixed-point quadratic of
the periodic tail and pushes the root back through the pre-period.
"""

from __future__ import annotations

import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field, replace
from math import gcd, isqrt, prod

from loguru import logger
from sympy import divisors, factorint

from .errors import (
    CFSyntaxError,
    DegeneratePeriodError,
    NonPositiveInputError,
    PerfectSquareInputError,
    QRankError,
    RationalInputError,
)

_CF_PATTERN = re.compile(r"^\[\s*(-?\d+)\s*;\s*(.+?)\s*\]$")


def is_square(n: int) -> bool:
    """Return True if ``n`` is a nonnegative perfect square."""
    return n >= 0 and isqrt(n) ** 2 == n


def _square_divisor(g: int, d: int) -> int:
    """Return some h > 1 with h | g and h**2 | d, or 1 if there is none.

    Only gcds are taken until every prime left in gcd(g, d) divides d at most
    as often as it divides g; that remainder is the only thing factored.
    """
    if d % (g * g) == 0:
        return g
    h = 1
    while (x := gcd(g, d)) > 1:
        y = gcd(x, d // x)
        if y == 1:
            return h * prod(ell ** (e // 2) for ell, e in factorint(x).items())
        h, g, d = h * y, g // y, d // (y * y)
    return h


def _floor_surd(p: int, q: int, root: int) -> int:
    """Floor of (p + sqrt(d)) / q for nonsquare d with isqrt(d) == root."""
    if q > 0:
        return (p + root) // q
    return -((p + root) // -q) - 1


@dataclass(frozen=True, slots=True)
class QuadraticSurd:
    """The exact value (p_num + sqrt(d_rad)) / q_den."""

    p_num: int
    q_den: int
    d_rad: int

    def __post_init__(self) -> None:
        """Reject a zero denominator or a negative radicand."""
        if self.q_den == 0:
            msg = "quadratic surd denominator must be nonzero"
            raise QRankError(msg)
        if self.d_rad < 0:
            msg = f"radicand {self.d_rad} is negative"
            raise QRankError(msg)

    @property
    def is_irrational(self) -> bool:
        """True when the radicand is not a perfect square."""
        return not is_square(self.d_rad)

    def is_positive(self) -> bool:
        """Decide the sign of the value exactly."""
        p, q, d = self.p_num, self.q_den, self.d_rad
        if q > 0:
            return p >= 0 and (p > 0 or d > 0) or p * p < d
        return p < 0 and p * p > d

    def canonical(self) -> QuadraticSurd:
        """Scale so that q_den divides d_rad - p_num**2."""
        p, q, d = self.p_num, self.q_den, self.d_rad
        if (d - p * p) % q == 0:
            return self
        scale = abs(q)
        return QuadraticSurd(p * scale, q * scale, d * q * q)

    def reduced(self) -> QuadraticSurd:
        """Divide out common factors g of p and q with g**2 | d."""
        p, q, d = self.p_num, self.q_den, self.d_rad
        while (g := _square_divisor(gcd(p, q), d)) > 1:
            p, q, d = p // g, q // g, d // (g * g)
        return QuadraticSurd(int(p), int(q), int(d))

    def __float__(self) -> float:
        """Approximate value, for display only."""
        return (self.p_num + self.d_rad**0.5) / self.q_den

    def __str__(self) -> str:
        """Render as ``(p + sqrt(d))/q``, or ``sqrt(d)`` when p = 0, q = 1."""
        if self.p_num == 0 and self.q_den == 1:
            return f"sqrt({self.d_rad})"
        return f"({self.p_num} + sqrt({self.d_rad}))/{self.q_den}"


@dataclass(frozen=True, slots=True)
class PeriodicCF:
    """An eventually periodic continued fraction [head; preperiod, period...].

    ``radicand`` is D when the expansion came from sqrt(D); it does not take
    part in equality.
    """

    head: int
    period: tuple[int, ...]
    preperiod: tuple[int, ...] = ()
    radicand: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Normalize sequences to tuples and check the partial quotients."""
        object.__setattr__(self, "period", tuple(self.period))
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        if not self.period:
            msg = "a periodic continued fraction needs a nonempty period"
            raise DegeneratePeriodError(msg)
        if any(a < 1 for a in (*self.preperiod, *self.period)):
            msg = "partial quotients after the head must be positive"
            raise DegeneratePeriodError(msg)

    @property
    def period_len(self) -> int:
        """P, the period length excluding the head."""
        return len(self.period)

    def term(self, i: int) -> int:
        """Return the i-th partial quotient a_i of the infinite word."""
        if i == 0:
            return self.head
        i -= 1
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def terms(self, n: int) -> list[int]:
        """Return a_0, ..., a_{n-1}."""
        return [self.term(i) for i in range(n)]

    def is_minimal(self) -> bool:
        """True when the period is not a repetition of a shorter block."""
        size = len(self.period)
        return all(
            self.period != self.period[:step] * (size // step)
            for step in divisors(size)
            if step < size
        )

    def is_sqrt_shape(self) -> bool:
        """True for the shape of sqrt(D): palindromic interior and trailing 2a0."""
        interior = self.period[:-1]
        return (
            not self.preperiod
            and self.period[-1] == 2 * self.head
            and interior == interior[::-1]
        )

    def __str__(self) -> str:
        """Bit-exact text form, e.g. ``[4; 2,1,3,1,2,8]``."""
        period = ",".join(map(str, self.period))
        if self.preperiod:
            return f"[{self.head}; {','.join(map(str, self.preperiod))}; {period}]"
        return f"[{self.head}; {period}]"


@dataclass(frozen=True, slots=True)
class ConvergentTable:
    """Convergent numerators A, denominators B and full quotients Q.

    ``Q`` is only populated for square-root expansions, where it holds
    Q_0 = 1, ..., Q_n from the (P, Q) recurrence.
    """

    A: tuple[int, ...]
    B: tuple[int, ...]
    Q: tuple[int, ...] = ()
    d: int | None = None


def parse_cf(text: str) -> PeriodicCF:
    """Parse ``[a0; p1,...,pk]`` or ``[a0; b1,...,bj; p1,...,pk]``."""
    match = _CF_PATTERN.match(text.strip())
    if match is None:
        msg = f"cannot parse continued fraction {text!r}"
        raise CFSyntaxError(msg)
    parts = match.group(2).split(";")
    if len(parts) > 2:  # noqa: PLR2004
        msg = f"too many ';' separators in {text!r}"
        raise CFSyntaxError(msg)
    try:
        blocks = [
            tuple(int(item.strip()) for item in part.split(",")) for part in parts
        ]
    except ValueError as error:
        msg = f"non-integer partial quotient in {text!r}"
        raise CFSyntaxError(msg) from error
    if len(blocks) == 1:
        return PeriodicCF(int(match.group(1)), blocks[0])
    return PeriodicCF(int(match.group(1)), blocks[1], blocks[0])


def _check_radicand(d: int) -> None:
    if d < 2:  # noqa: PLR2004
        msg = f"radicand must be at least 2, got {d}"
        raise NonPositiveInputError(msg)
    if is_square(d):
        msg = f"{d} is a perfect square"
        raise PerfectSquareInputError(msg)


def sqrt_states(d: int) -> Iterator[tuple[int, int, int]]:
    """Yield the recurrence states (P_i, Q_i, a_i) of sqrt(d), forever."""
    _check_radicand(d)
    root = isqrt(d)
    p, q = 0, 1
    while True:
        a = (p + root) // q
        yield p, q, a
        p = a * q - p
        q = (d - p * p) // q


def expand_surd(surd: QuadraticSurd) -> PeriodicCF:
    """Expand a positive irrational surd into head, pre-period and period."""
    if not surd.is_irrational:
        msg = f"{surd} is rational"
        raise RationalInputError(msg)
    if not surd.is_positive():
        msg = f"{surd} is not positive"
        raise NonPositiveInputError(msg)

    s = surd.canonical()
    d, root = s.d_rad, isqrt(s.d_rad)
    p, q = s.p_num, s.q_den
    head = _floor_surd(p, q, root)
    p = head * q - p
    q = (d - p * p) // q

    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (p, q) not in seen:
        seen[p, q] = len(terms)
        a = _floor_surd(p, q, root)
        terms.append(a)
        p = a * q - p
        q = (d - p * p) // q
    start = seen[p, q]
    return PeriodicCF(head, tuple(terms[start:]), tuple(terms[:start]))


def expand_sqrt(d: int) -> PeriodicCF:
    """Return the minimal-period continued fraction of sqrt(d).

    Raises:
        NonPositiveInputError: If ``d`` < 2.
        PerfectSquareInputError: If ``d`` is a perfect square.

    """
    _check_radicand(d)
    return replace(expand_surd(QuadraticSurd(0, 1, d)), radicand=d)


def _matrix_product(terms: Sequence[int]) -> tuple[int, int, int, int]:
    """Product of [[a, 1], [1, 0]] over ``terms``, as (m00, m01, m10, m11)."""
    m00, m01, m10, m11 = 1, 0, 0, 1
    for a in terms:
        m00, m01 = m00 * a + m01, m00
        m10, m11 = m10 * a + m11, m10
    return m00, m01, m10, m11


def reconstruct_surd(cf: PeriodicCF) -> QuadraticSurd:
    """Return the exact surd whose expansion is ``cf``.

    Raises:
        DegeneratePeriodError: If the tail quadratic has no irrational root.

    """
    a, a_next, b, b_next = _matrix_product(cf.period)
    # tail y satisfies y = (a y + a_next) / (b y + b_next)
    disc = (b_next - a) ** 2 + 4 * b * a_next
    if b == 0 or is_square(disc):
        msg = f"period of {cf} has no positive irrational fixed point"
        raise DegeneratePeriodError(msg)
    u, v = a - b_next, 2 * b

    prefix = (cf.head, *cf.preperiod)
    m00, m01, m10, m11 = _matrix_product(prefix)
    alpha = m00 * u + m01 * v
    beta = m10 * u + m11 * v
    numerator = alpha * beta - m00 * m10 * disc
    denominator = beta * beta - m10 * m10 * disc
    sign = -1 if len(prefix) % 2 else 1
    # the radicand is v**2 disc, so common factors of v come out by gcd alone
    g = gcd(numerator, denominator, v)
    v //= g
    surd = QuadraticSurd(
        sign * numerator // g, sign * denominator // g, v * v * disc
    ).reduced()
    logger.debug("reconstructed {} from {}", surd, cf)
    return surd


def _sqrt_radicand(cf: PeriodicCF) -> int | None:
    """Recover D from a sqrt(D)-shaped expansion without reconstructing it.

    The last convergent before the period closes solves
    A**2 - D B**2 = (-1)**P, which pins D down.
    """
    if cf.radicand is not None:
        return cf.radicand
    if not cf.is_sqrt_shape():
        return None
    a, _, b, _ = _matrix_product((cf.head, *cf.period[:-1]))
    num = a * a - (-1) ** cf.period_len
    if num % (b * b):
        return None
    d = num // (b * b)
    if d < 2 or is_square(d) or expand_sqrt(d) != cf:  # noqa: PLR2004
        return None
    return d


def convergents(cf: PeriodicCF, n: int) -> ConvergentTable:
    """Return A_0..A_{n-1}, B_0..B_{n-1} and, for sqrt(D), Q_0..Q_n."""
    if n < 1:
        msg = f"need at least one convergent, got n={n}"
        raise QRankError(msg)
    numerators: list[int] = []
    denominators: list[int] = []
    a_prev, a_cur = 0, 1
    b_prev, b_cur = 1, 0
    for a in cf.terms(n):
        a_prev, a_cur = a_cur, a * a_cur + a_prev
        b_prev, b_cur = b_cur, a * b_cur + b_prev
        numerators.append(a_cur)
        denominators.append(b_cur)

    d = _sqrt_radicand(cf)
    quotients: tuple[int, ...] = ()
    if d is not None:
        states = sqrt_states(d)
        quotients = tuple(next(states)[1] for _ in range(n + 1))
    return ConvergentTable(tuple(numerators), tuple(denominators), quotients, d)
