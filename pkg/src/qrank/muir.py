"""Muir symbols (continuants) and the period equation

    x_P = m A_{P-2,1} - (-1)**P A_{P-3,1} B_{P-3,1}.

For a period tuple xs = (x_0, ..., x_P) the symbols are

    A_{i,j} = K(x_j, ..., x_{j+i}),  B_{i,j} = K(x_{j+1}, ..., x_{j+i})

with K() = 1, K(v) = v and K(v_1..v_n) = v_n K(v_1..v_{n-1}) + K(v_1..v_{n-2}).
The base cases A_{-1,j} = 1, B_{-1,j} = 0 fall out of that recurrence.

Symbolic symbols live in a sympy sparse polynomial ring over the variables
x0, ..., xP, m with graded lexicographic order, which fixes the text form
(``x1*x2 + 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING, Any

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from .errors import (
    NotASolutionError,
    OddXpError,
    PeriodTooShortError,
    SymbolicLimitError,
    ZeroDenominatorError,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from .cfrac import PeriodicCF

MAX_SYMBOLIC_PERIOD = 16


@dataclass(frozen=True, slots=True)
class SolutionTuple:
    """A solution (x_0, ..., x_P; m) of the period equation."""

    xs: tuple[int, ...]
    m: int

    @property
    def period_len(self) -> int:
        """P, the number of period variables."""
        return len(self.xs) - 1

    def is_palindromic(self) -> bool:
        """x_i = x_{P-i} for 1 <= i <= P-1 and x_P in {2x_0, 2x_0 - 1}."""
        interior = self.xs[1:-1]
        return interior == interior[::-1] and self.xs[-1] in {
            2 * self.xs[0],
            2 * self.xs[0] - 1,
        }


def continuant(values: Iterable[Any]) -> Any:
    """Return K(v_1, ..., v_n) for integers or polynomials (K() = 1)."""
    previous, current = 0, 1
    for value in values:
        previous, current = current, value * current + previous
    return current


def muir_a(xs: Sequence[Any], i: int, j: int) -> Any:
    """A_{i,j} = K(x_j, ..., x_{j+i}); A_{-1,j} = 1."""
    return continuant(xs[j : j + i + 1])


def muir_b(xs: Sequence[Any], i: int, j: int) -> Any:
    """B_{i,j} = K(x_{j+1}, ..., x_{j+i}); B_{-1,j} = 0."""
    if i < 0:
        return 0
    return continuant(xs[j + 1 : j + i + 1])


@cache
def muir_ring(period_len: int) -> tuple[PolyRing, tuple[PolyElement, ...]]:
    """Return the ring Z[x0, ..., xP, m] (grlex) and its generators."""
    if period_len > MAX_SYMBOLIC_PERIOD:
        msg = f"symbolic Muir symbols are limited to P <= {MAX_SYMBOLIC_PERIOD}"
        raise SymbolicLimitError(msg)
    names = [f"x{i}" for i in range(period_len + 1)] + ["m"]
    poly_ring, *gens = ring(names, ZZ, grlex)
    return poly_ring, tuple(gens)


def symbolic_symbols(period_len: int) -> dict[str, PolyElement]:
    """Return A_{P-3,1}, B_{P-3,1} and A_{P-2,1} as polynomials."""
    _check_period(period_len)
    poly_ring, gens = muir_ring(period_len)
    xs = gens[:-1]
    return {
        f"A[{period_len - 3},1]": poly_ring(muir_a(xs, period_len - 3, 1)),
        f"B[{period_len - 3},1]": poly_ring(muir_b(xs, period_len - 3, 1)),
        f"A[{period_len - 2},1]": poly_ring(muir_a(xs, period_len - 2, 1)),
    }


def eq5_polynomial(period_len: int, *, palindromic: bool = True) -> PolyElement:
    """Return the period equation residual as a polynomial.

    With ``palindromic`` the mirrored variables are substituted
    (x_{P-i} -> x_i, x_P -> 2 x0), so at P = 4 this is
    2 x0 - m x1^2 x2 - 2 m x1 + x1 x2^2 + x2.
    """
    _check_period(period_len)
    poly_ring, gens = muir_ring(period_len)
    xs = list(gens[:-1])
    if palindromic:
        for i in range(1, period_len):
            xs[i] = xs[min(i, period_len - i)]
        xs[period_len] = 2 * xs[0]
    return poly_ring(_residual(xs, gens[-1]))


def _check_period(period_len: int) -> None:
    if period_len < 2:  # noqa: PLR2004
        msg = f"the period equation needs a period of length >= 2, got {period_len}"
        raise PeriodTooShortError(msg)


def _residual(xs: Sequence[Any], m: Any) -> Any:
    period_len = len(xs) - 1
    sign = -1 if period_len % 2 else 1
    product = muir_a(xs, period_len - 3, 1) * muir_b(xs, period_len - 3, 1)
    return xs[period_len] - m * muir_a(xs, period_len - 2, 1) + sign * product


def eq5_residual(xs: Sequence[int], m: int) -> int:
    """Return x_P - m A_{P-2,1} + (-1)**P A_{P-3,1} B_{P-3,1}.

    Zero exactly when (xs, m) solves the period equation.
    """
    _check_period(len(xs) - 1)
    return _residual(xs, m)


def solve_m(xs: Sequence[int]) -> int | None:
    """Return the positive integer m solving the period equation for ``xs``, if any."""
    period_len = len(xs) - 1
    _check_period(period_len)
    sign = -1 if period_len % 2 else 1
    denominator = muir_a(xs, period_len - 2, 1)
    if denominator == 0:
        msg = f"A_{{{period_len - 2},1}} vanishes at {tuple(xs)}"
        raise ZeroDenominatorError(msg)
    numerator = xs[period_len] + sign * muir_a(xs, period_len - 3, 1) * muir_b(
        xs, period_len - 3, 1
    )
    m, remainder = divmod(numerator, denominator)
    if remainder or m <= 0:
        return None
    return m


def d_from_solution(xs: Sequence[int], m: int) -> int:
    """Return D = x_P**2/4 + m A_{P-3,1} - (-1)**P B_{P-3,1}**2.

    Raises:
        NotASolutionError: If (xs, m) does not satisfy the period equation.
        OddXpError: If x_P is odd, the (sqrt(D)+1)/2 branch.

    """
    if eq5_residual(xs, m) != 0:
        msg = f"{tuple(xs)} with m={m} does not satisfy the period equation"
        raise NotASolutionError(msg)
    period_len = len(xs) - 1
    x_p = xs[period_len]
    if x_p % 2:
        msg = f"x_P = {x_p} is odd; the closed D formula needs x_P = 2x_0"
        raise OddXpError(msg)
    sign = -1 if period_len % 2 else 1
    b = muir_b(xs, period_len - 3, 1)
    return (x_p // 2) ** 2 + m * muir_a(xs, period_len - 3, 1) - sign * b * b


def period_tuple(cf: PeriodicCF) -> tuple[int, ...]:
    """Return (x_0, ..., x_P) read off an expansion [x_0; x_1, ..., x_P]."""
    return (cf.head, *cf.period)


def evaluate(poly: PolyElement, xs: Sequence[int], m: int) -> int:
    """Evaluate a Muir-ring polynomial at an integer point."""
    return int(poly(*xs, m))
