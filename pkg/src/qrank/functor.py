"""The Teichmuller functor on endomorphism matrices of CM curves.

A multiplier alpha = m + n f omega of the order of conductor f acts on the
lattice basis by the matrix (Tr alpha, -1, N alpha, 0). The functor sends
(a, b, c, d) to (a, b, -c, -d); reading the real multiplication parameters
back off the image of the primitive multiplier recovers (D, f).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from math import isqrt

from .cfrac import QuadraticSurd
from .errors import NonIntegralEntryError, QRankError
from .primes import require_square_free, square_free_kernel


class ResidueCase(StrEnum):
    """Which integral basis the order uses."""

    ONE_MOD_4 = "1 mod 4"
    TWO_THREE_MOD_4 = "2,3 mod 4"

    @classmethod
    def of(cls, d: int) -> ResidueCase:
        """Return the case of a square-free ``d``."""
        return cls.ONE_MOD_4 if d % 4 == 1 else cls.TWO_THREE_MOD_4


@dataclass(frozen=True, slots=True)
class EndoMatrix:
    """A 2x2 integer matrix (a, b; c, d) acting on a lattice basis."""

    a: int
    b: int
    c: int
    d: int

    def as_rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Return ((a, b), (c, d))."""
        return (self.a, self.b), (self.c, self.d)


@dataclass(frozen=True, slots=True)
class OrderMultiplier:
    """alpha = m + n f omega in the order of conductor f of Q(sqrt(-D))."""

    m: int
    n: int
    d: int
    f: int

    @property
    def case(self) -> ResidueCase:
        """Residue branch of D."""
        return ResidueCase.of(self.d)

    @property
    def trace(self) -> int:
        """alpha + conj(alpha)."""
        if self.case is ResidueCase.ONE_MOD_4:
            return 2 * self.m + self.f * self.n
        return 2 * self.m

    @property
    def norm(self) -> int:
        """alpha * conj(alpha), computed on 2 alpha to stay integral.

        Raises:
            NonIntegralEntryError: If the 1 mod 4 norm is not an integer.

        """
        fdn2 = self.f * self.f * self.d * self.n * self.n
        if self.case is ResidueCase.TWO_THREE_MOD_4:
            return self.m * self.m + fdn2
        norm, remainder = divmod(self.trace**2 + fdn2, 4)
        if remainder:
            msg = f"norm of {self} is not an integer"
            raise NonIntegralEntryError(msg)
        return norm

    @property
    def discriminant(self) -> int:
        """trace**2 - 4 norm of the characteristic polynomial."""
        return self.trace**2 - 4 * self.norm


@dataclass(frozen=True, slots=True)
class FunctorImage:
    """The primitive multiplier, its matrix and its image under the functor."""

    multiplier: OrderMultiplier
    cm_matrix: EndoMatrix
    rm_matrix: EndoMatrix
    params: tuple[int, int]


def teichmuller_map(matrix: EndoMatrix) -> EndoMatrix:
    """Return (a, b, -c, -d)."""
    return EndoMatrix(matrix.a, matrix.b, -matrix.c, -matrix.d)


def multiplier_matrix(mult: OrderMultiplier) -> EndoMatrix:
    """Return (trace, -1, norm, 0) for a nonzero multiplier."""
    if mult.m == 0 and mult.n == 0:
        msg = "the zero multiplier has no matrix"
        raise QRankError(msg)
    return EndoMatrix(mult.trace, -1, mult.norm, 0)


def _check_params(d: int, f: int) -> None:
    require_square_free(d)
    if f < 1:
        msg = f"conductor must be positive, got {f}"
        raise QRankError(msg)


def primitive_multiplier(d: int, f: int) -> OrderMultiplier:
    """Closed-form purely imaginary multiplier of least norm, imaginary part > 0."""
    _check_params(d, f)
    if ResidueCase.of(d) is ResidueCase.TWO_THREE_MOD_4:
        return OrderMultiplier(0, 1, d, f)
    if f % 2 == 0:
        return OrderMultiplier(-f // 2, 1, d, f)
    return OrderMultiplier(-f, 2, d, f)


def minimize_multiplier(d: int, f: int, bound: int | None = None) -> OrderMultiplier:
    """Exhaustive version of :func:`primitive_multiplier` over |m|, |n| <= bound.

    Only zero-trace multipliers with n != 0 are candidates; ties between
    +n and -n go to n > 0. The default bound is 4 f D.
    """
    _check_params(d, f)
    bound = 4 * f * d if bound is None else bound
    best: OrderMultiplier | None = None
    for n in range(1, bound + 1):
        for signed in (n, -n):
            if ResidueCase.of(d) is ResidueCase.ONE_MOD_4:
                if (f * signed) % 2:
                    continue
                m = -f * signed // 2
            else:
                m = 0
            if abs(m) > bound:
                continue
            candidate = OrderMultiplier(m, signed, d, f)
            if best is None or candidate.norm < best.norm:
                best = candidate
    if best is None:
        msg = f"no zero-trace multiplier for D={d}, f={f} within |m|, |n| <= {bound}"
        raise QRankError(msg)
    return best


def functor_image(d: int, f: int) -> FunctorImage:
    """Push the primitive multiplier through the functor and read off (D, f)."""
    mult = primitive_multiplier(d, f)
    cm_matrix = multiplier_matrix(mult)
    rm_matrix = teichmuller_map(cm_matrix)
    norm = -rm_matrix.c
    radicand = square_free_kernel(norm)
    s = isqrt(norm // radicand)
    if ResidueCase.of(radicand) is ResidueCase.ONE_MOD_4:
        conductor = 2 * s // mult.n
    else:
        conductor = s
    return FunctorImage(mult, cm_matrix, rm_matrix, (radicand, conductor))


def functor_params(d: int, f: int) -> tuple[int, int]:
    """Return the real multiplication parameters (D, f) of the image."""
    return functor_image(d, f).params


def real_order_generator(d: int) -> QuadraticSurd:
    """omega = (1 + sqrt(D))/2 for D = 1 mod 4, sqrt(D) otherwise."""
    _check_params(d, 1)
    if ResidueCase.of(d) is ResidueCase.ONE_MOD_4:
        return QuadraticSurd(1, 2, d)
    return QuadraticSurd(0, 1, d)
