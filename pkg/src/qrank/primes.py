"""Primality gates shared by the pell, complexity and rank modules."""

from sympy import factorint, isprime

from .errors import (
    EvenPrimeError,
    InputTooLargeError,
    NotPrimeError,
    NotSquareFreeError,
    WrongResidueError,
)

# sympy's isprime is deterministic below this bound
PRIME_LIMIT = 2**64


def require_prime(p: int) -> int:
    """Return ``p`` if it is prime, otherwise raise.

    Raises:
        InputTooLargeError: If ``p`` is at least 2**64.
        NotPrimeError: If ``p`` is not prime.

    """
    if p >= PRIME_LIMIT:
        msg = f"{p} exceeds the deterministic primality bound 2**64"
        raise InputTooLargeError(msg)
    if not isprime(p):
        msg = f"{p} is not prime"
        raise NotPrimeError(msg)
    return p


def require_odd_prime(p: int) -> int:
    """Return ``p`` if it is an odd prime."""
    require_prime(p)
    if p == 2:  # noqa: PLR2004
        msg = "2 is an even prime; an odd prime is required"
        raise EvenPrimeError(msg)
    return p


def require_prime_3_mod_4(p: int) -> int:
    """Return ``p`` if it is a prime congruent to 3 mod 4."""
    require_prime(p)
    if p % 4 != 3:  # noqa: PLR2004
        msg = f"{p} = {p % 4} mod 4; a prime p = 3 mod 4 is required"
        raise WrongResidueError(msg)
    return p


def is_square_free(n: int) -> bool:
    """Return True if no square of a prime divides ``n``."""
    return n >= 1 and all(e == 1 for e in factorint(n).values())


def require_square_free(n: int) -> int:
    """Return ``n`` if it is a square-free integer at least 2."""
    if n < 2 or not is_square_free(n):  # noqa: PLR2004
        msg = f"{n} is not a square-free integer >= 2"
        raise NotSquareFreeError(msg)
    return n


def square_free_kernel(n: int) -> int:
    """Return the square-free part of a positive integer."""
    kernel = 1
    for prime, exponent in factorint(n).items():
        if exponent % 2:
            kernel *= prime
    return kernel
