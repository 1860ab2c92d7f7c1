"""Mechanical audit of classical claims about Fermat and Mersenne numbers,
perfect numbers and Fermat's little theorem, in 64-bit modular arithmetic."""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402
from .modarith import (  # noqa: E402
    Residue,
    gcd,
    legendre_symbol,
    mul_mod,
    multiplicative_order,
    pow_mod,
    pow_tower2_mod,
)
from .primes import Factorization, factorize, is_prime, sieve  # noqa: E402

__all__ = [
    "BACKEND",
    "Factorization",
    "Residue",
    "factorize",
    "gcd",
    "is_prime",
    "legendre_symbol",
    "mul_mod",
    "multiplicative_order",
    "pow_mod",
    "pow_tower2_mod",
    "sieve",
]
