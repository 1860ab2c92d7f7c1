"""Prime tables, deterministic 64-bit primality and complete factorization."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .modarith import check_u64

SIEVE_CAP = 10**8
TRIAL_LIMIT = 10**5
RHO_SEED = 2


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of ``n`` as ascending ``(prime, multiplicity)`` pairs."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors of {self.n} multiply to {prod}")

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def sigma(self) -> int:
        """Sum of all divisors, computed multiplicatively."""
        total = 1
        for p, e in self.factors:
            total *= (p ** (e + 1) - 1) // (p - 1)
        return total

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@functools.lru_cache(maxsize=8)
def _sieve(limit: int) -> np.ndarray:
    primes = np.flatnonzero(kernels.sieve_mask(limit)).astype(np.int64)
    primes.flags.writeable = False
    return primes


def sieve(limit: int) -> np.ndarray:
    """Ascending array of the primes ``<= limit``.

    The returned array is shared between callers and therefore read-only.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit > SIEVE_CAP:
        raise ValueError(f"sieve limit {limit} exceeds the memory cap {SIEVE_CAP}")
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return _sieve(int(limit))


@functools.lru_cache(maxsize=1)
def _trial_primes() -> np.ndarray:
    # private writable copy; the compiled kernel is typed for mutable arrays
    return np.array(sieve(TRIAL_LIMIT))


def is_prime(n: int) -> bool:
    """Deterministic primality for every 64-bit ``n``.

    Miller-Rabin with the first twelve primes as bases, which is exact below
    3.3e24 and therefore for the whole 64-bit range.
    """
    return kernels.is_prime(check_u64("n", n))


def _split(n: int) -> int:
    """A nontrivial divisor of the composite ``n``."""
    c = 1
    while True:
        d = kernels.rho(n, c, RHO_SEED)
        if 1 < d < n:
            return d
        c += 1


def _factor_large(n: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if kernels.is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _split(m)
        stack.extend((d, m // d))


def factorize(n: int) -> Factorization:
    """Complete factorization of ``1 <= n < 2**64``.

    Trial division by primes up to ``TRIAL_LIMIT``, then Pollard rho with a
    fixed seed on whatever cofactor is left, so results are reproducible.
    """
    n = check_u64("n", n)
    if n == 0:
        raise ValueError("cannot factorize 0")
    ps, es, rest = kernels.trial_divide(n, _trial_primes())
    found = dict(zip(ps, es))
    if rest > 1:
        _factor_large(rest, found)
    return Factorization(n, tuple(sorted(found.items())))
