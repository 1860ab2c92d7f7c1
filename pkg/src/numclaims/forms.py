"""Symbolic numbers ``base**exponent +/- 1`` and Fermat numbers.

Nothing here materializes a value wider than 64 bits. Divisibility is decided
by modular exponentiation, and Fermat numbers ``2**(2**m) + 1`` beyond
``m = 5`` exist only symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .modarith import U64_MAX, check_u64, pow_mod, pow_tower2_mod
from .primes import SIEVE_CAP, factorize, sieve


@dataclass(frozen=True)
class PowerForm:
    """``base**exponent + sign`` with ``sign`` in ``{+1, -1}``."""

    base: int
    exponent: int
    sign: int = 1

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        check_u64("exponent", self.exponent)
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def fits_u64(self) -> bool:
        if self.exponent > 64:
            return False
        return self.base**self.exponent + self.sign <= U64_MAX

    def value(self) -> int:
        """Exact value; only defined when it fits in 64 bits."""
        if not self.fits_u64():
            raise OverflowError(f"{self} does not fit in 64 bits")
        return self.base**self.exponent + self.sign

    def __str__(self) -> str:
        return f"{self.base}^{self.exponent}{'+' if self.sign > 0 else '-'}1"


def _divisors(n: int) -> list[int]:
    return factorize(n).divisors()


def algebraic_divisors(f: PowerForm) -> list[PowerForm]:
    """Forms that divide ``f`` for purely algebraic reasons.

    ``a^n - 1`` is divisible by ``a^d - 1`` for each ``d | n``; ``a^n + 1`` by
    ``a^(n/d) + 1`` for each odd ``d > 1`` dividing ``n``. The form itself and
    the unit ``2^1 - 1`` are left out.
    """
    out = []
    if f.sign < 0:
        for d in _divisors(f.exponent):
            if d == f.exponent or (f.base == 2 and d == 1):
                continue
            out.append(PowerForm(f.base, d, -1))
    else:
        for d in _divisors(f.exponent):
            if d > 1 and d % 2 == 1:
                out.append(PowerForm(f.base, f.exponent // d, 1))
        out.sort(key=lambda g: g.exponent)
    return out


def cofactor_coefficients(k: int) -> list[int]:
    """Coefficients of ``a^((k-1)l) - a^((k-2)l) + ... + 1``, the cofactor of
    ``a^l + 1`` in ``a^(kl) + 1`` for odd ``k``."""
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be odd and >= 1")
    return [1 if i % 2 == 0 else -1 for i in range(k)]


def divides_power_form(d: int, f: PowerForm) -> bool:
    d = check_u64("d", d)
    if d < 2:
        raise ValueError("divisor must be >= 2")
    return pow_mod(f.base, f.exponent, d) == (-f.sign) % d


def divides_generalized_fermat(d: int, base: int, m: int) -> bool:
    """Whether ``d`` divides ``base**(2**m) + 1``, for any ``m``."""
    d = check_u64("d", d)
    if d < 2:
        raise ValueError("divisor must be >= 2")
    return pow_tower2_mod(base, m, d) == d - 1


def fermat_value(m: int) -> int:
    if m < 0:
        raise ValueError("Fermat index must be >= 0")
    if m > 5:
        raise ValueError(f"F_{m} = 2^(2^{m})+1 exceeds 64 bits; work with it modularly")
    return 2 ** (2**m) + 1


class Strategy(str, Enum):
    ALL_PRIMES = "all_primes"
    SPECIAL_FORM = "special_form"


def special_form_candidates(m: int, bound: int) -> np.ndarray:
    """``k * 2**(m+2) + 1 <= bound`` for ``k >= 1``, ascending.

    Every prime factor of a Fermat number ``F_m`` with ``m >= 2`` has this
    shape; this is a later result, and reports flag it as such.
    """
    step = 1 << (m + 2)
    if step >= bound:
        return np.empty(0, dtype=np.uint64)
    return np.arange(step + 1, bound + 1, step, dtype=np.uint64)


def find_fermat_factor(
    m: int,
    bound: int,
    strategy: Strategy | str = Strategy.ALL_PRIMES,
    chunk: int | None = None,
) -> int | None:
    """Smallest prime ``q <= bound`` properly dividing ``2**(2**m) + 1``.

    ``F_m`` itself is not reported as its own factor, so the search comes back
    empty for the five Fermat primes. ``chunk`` splits the scan into
    consecutive candidate ranges; the answer never depends on it.
    """
    strategy = Strategy(strategy)
    if m < 0:
        raise ValueError("Fermat index must be >= 0")
    if bound < 3:
        raise ValueError("bound must be >= 3")
    if bound > SIEVE_CAP:
        raise ValueError(f"bound {bound} exceeds the sieve cap {SIEVE_CAP}")
    limit = bound
    if m <= 5:
        limit = min(bound, fermat_value(m) - 1)
    if strategy is Strategy.ALL_PRIMES:
        cands = sieve(limit)
        cands = cands[cands > 2].astype(np.uint64)
    else:
        cands = special_form_candidates(m, limit)
    chunk = chunk or max(cands.size, 1)
    for start in range(0, cands.size, chunk):
        block = cands[start : start + chunk]
        i = kernels.first_tower_divisor(2, m, block)
        if i >= 0:
            return int(block[i])
    return None
