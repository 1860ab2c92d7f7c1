"""Mersenne numbers ``2**p - 1``: exclusion rule, factor scans, perfect numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import kernels
from .modarith import check_u64
from .primes import factorize, is_prime, sieve

DEFAULT_K_MAX = 10**5
CLAIMED_PERFECT_EXPONENTS = (1, 2, 3, 5, 7, 13, 17, 19, 31, 41, 47)


def _require_prime(p: int) -> int:
    p = check_u64("p", p)
    if not is_prime(p):
        raise ValueError(f"exponent {p} is not prime")
    return p


@dataclass(frozen=True)
class MersenneCandidate:
    p: int

    def __post_init__(self):
        _require_prime(self.p)

    def value(self) -> int:
        if self.p > 63:
            raise OverflowError(f"2^{self.p}-1 does not fit in 64 bits")
        return (1 << self.p) - 1


def exclusion_applies(p: int) -> bool:
    """True when ``p = 3 (mod 4)`` and ``2p + 1`` is a prime properly dividing ``2**p - 1``.

    ``p = 3`` meets both congruence conditions, but there ``2p + 1 = 7`` is the
    Mersenne number itself, so it is not an exclusion.
    """
    p = _require_prime(p)
    if p % 4 != 3 or p <= 3 or not is_prime(2 * p + 1):
        return False
    if kernels.powmod(2, p, 2 * p + 1) != 1:
        raise AssertionError(f"2p+1={2 * p + 1} should divide 2^{p}-1 but does not")
    return True


def excluded_exponents(limit: int) -> list[int]:
    return [int(p) for p in sieve(limit) if exclusion_applies(int(p))]


def two_p_plus_one_side(p: int) -> int | None:
    """Which of ``2**p -/+ 1`` the prime ``2p + 1`` divides: -1, +1, or None.

    For ``p = 1 (mod 4)`` with ``2p + 1`` prime the divisor lands on
    ``2**p + 1`` instead of the Mersenne number.
    """
    p = _require_prime(p)
    q = 2 * p + 1
    if not is_prime(q):
        return None
    r = kernels.powmod(2, p, q)
    if r == 1:
        return -1
    if r == q - 1:
        return 1
    raise AssertionError(f"2^{p} mod {q} = {r}, expected +/-1")


def find_mersenne_factor(p: int, k_max: int, mod8_filter: bool = True) -> int | None:
    """Smallest prime ``q = 2kp + 1`` with ``k <= k_max`` dividing ``2**p - 1``.

    With ``mod8_filter`` only ``q = +/-1 (mod 8)`` are tried, which loses
    nothing since every prime factor of a Mersenne number has that residue.
    """
    p = _require_prime(p)
    if p == 2:
        raise ValueError("find_mersenne_factor needs an odd prime exponent")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if 2 * k_max * p + 1 > (1 << 64) - 1:
        raise ValueError("2*k_max*p+1 overflows 64 bits")
    q = kernels.first_mersenne_divisor(p, k_max, mod8_filter)
    return q or None


class Verdict(str, Enum):
    MERSENNE_PRIME = "MersennePrime"
    COMPOSITE_WITH_FACTOR = "CompositeWithFactor"
    COMPOSITE_BY_PRIMALITY = "CompositeByPrimality"
    NO_SMALL_FACTOR = "NoSmallFactor"


@dataclass(frozen=True)
class ExponentClass:
    p: int
    verdict: Verdict
    factor: int | None = None

    def __str__(self) -> str:
        if self.factor is not None:
            return f"{self.verdict.value}({self.factor})"
        return self.verdict.value


def classify_exponent(p: int, k_max: int = DEFAULT_K_MAX) -> ExponentClass:
    """Definitive for ``p <= 63``; above that only a found factor is conclusive."""
    p = _require_prime(p)
    if p <= 63:
        if is_prime((1 << p) - 1):
            return ExponentClass(p, Verdict.MERSENNE_PRIME)
        q = find_mersenne_factor(p, k_max)
        if q is not None:
            return ExponentClass(p, Verdict.COMPOSITE_WITH_FACTOR, q)
        return ExponentClass(p, Verdict.COMPOSITE_BY_PRIMALITY)
    q = find_mersenne_factor(p, k_max)
    if q is not None:
        return ExponentClass(p, Verdict.COMPOSITE_WITH_FACTOR, q)
    return ExponentClass(p, Verdict.NO_SMALL_FACTOR)


def perfect_number(n: int) -> int:
    """``2**(n-1) * (2**n - 1)``; says nothing about whether it is perfect."""
    if n < 1 or n > 31:
        raise ValueError("n must lie in 1..31 for the value to fit 64 bits")
    return (1 << (n - 1)) * ((1 << n) - 1)


def is_perfect(n: int) -> bool:
    n = check_u64("N", n)
    if n < 1:
        raise ValueError("N must be >= 1")
    return factorize(n).sigma() == 2 * n


@dataclass
class PerfectAudit:
    """Comparison of a claimed list of perfect-number exponents with computation.

    ``claimed_only`` maps each rejected exponent to its refutation: either
    ``{"factor": q}`` with ``q | 2^p - 1`` or ``{"aliquot_sum": s}``.
    """

    limit: int
    claimed_list: tuple[int, ...] = CLAIMED_PERFECT_EXPONENTS
    computed_list: list[int] = field(default_factory=list)
    agreements: list[int] = field(default_factory=list)
    claimed_only: dict[int, dict] = field(default_factory=dict)
    computed_only: list[int] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.claimed_only and not self.computed_only


def audit_perfect_list(limit: int, k_max: int = DEFAULT_K_MAX) -> PerfectAudit:
    if limit > 63:
        raise ValueError("audit limit must be <= 63")
    audit = PerfectAudit(limit)
    for p in sieve(limit).tolist():
        if classify_exponent(p, k_max).verdict is Verdict.MERSENNE_PRIME:
            audit.computed_list.append(p)
    computed = set(audit.computed_list)
    for p in audit.claimed_list:
        if p > limit:
            continue
        if p in computed:
            audit.agreements.append(p)
        elif p == 1:
            # 2^0 * (2^1 - 1) = 1, whose proper divisors sum to 0
            audit.claimed_only[1] = {"aliquot_sum": factorize(1).sigma() - 1}
        elif not is_prime(p):
            audit.claimed_only[p] = {"reason": "composite exponent", "factor": factorize(p).primes()[0]}
        else:
            cls = classify_exponent(p, k_max)
            if cls.factor is not None:
                audit.claimed_only[p] = {"factor": cls.factor}
            else:
                audit.claimed_only[p] = {"reason": "2^p-1 composite by primality test"}
    audit.computed_only = sorted(computed - set(audit.claimed_list))
    return audit
