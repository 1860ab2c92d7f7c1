"""Overflow-safe modular arithmetic on 64-bit naturals.

Every public function validates its arguments and hands the work to
:mod:`numclaims.kernels`. Values are plain Python ints on both sides of the
boundary, but the kernels never form an intermediate of 2**64 or more.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels

U64_MAX = (1 << 64) - 1


def check_u64(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        try:
            value = int(value)
        except (TypeError, ValueError):
            raise TypeError(f"{name} must be an integer, got {type(value).__name__}") from None
    if value < 0 or value > U64_MAX:
        raise ValueError(f"{name}={value} is outside the 64-bit natural range")
    return value


def check_modulus(m: int) -> int:
    m = check_u64("modulus", m)
    if m == 0:
        raise ValueError("modulus must be >= 1")
    return m


@dataclass(frozen=True)
class Residue:
    """A value reduced modulo ``modulus``. Modulus 1 is legal; its only residue is 0."""

    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        check_u64("value", self.value)
        if self.value >= self.modulus:
            raise ValueError(f"residue {self.value} is not reduced modulo {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(check_u64("value", value) % check_modulus(modulus), modulus)

    def _same(self, other: "Residue") -> None:
        if other.modulus != self.modulus:
            raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "Residue") -> "Residue":
        self._same(other)
        m, x, y = self.modulus, self.value, other.value
        return Residue(x - (m - y) if x >= m - y else x + y, m)

    def __neg__(self) -> "Residue":
        return Residue((self.modulus - self.value) % self.modulus, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        return self + (-other)

    def __mul__(self, other: "Residue") -> "Residue":
        self._same(other)
        return Residue(mul_mod(self.value, other.value, self.modulus), self.modulus)

    def __pow__(self, exp: int) -> "Residue":
        return Residue(pow_mod(self.value, exp, self.modulus), self.modulus)


def mul_mod(a: int, b: int, m: int) -> int:
    """Return ``(a*b) mod m`` exactly for any 64-bit modulus.

    Requires ``a < m`` and ``b < m``.
    """
    m = check_modulus(m)
    a, b = check_u64("a", a), check_u64("b", b)
    if a >= m or b >= m:
        raise ValueError(f"operands must be reduced modulo {m}")
    return kernels.mulmod(a, b, m)


def pow_mod(base: int, exp: int, m: int) -> int:
    """``base**exp mod m`` by square-and-multiply; ``exp`` must fit in 64 bits."""
    m = check_modulus(m)
    base = check_u64("base", base)
    exp = check_u64("exp", exp)
    return kernels.powmod(base, exp, m)


def pow_tower2_mod(base: int, k: int, m: int) -> int:
    """``base**(2**k) mod m`` via ``k`` successive squarings.

    This is the route for exponents such as ``2**128`` that do not fit in a
    machine word.
    """
    m = check_modulus(m)
    base = check_u64("base", base)
    if k < 0:
        raise ValueError("k must be >= 0")
    return kernels.powtower2(base, k, m)


def gcd(a: int, b: int) -> int:
    return math.gcd(check_u64("a", a), check_u64("b", b))


def multiplicative_order(a: int, m: int) -> int:
    """Least ``e >= 1`` with ``a**e == 1 (mod m)``.

    Starts from Euler's totient of ``m`` and strips prime factors while the
    power still reduces to 1.
    """
    from .primes import factorize

    m = check_modulus(m)
    a = check_u64("a", a)
    if m < 2:
        raise ValueError("multiplicative order needs m >= 2")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    phi = 1
    for p, e in factorize(m).factors:
        phi *= (p - 1) * p ** (e - 1)
    order = phi
    for p, _ in factorize(phi).factors:
        while order % p == 0 and kernels.powmod(a % m, order // p, m) == 1:
            order //= p
    return order


def legendre_symbol(a: int, p: int) -> int:
    """Quadratic character of ``a`` modulo the odd prime ``p`` by Euler's criterion."""
    p = check_u64("p", p)
    if p == 2 or not kernels.is_prime(p):
        raise ValueError(f"legendre_symbol needs an odd prime modulus, got {p}")
    a = check_u64("a", a) % p
    if a == 0:
        return 0
    r = kernels.powmod(a, (p - 1) // 2, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise ArithmeticError(f"Euler's criterion gave {r} mod {p}; modulus is not prime")


def inverse_mod(a: int, m: int) -> int:
    """Modular inverse via Python's built-in extended gcd."""
    return pow(check_u64("a", a), -1, check_modulus(m))
