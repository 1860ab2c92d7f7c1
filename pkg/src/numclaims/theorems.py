"""Bounded property scans for Fermat's little theorem and the residue-class rules.

Each scan returns a :class:`ScanReport`. An empty counterexample list means the
statement held on every instance inside the bounds. Instances are evaluated in
bulk through :func:`numclaims.kernels.powmod_batch`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels
from .primes import factorize, is_prime, sieve

MAX_RECORDED = 50
_ROWS = 256

DEFAULT_BOUNDS = {
    "main": {"q_bound": 500, "ab_bound": 100},
    "1": {"n_bound": 2000, "a_bound": 2000},
    "2": {"n_bound": 50, "a_bound": 200},
    "3": {"prime_bound": 30, "max_size": 3, "a_bound": 500},
    "rules": {"q_bound": 10**6},
}


@dataclass
class ScanReport:
    id: str
    bounds: dict
    checked: int = 0
    failures: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, **witness) -> None:
        self.failures += 1
        if len(self.counterexamples) < MAX_RECORDED:
            self.counterexamples.append(witness)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _u64(x) -> np.ndarray:
    return np.asarray(x, dtype=np.uint64)


def _odd_primes(bound: int) -> np.ndarray:
    ps = sieve(bound)
    return ps[ps > 2]


# -- Fermat's little theorem in two-base form -------------------------------


def check_main_theorem(q_bound: int, ab_bound: int) -> ScanReport:
    """For prime ``q`` and ``q`` dividing neither ``a`` nor ``b``: ``q | a^(q-1) - b^(q-1)``."""
    if q_bound < 2 or ab_bound < 2:
        raise ValueError("bounds must be >= 2")
    rep = ScanReport("main", {"q_bound": q_bound, "ab_bound": ab_bound})
    a = np.arange(1, ab_bound + 1, dtype=np.int64)
    for q in sieve(q_bound).tolist():
        av = a[a % q != 0]
        r = kernels.powmod_batch(_u64(av), q - 1, q)
        rep.checked += av.size * av.size
        # q | r_a - r_b  <=>  r_a == r_b
        ref = r[0]
        off = np.flatnonzero(r != ref)
        for j in off.tolist():
            # each off-reference a pairs badly with at least the reference
            rep.fail(q=q, a=int(av[j]), b=int(av[0]), residue_a=int(r[j]), residue_b=int(ref))
    return rep


def find_composite_witness(c: int) -> tuple[int, int]:
    """``(a, b)`` with ``c`` dividing neither yet ``c`` not dividing ``a^(c-1) - b^(c-1)``.

    Tries ``b = 1`` with ascending ``a``. That phase always succeeds by the
    time ``a`` reaches the smallest prime factor of ``c``, since such an ``a``
    makes ``a^(c-1)`` share a factor with ``c`` and so cannot be 1 mod ``c``.
    """
    if c < 4 or is_prime(c):
        raise ValueError(f"{c} is not a composite number >= 4")
    for a in range(2, c):
        if kernels.powmod(a, c - 1, c) != 1:
            return a, 1
    raise AssertionError(f"no witness below {c}; {c} cannot be composite")  # pragma: no cover


def check_theorem1(n_bound: int, a_bound: int) -> ScanReport:
    """``a^(n-1) mod n`` is 0 or 1 for prime ``n``; composite ``n`` get a witness."""
    if n_bound < 2 or a_bound < 2:
        raise ValueError("bounds must be >= 2")
    rep = ScanReport("1", {"n_bound": n_bound, "a_bound": a_bound})
    prime = np.zeros(n_bound + 1, dtype=bool)
    prime[sieve(n_bound)] = True
    a = np.arange(1, a_bound + 1, dtype=np.uint64)
    witnesses: dict[int, int] = {}
    missing: list[int] = []
    ns = np.arange(2, n_bound + 1, dtype=np.uint64)
    for start in range(0, ns.size, _ROWS):
        block = ns[start : start + _ROWS]
        res = kernels.powmod_batch(a[None, :], (block - 1)[:, None], block[:, None])
        bad = res > 1
        for i, n in enumerate(block.tolist()):
            if prime[n]:
                rep.checked += a_bound
                for j in np.flatnonzero(bad[i]).tolist():
                    rep.fail(n=n, a=j + 1, residue=int(res[i, j]))
            else:
                hits = np.flatnonzero(bad[i])
                if hits.size:
                    witnesses[n] = int(hits[0]) + 1
                else:
                    missing.append(n)
                    rep.fail(n=n, a=None, residue=None, reason="composite without witness")
    rep.details = {
        "composite_witnesses": {str(n): a for n, a in witnesses.items()},
        "composites_without_witness": missing,
    }
    return rep


def check_theorem2(n_bound: int, a_bound: int) -> ScanReport:
    """``a^(n^(m-1) (n-1)) mod n^m`` is 0 or 1 for prime ``n`` and every ``n^m < 2^63``."""
    if n_bound < 2 or a_bound < 2:
        raise ValueError("bounds must be >= 2")
    rep = ScanReport("2", {"n_bound": n_bound, "a_bound": a_bound})
    mods, exps, labels = [], [], []
    for n in sieve(n_bound).tolist():
        m = 1
        while n**m < 1 << 63:
            mods.append(n**m)
            exps.append(n ** (m - 1) * (n - 1))
            labels.append((n, m))
            m += 1
    a = np.arange(1, a_bound + 1, dtype=np.uint64)
    res = kernels.powmod_batch(a[None, :], _u64(exps)[:, None], _u64(mods)[:, None])
    rep.checked = res.size
    for i, j in zip(*np.nonzero(res > 1)):
        n, m = labels[i]
        rep.fail(n=n, m=m, a=int(j) + 1, residue=int(res[i, j]))
    rep.details = {"prime_powers": len(mods)}
    return rep


def theorem3_sets(prime_bound: int = 30, max_size: int = 3) -> list[tuple[int, ...]]:
    ps = [p for p in sieve(prime_bound - 1).tolist()]
    out = []
    for size in range(1, max_size + 1):
        out.extend(itertools.combinations(ps, size))
    return out


def check_theorem3(prime_set, a_bound: int, report: ScanReport | None = None) -> ScanReport:
    """``a^A = 1 (mod N)`` with ``N`` the product of distinct primes and ``A = lcm(p - 1)``.

    Only ``a`` coprime to ``N`` are asserted. For ``a`` sharing a factor with
    ``N`` the residue need not be 0 (``3^4 mod 15 = 6``), so those are skipped.
    """
    prime_set = tuple(int(p) for p in prime_set)
    if len(set(prime_set)) != len(prime_set):
        raise ValueError(f"repeated primes in {prime_set}")
    if any(not is_prime(p) for p in prime_set):
        raise ValueError(f"{prime_set} contains a non-prime")
    n = math.prod(prime_set)
    if n >= 1 << 63:
        raise ValueError("product of the primes must stay below 2^63")
    exp = math.lcm(*(p - 1 for p in prime_set))
    rep = report or ScanReport("3", {"primes": list(prime_set), "a_bound": a_bound})
    a = np.arange(1, a_bound + 1, dtype=np.int64)
    coprime = np.gcd(a, n) == 1
    av = a[coprime]
    res = kernels.powmod_batch(_u64(av), exp, n)
    rep.checked += av.size
    rep.details["skipped_non_coprime"] = rep.details.get("skipped_non_coprime", 0) + int((~coprime).sum())
    for j in np.flatnonzero(res != 1).tolist():
        rep.fail(primes=list(prime_set), exponent=exp, modulus=n, a=int(av[j]), residue=int(res[j]))
    return rep


def check_theorem3_family(prime_bound: int = 30, max_size: int = 3, a_bound: int = 500) -> ScanReport:
    rep = ScanReport("3", {"prime_bound": prime_bound, "max_size": max_size, "a_bound": a_bound})
    sets = theorem3_sets(prime_bound, max_size)
    for s in sets:
        check_theorem3(s, a_bound, rep)
    rep.details["prime_sets"] = len(sets)
    return rep


# -- residue-class rules ----------------------------------------------------


@dataclass(frozen=True)
class ResidueClassRule:
    """Predicts whether the prime ``q = 2n + 1`` divides ``x^n + y^n`` or ``x^n - y^n``
    from ``n mod modulus``.

    Classes in ``excluded_classes`` force ``2n + 1`` to share a fixed small
    prime with the modulus, so ``q`` cannot be prime there unless it is that
    prime.
    """

    name: str
    x: int
    y: int
    modulus: int
    plus_classes: frozenset[int]
    minus_classes: frozenset[int]
    excluded_classes: frozenset[int] = frozenset()

    def __post_init__(self):
        parts = (self.plus_classes, self.minus_classes, self.excluded_classes)
        for p1, p2 in itertools.combinations(parts, 2):
            if p1 & p2:
                raise ValueError(f"{self.name}: residue classes overlap")
        if set().union(*parts) != set(range(self.modulus)):
            raise ValueError(f"{self.name}: classes do not cover all residues mod {self.modulus}")
        for r in self.excluded_classes:
            self.fixed_factor(r)

    def fixed_factor(self, r: int) -> int:
        """Smallest prime dividing ``2n + 1`` for every ``n = r (mod modulus)``."""
        g = math.gcd(2 * r + 1, self.modulus)
        if g == 1:
            raise ValueError(f"{self.name}: class {r} has no fixed factor")
        return factorize(g).primes()[0]

    def predict(self, n: int) -> str:
        r = n % self.modulus
        if r in self.plus_classes:
            return "+"
        if r in self.minus_classes:
            return "-"
        return "excluded"


def builtin_rules() -> list[ResidueClassRule]:
    fs = frozenset
    return [
        ResidueClassRule("T4", 3, 1, 6, fs({2, 3}), fs({0, 5}), fs({1, 4})),
        ResidueClassRule("T5", 3, 2, 12, fs({3, 5, 6, 8}), fs({0, 2, 9, 11}), fs({1, 4, 7, 10})),
        ResidueClassRule("T6", 6, 1, 12, fs({3, 5, 6, 8}), fs({0, 2, 9, 11}), fs({1, 4, 7, 10})),
        ResidueClassRule("P2", 2, 1, 4, fs({1, 2}), fs({0, 3})),
    ]


def rule_by_name(name: str) -> ResidueClassRule:
    for rule in builtin_rules():
        if rule.name == name:
            return rule
    raise KeyError(name)


def legendre_batch(a: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Quadratic character of ``a`` modulo each odd prime in ``q`` (Euler's criterion)."""
    q = _u64(q)
    r = kernels.powmod_batch(_u64(a) % q, (q - 1) // 2, q)
    out = np.zeros(q.shape, dtype=np.int8)
    out[r == 1] = 1
    out[r == q - 1] = -1
    bad = (r != 0) & (r != 1) & (r != q - 1)
    if bad.any():
        raise ArithmeticError(f"non-prime modulus in legendre_batch: {q[bad][:5]}")
    return out


def check_rule(rule: ResidueClassRule, q_bound: int) -> ScanReport:
    if q_bound < 5:
        raise ValueError("q_bound must be >= 5")
    rep = ScanReport(rule.name, {"q_bound": q_bound})
    qs = _odd_primes(q_bound).astype(np.uint64)
    ns = (qs - 1) // 2
    cls = (ns % rule.modulus).astype(np.int64)

    excl = np.isin(cls, list(rule.excluded_classes))
    static = {}
    for r in sorted(rule.excluded_classes):
        s = rule.fixed_factor(r)
        # s | 2r+1 and s | modulus make s | 2n+1 for the whole class
        ok = (2 * r + 1) % s == 0 and rule.modulus % s == 0
        static[str(r)] = s
        if not ok:
            rep.fail(kind="excluded-class", cls=r, factor=s)
    confirmed = 0
    for q, r in zip(qs[excl].tolist(), cls[excl].tolist()):
        if q == rule.fixed_factor(r):
            confirmed += 1
        else:
            rep.fail(kind="excluded-prime", q=q, n=(q - 1) // 2, cls=r)

    active = ~excl & ((rule.x * rule.y) % qs != 0)
    q = qs[active]
    n = ns[active]
    c = cls[active]
    u = kernels.powmod_batch(rule.x, n, q)
    v = kernels.powmod_batch(rule.y, n, q)
    plus_div = (u + v) % q == 0
    minus_div = u == v
    predicted_plus = np.isin(c, list(rule.plus_classes))

    y_inv = kernels.powmod_batch(rule.y, q - 2, q)
    ratio = kernels.mulmod_batch(_u64(rule.x) % q, y_inv, q)
    chi = legendre_batch(ratio, q)
    oracle_plus = chi == -1

    rep.checked = int(q.size)
    ok_class = np.where(predicted_plus, plus_div, minus_div)
    ok_excl = plus_div ^ minus_div
    ok_oracle = oracle_plus == predicted_plus
    for i in np.flatnonzero(~(ok_class & ok_excl & ok_oracle)).tolist():
        rep.fail(
            kind="class",
            q=int(q[i]),
            n=int(n[i]),
            cls=int(c[i]),
            predicted="+" if predicted_plus[i] else "-",
            divides_plus=bool(plus_div[i]),
            divides_minus=bool(minus_div[i]),
            legendre=int(chi[i]),
        )
    rep.details = {
        "oracle_agreement": int(ok_oracle.sum()),
        "oracle_checked": int(q.size),
        "excluded_factor": static,
        "excluded_primes_confirmed": confirmed,
        "plus_instances": int(predicted_plus.sum()),
        "minus_instances": int((~predicted_plus).sum()),
    }
    return rep


def check_square_split(q_bound: int) -> ScanReport:
    """For odd prime ``q = 2m + 1``: ``q | 2^(2m) - 1`` and ``q`` divides exactly one of ``2^m -/+ 1``."""
    if q_bound < 3:
        raise ValueError("q_bound must be >= 3")
    rep = ScanReport("square-split", {"q_bound": q_bound})
    q = _odd_primes(q_bound).astype(np.uint64)
    m = (q - 1) // 2
    full = kernels.powmod_batch(2, 2 * m, q)
    half = kernels.powmod_batch(2, m, q)
    minus = half == 1
    plus = half == q - 1
    rep.checked = int(q.size)
    for i in np.flatnonzero((full != 1) | ~(minus ^ plus)).tolist():
        rep.fail(q=int(q[i]), m=int(m[i]), pow_2m=int(full[i]), pow_m=int(half[i]))
    rep.details = {"minus_side": int(minus.sum()), "plus_side": int(plus.sum())}
    return rep


THEOREM_IDS = ("1", "2", "3", "4", "5", "6", "main", "two-power", "square-split")
RULE_FOR_ID = {"4": "T4", "5": "T5", "6": "T6", "two-power": "P2"}
