"""Catalog of checkable numeric claims and the machinery that audits them.

Each :class:`Claim` carries a self-contained :class:`Check`: an operation name
plus fixed arguments, so the catalog needs no outside configuration. A claim
that turns out false is an ordinary outcome (``agrees=False``), not
an error. Errors are reserved for checks that could not run at all.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import kernels, theorems
from .forms import PowerForm, divides_power_form, fermat_value, find_fermat_factor
from .mersenne import CLAIMED_PERFECT_EXPONENTS, audit_perfect_list, excluded_exponents
from .primes import factorize, is_prime


class ClaimCheckError(RuntimeError):
    """A claim's check could not be executed."""


@dataclass(frozen=True)
class Check:
    op: str
    args: dict
    expect: Any = None


@dataclass(frozen=True)
class Claim:
    id: str
    category: str  # fermat | mersenne | perfect | theorem | misc
    statement: str
    check: Check
    verdict: str = "asserted_true"  # asserted_true | asserted_prime | listed
    note: str = ""
    expect_agreement: bool = True


@dataclass
class ClaimOutcome:
    id: str
    computed_verdict: str  # holds | fails | error
    agrees: bool | None
    witness: dict = field(default_factory=dict)
    elapsed: float = 0.0
    expected_agreement: bool = True

    @property
    def matches_expectation(self) -> bool:
        return self.computed_verdict != "error" and self.agrees == self.expected_agreement

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "verdict": self.computed_verdict,
            "agrees": self.agrees,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


# -- check operations -------------------------------------------------------

_OPS: dict[str, Callable[..., tuple[bool, dict]]] = {}


def _op(name):
    def deco(fn):
        _OPS[name] = fn
        return fn

    return deco


def _form_witness(d, base, exponent, sign):
    return {"divisor": d, "base": base, "exponent": exponent, "sign": sign}


@_op("divides_form")
def _divides_form(d, base, exponent, sign, expect=True):
    f = PowerForm(base, exponent, sign)
    holds = divides_power_form(d, f)
    return holds == expect, {"form": str(f), **_form_witness(d, base, exponent, sign)}


@_op("fermat_factor")
def _fermat_factor(m, bound, strategy="all_primes", expect=None):
    q = find_fermat_factor(m, bound, strategy)
    w = {"m": m, "bound": bound, "strategy": strategy, "factor": q}
    if q is not None:
        w.update(_form_witness(q, 2, 2**m, 1))
        if m <= 5:
            w["cofactor"] = fermat_value(m) // q
    return q == expect, w


@_op("fermat_value")
def _fermat_value(m, expect):
    v = fermat_value(m)
    return v == expect, {"m": m, "value": v}


@_op("fermat_primes")
def _fermat_primes(ms, bound, expect=None):
    values = [fermat_value(m) for m in ms]
    prime = [is_prime(v) for v in values]
    factors = [find_fermat_factor(m, bound) for m in ms]
    holds = all(prime) and all(f is None for f in factors)
    return holds, {"values": values, "all_prime": all(prime), "proper_factor_bound": bound, "factors_found": factors}


@_op("fermat_list")
def _fermat_list(ms, expect):
    computed = [fermat_value(m) for m in ms]
    diffs = [
        {"m": m, "printed": p, "computed": c, "base": 2, "exponent": 2**m, "sign": 1}
        for m, p, c in zip(ms, expect, computed)
        if p != c
    ]
    return not diffs, {"printed": list(expect), "computed": computed, "mismatches": diffs}


@_op("quadratic_class")
def _quadratic_class(d, a_bound, classes, expect=None):
    # d | a^2 + 1  <=>  a mod d in classes, for every 1 <= a <= a_bound
    a = np.arange(1, a_bound + 1, dtype=np.uint64)
    divides = kernels.powmod_batch(a, 2, d) == d - 1
    predicted = np.isin(a % np.uint64(d), np.array(classes, dtype=np.uint64))
    bad = np.flatnonzero(divides != predicted)
    return bad.size == 0, {
        "divisor": d,
        "scanned": a_bound,
        "divisible_count": int(divides.sum()),
        "mismatches": [int(a[i]) for i in bad[:20]],
    }


@_op("factorization")
def _factorization(n, expect):
    fac = factorize(n)
    got = [[p, e] for p, e in fac.factors]
    return got == [list(x) for x in expect], {"n": n, "factors": got, "composite": not is_prime(n)}


@_op("excluded_exponents")
def _excluded(limit, expect):
    got = excluded_exponents(limit)
    return got == list(expect), {
        "limit": limit,
        "exponents": got,
        "divisors": [2 * p + 1 for p in got],
    }


@_op("perfect_audit")
def _perfect_audit(limit, k_max, expect=None):
    audit = audit_perfect_list(limit, k_max)
    return audit.consistent, {
        "claimed": list(audit.claimed_list),
        "computed": audit.computed_list,
        "agreements": audit.agreements,
        "refuted": {str(p): v for p, v in sorted(audit.claimed_only.items())},
        "computed_only": audit.computed_only,
    }


def _scan_result(rep: theorems.ScanReport) -> tuple[bool, dict]:
    w = {"scan": rep.id, "bounds": rep.bounds, "checked": rep.checked, "counterexamples": rep.counterexamples}
    if "oracle_agreement" in rep.details:
        w["oracle_agreement"] = rep.details["oracle_agreement"]
        w["excluded_factor"] = rep.details["excluded_factor"]
    return rep.passed, w


@_op("scan_theorem")
def _scan_theorem(theorem, expect=None, **bounds):
    if theorem == "main":
        return _scan_result(theorems.check_main_theorem(**bounds))
    if theorem == "1":
        return _scan_result(theorems.check_theorem1(**bounds))
    if theorem == "2":
        return _scan_result(theorems.check_theorem2(**bounds))
    if theorem == "3":
        return _scan_result(theorems.check_theorem3_family(**bounds))
    if theorem == "square-split":
        return _scan_result(theorems.check_square_split(**bounds))
    raise ClaimCheckError(f"unknown theorem {theorem!r}")


@_op("scan_rule")
def _scan_rule(rule, q_bound, expect=None):
    return _scan_result(theorems.check_rule(theorems.rule_by_name(rule), q_bound))


# -- the catalog ------------------------------------------------------------


def _div(cid, cat, statement, d, base, exponent, sign, note=""):
    return Claim(cid, cat, statement, Check("divides_form", {"d": d, "base": base, "exponent": exponent, "sign": sign}, expect=True), note=note)


def catalog() -> list[Claim]:
    rules_q = theorems.DEFAULT_BOUNDS["rules"]["q_bound"]
    b = theorems.DEFAULT_BOUNDS
    return [
        Claim(
            "C01", "fermat", "641 divides 2^32+1",
            Check("fermat_factor", {"m": 5, "bound": 10**4}, expect=641),
            note="F_5 is composite: the first counterexample to the primality of all Fermat numbers",
        ),
        Claim("C02", "fermat", "2^32+1 = 4294967297", Check("fermat_value", {"m": 5}, expect=4294967297)),
        Claim(
            "C03", "fermat", "2^(2^m)+1 is prime for m = 0..4 (3, 5, 17, 257, 65537)",
            Check("fermat_primes", {"ms": [0, 1, 2, 3, 4], "bound": 10**6}),
            verdict="asserted_prime",
            note="only m <= 4 is audited here; the failure at m = 5 is C01",
        ),
        Claim(
            "C04", "fermat", "m = 1, 2, 3, 4 give 5, 7, 257, 65537",
            Check("fermat_list", {"ms": [1, 2, 3, 4]}, expect=[5, 7, 257, 65537]),
            verdict="listed",
            note="printed 7 where 2^4+1 = 17; a misprint rather than an arithmetic claim",
            expect_agreement=False,
        ),
        Claim(
            "C05", "misc", "5 divides a^2+1 exactly when a = 5b +/- 3",
            Check("quadratic_class", {"d": 5, "a_bound": 10**4, "classes": [2, 3]}),
            note="both directions scanned over 1 <= a <= 10^4",
        ),
        _div("C06", "misc", "17 divides 30^2+1", 17, 30, 2, 1),
        _div("C07", "misc", "41 divides 50^2+1", 41, 50, 2, 1),
        _div("C08", "misc", "73 divides 10^4+1", 73, 10, 4, 1),
        _div("C09", "misc", "17 divides 6^8+1", 17, 6, 8, 1),
        _div("C10", "misc", "257 divides 6^128+1", 257, 6, 128, 1, note="checked modularly; 6^128+1 is never formed"),
        Claim("C11", "mersenne", "2047 = 2^11-1 = 23 * 89", Check("factorization", {"n": 2047}, expect=[[23, 1], [89, 1]])),
        _div("C12", "mersenne", "47 divides 2^23-1", 47, 2, 23, -1),
        Claim(
            "C13", "mersenne", "511 = 2^9-1 is composite, divisible by 2^3-1 = 7",
            Check("factorization", {"n": 511}, expect=[[7, 1], [73, 1]]),
            note="511 had been listed as a prime",
        ),
        Claim(
            "C14", "mersenne", "exponents excluded by the 2p+1 rule up to 239: 11, 23, 83, 131, 179, 191, 239",
            Check("excluded_exponents", {"limit": 239}, expect=[11, 23, 83, 131, 179, 191, 239]),
            verdict="listed",
        ),
        _div("C15", "mersenne", "223 divides 2^37-1", 223, 2, 37, -1),
        _div("C16", "mersenne", "431 divides 2^43-1", 431, 2, 43, -1),
        _div("C17", "mersenne", "1103 divides 2^29-1", 1103, 2, 29, -1, note="not the smallest factor; 233 also divides"),
        _div("C18", "mersenne", "439 divides 2^73-1", 439, 2, 73, -1),
        Claim(
            "C19", "perfect",
            "2^(n-1)(2^n-1) is perfect for n = " + ", ".join(map(str, CLAIMED_PERFECT_EXPONENTS)),
            Check("perfect_audit", {"limit": 47, "k_max": 10**5}),
            verdict="listed",
            note="n = 1 gives 1, not perfect; 2^41-1 and 2^47-1 are composite",
            expect_agreement=False,
        ),
        Claim(
            "C20", "theorem", "a^(n-1) mod n is 0 or 1 for prime n",
            Check("scan_theorem", {"theorem": "1", **b["1"]}),
        ),
        Claim(
            "C21", "theorem", "a^(n^(m-1)(n-1)) mod n^m is 0 or 1 for prime n",
            Check("scan_theorem", {"theorem": "2", **b["2"]}),
        ),
        Claim(
            "C22", "theorem", "a^lcm(p_i - 1) = 1 mod prod(p_i) for distinct primes p_i not dividing a",
            Check("scan_theorem", {"theorem": "3", **b["3"]}),
            note="only the coprime case is asserted; the residue-0 branch fails in general",
        ),
        Claim(
            "C23", "theorem", "2n+1 prime divides 3^n+1 for n = 6p+2, 6p+3 and 3^n-1 for n = 6p, 6p-1",
            Check("scan_rule", {"rule": "T4", "q_bound": rules_q}),
        ),
        Claim(
            "C24", "theorem",
            "2n+1 prime divides 3^n+2^n for n = 12p+3, 12p+5, 12p+6, 12p+8 and 3^n-2^n for n = 12p, 12p+2, 12p+9, 12p+11",
            Check("scan_rule", {"rule": "T5", "q_bound": rules_q}),
            note="the class printed as 'n=12' is read as n = 12p",
        ),
        Claim(
            "C25", "theorem", "6^n+1 and 6^n-1 follow the same classes as 3^n+2^n and 3^n-2^n",
            Check("scan_rule", {"rule": "T6", "q_bound": rules_q}),
        ),
        Claim(
            "C26", "theorem", "2m+1 prime divides 2^m+1 for m = 4p+1, 4p+2 and 2^m-1 for m = 4p, 4p-1",
            Check("scan_rule", {"rule": "P2", "q_bound": rules_q}),
        ),
        Claim(
            "C27", "theorem", "2m+1 prime divides 2^(2m)-1, and exactly one of 2^m-1, 2^m+1",
            Check("scan_theorem", {"theorem": "square-split", "q_bound": rules_q}),
        ),
    ]


def claim_ids() -> list[str]:
    return [c.id for c in catalog()]


def get_claim(cid: str) -> Claim:
    for c in catalog():
        if c.id == cid:
            return c
    raise KeyError(cid)


def run_claim(c: Claim) -> ClaimOutcome:
    start = time.perf_counter()
    try:
        fn = _OPS.get(c.check.op)
        if fn is None:
            raise ClaimCheckError(f"{c.id}: unknown check operation {c.check.op!r}")
        holds, witness = fn(expect=c.check.expect, **c.check.args)
    except Exception as exc:  # noqa: BLE001 - reported as a distinct verdict
        return ClaimOutcome(
            c.id, "error", None, {"error": f"{type(exc).__name__}: {exc}"},
            time.perf_counter() - start, c.expect_agreement,
        )
    return ClaimOutcome(
        c.id, "holds" if holds else "fails", bool(holds), witness,
        time.perf_counter() - start, c.expect_agreement,
    )


@dataclass
class Summary:
    agree: int
    disagree: int
    error: int

    def to_json(self) -> dict:
        return {"agree": self.agree, "disagree": self.disagree, "error": self.error}


def summarize(outcomes: list[ClaimOutcome]) -> Summary:
    return Summary(
        agree=sum(o.agrees is True for o in outcomes),
        disagree=sum(o.agrees is False for o in outcomes),
        error=sum(o.computed_verdict == "error" for o in outcomes),
    )


def run_all(claims: list[Claim] | None = None, workers: int = 1) -> tuple[list[ClaimOutcome], Summary]:
    """Run every claim and return outcomes ordered by id plus the summary counts."""
    claims = catalog() if claims is None else claims
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_claim, claims))
    else:
        outcomes = [run_claim(c) for c in claims]
    outcomes.sort(key=lambda o: o.id)
    return outcomes, summarize(outcomes)
