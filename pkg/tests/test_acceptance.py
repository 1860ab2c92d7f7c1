"""Acceptance criteria, one test per criterion.

Runtime limits are measured after a warm-up call so that JIT compilation is
not charged to any criterion.
"""

import io
import json
import random
import time

import numpy as np
import pytest

from numclaims import kernels
from numclaims.cli import main
from numclaims.forms import divides_power_form, PowerForm, find_fermat_factor, fermat_value
from numclaims.mersenne import audit_perfect_list, excluded_exponents, is_perfect
from numclaims.modarith import mul_mod, pow_mod
from numclaims.primes import factorize, is_prime, sieve
from numclaims.report import strip_timing
from numclaims.theorems import (
    DEFAULT_BOUNDS,
    check_main_theorem,
    check_rule,
    check_square_split,
    check_theorem1,
    check_theorem2,
    check_theorem3_family,
    rule_by_name,
)
from oracles import aliquot_sums_upto, is_prime_bf


@pytest.fixture(scope="module", autouse=True)
def warm_up():
    kernels.powmod_batch(np.array([2], dtype=np.uint64), 3, np.array([5], dtype=np.uint64))
    kernels.mulmod_batch(np.array([2], dtype=np.uint64), np.array([3], dtype=np.uint64), np.array([5], dtype=np.uint64))
    find_fermat_factor(1, 100)
    find_fermat_factor(1, 100, "special_form")
    audit_perfect_list(3, 10)
    factorize(2**61 - 1)
    check_rule(rule_by_name("T4"), 100)
    check_theorem1(20, 20)
    main(["claims", "--only", "C02"], out=io.StringIO())


def cli(*argv):
    out = io.StringIO()
    code = main([*argv, "--format", "json"], out=out)
    return code, json.loads(out.getvalue())


def test_criterion_01_fermat_refutation():
    t0 = time.perf_counter()
    code, doc = cli("fermat", "factor", "--m", "5", "--bound", "10000")
    assert code == 0 and doc["outcomes"][0]["witness"]["factor"] == 641
    code, doc = cli("claims", "--only", "C01")
    assert code == 0 and doc["outcomes"][0]["agrees"] is True
    elapsed = time.perf_counter() - t0
    assert fermat_value(5) == 4294967297 == 2**32 + 1
    assert 4294967297 % 641 == 0
    assert elapsed < 1.0


def test_criterion_02_fermat_primes():
    t0 = time.perf_counter()
    for m in range(5):
        assert find_fermat_factor(m, 10**6) is None
    assert [fermat_value(m) for m in range(5)] == [3, 5, 17, 257, 65537]
    assert all(is_prime(fermat_value(m)) for m in range(5))
    elapsed = time.perf_counter() - t0
    # independent: no prime below 10^6 other than F_m itself divides F_m
    ps = sieve(10**6).astype(np.int64)
    for m in range(5):
        f = fermat_value(m)
        hits = ps[f % ps == 0].tolist()
        assert hits == [f]
        assert is_prime_bf(f)
    assert elapsed < 5.0


def test_criterion_03_misprint_audit():
    code, doc = cli("claims", "--only", "C04")
    (o,) = doc["outcomes"]
    assert o["agrees"] is False
    assert o["witness"]["printed"] == [5, 7, 257, 65537]
    (mm,) = o["witness"]["mismatches"]
    assert (mm["m"], mm["printed"], mm["computed"]) == (2, 7, 17)
    assert fermat_value(2) == 17


def test_criterion_04_mersenne_exclusions():
    t0 = time.perf_counter()
    ps = excluded_exponents(239)
    checks = [pow_mod(2, p, 2 * p + 1) for p in ps]
    elapsed = time.perf_counter() - t0
    assert ps == [11, 23, 83, 131, 179, 191, 239]
    assert checks == [1] * 7
    assert elapsed < 1.0


def test_criterion_05_factor_claims():
    t0 = time.perf_counter()
    forms = [(223, 37), (431, 43), (1103, 29), (439, 73), (47, 23)]
    assert all(divides_power_form(d, PowerForm(2, e, -1)) for d, e in forms)
    assert all(pow_mod(2, e, d) == 1 for d, e in forms)
    assert factorize(2047).as_dict() == {23: 1, 89: 1}
    assert factorize(511).as_dict() == {7: 1, 73: 1}
    assert pow_mod(2, 11, 23) == 1 and pow_mod(2, 11, 89) == 1
    assert pow_mod(2, 9, 7) == 1 and pow_mod(2, 9, 73) == 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0


def test_criterion_06_perfect_number_audit():
    t0 = time.perf_counter()
    a47 = audit_perfect_list(47, 10**5)
    a63 = audit_perfect_list(63, 10**5)
    elapsed = time.perf_counter() - t0
    assert a47.computed_list == [2, 3, 5, 7, 13, 17, 19, 31]
    assert a47.claimed_only == {1: {"aliquot_sum": 0}, 41: {"factor": 13367}, 47: {"factor": 2351}}
    assert not is_perfect(1)
    assert set(a63.computed_list) - set(a47.computed_list) == {61}
    assert elapsed < 10.0


def test_criterion_07_theorem_scans():
    t0 = time.perf_counter()
    t1 = check_theorem1(2000, 2000)
    t2 = check_theorem2(50, 200)
    t3 = check_theorem3_family(30, 3, 500)
    tm = check_main_theorem(500, 100)
    elapsed = time.perf_counter() - t0
    for rep in (t1, t2, t3, tm):
        assert rep.counterexamples == [] and rep.passed, rep.id
    composites = {n for n in range(2, 2001) if not is_prime_bf(n)}
    assert set(map(int, t1.details["composite_witnesses"])) == composites
    assert t3.details["prime_sets"] == 175
    assert elapsed < 60.0


def test_criterion_08_residue_class_rules():
    t0 = time.perf_counter()
    reps = [check_rule(rule_by_name(n), DEFAULT_BOUNDS["rules"]["q_bound"]) for n in ("T4", "T5", "T6", "P2")]
    split = check_square_split(10**6)
    elapsed = time.perf_counter() - t0
    for rep in reps:
        assert rep.passed, rep.counterexamples[:3]
        d = rep.details
        assert d["oracle_agreement"] == d["oracle_checked"] == rep.checked
        rule = rule_by_name(rep.id)
        for r in rule.excluded_classes:
            s = d["excluded_factor"][str(r)]
            assert all((2 * n + 1) % s == 0 for n in range(r, 10**4, rule.modulus))
    assert split.passed
    assert elapsed < 60.0


def test_criterion_09_determinism():
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        assert main(["claims", "--format", "json"], out=buf) == 0
        outs.append(buf.getvalue())
    a, b = (json.dumps(strip_timing(json.loads(o)), indent=2) for o in outs)
    assert a == b


def test_criterion_10_oracle_cross_checks():
    rng = random.Random(20260)
    for _ in range(10**4):
        m = rng.randrange(1, 1 << 64)
        a, b = rng.randrange(m), rng.randrange(m)
        assert mul_mod(a, b, m) == a * b % m
    sums = aliquot_sums_upto(10**5)
    for n in range(1, 10**5 + 1):
        assert is_perfect(n) == (sums[n] == n)
    for n in range(1, 10**5 + 1):
        f = factorize(n)
        prod = 1
        for p, e in f.factors:
            prod *= p**e
        assert prod == n
