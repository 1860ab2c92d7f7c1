import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from numclaims.primes import SIEVE_CAP, Factorization, factorize, is_prime, sieve
from oracles import is_prime_bf, smallest_factor_bf


def test_sieve_small():
    assert sieve(10).tolist() == [2, 3, 5, 7]
    assert sieve(1).tolist() == []
    assert sieve(0).tolist() == []
    assert sieve(2).tolist() == [2]


def test_sieve_table_size_and_sample():
    table = sieve(100000)
    assert len(table) == 9592
    rng = random.Random(1)
    for n in rng.sample(range(100001), 3000):
        assert (n in set(table.tolist())) == is_prime_bf(n)


def test_sieve_cap():
    with pytest.raises(ValueError):
        sieve(SIEVE_CAP + 1)
    with pytest.raises(ValueError):
        sieve(-1)


def test_sieve_is_read_only():
    with pytest.raises(ValueError):
        sieve(100)[0] = 4


@pytest.mark.parametrize("n, want", [(2047, False), (65537, True), (1, False), (0, False), (2, True)])
def test_is_prime_examples(n, want):
    assert is_prime(n) is want


def test_is_prime_agrees_with_sieve_to_a_million():
    mask = np.zeros(10**6 + 1, dtype=bool)
    mask[sieve(10**6)] = True
    assert all(is_prime(n) == mask[n] for n in range(10**6 + 1))


def test_is_prime_deterministic():
    n = 18446744073709551557
    assert all(is_prime(n) for _ in range(5))


@pytest.mark.parametrize(
    "n, factors",
    [(2047, {23: 1, 89: 1}), (4294967297, {641: 1, 6700417: 1}), (511, {7: 1, 73: 1}), (1, {})],
)
def test_factorize_examples(n, factors):
    assert factorize(n).as_dict() == factors


def test_cofactor_of_f5_is_division():
    assert 4294967297 // 641 == 6700417 and 4294967297 % 641 == 0
    assert is_prime_bf(6700417)


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def _check(f: Factorization):
    assert math.prod(p**e for p, e in f.factors) == f.n
    ps = f.primes()
    assert ps == sorted(set(ps))
    assert all(is_prime(p) for p in ps)


def test_factorize_every_n_below_1e5():
    for n in range(1, 10**5 + 1):
        _check(factorize(n))


def test_smallest_factor_matches_trial_division():
    for n in range(2, 5000):
        assert factorize(n).factors[0][0] == smallest_factor_bf(n)


def test_factorize_random_64_bit():
    rng = random.Random(99)
    for _ in range(10**4):
        _check(factorize(rng.randrange(1, 1 << 64)))


def test_factorize_hard_semiprimes():
    for p, q in ((4294967291, 4294967279), (1000000007, 998244353), (2**31 - 1, 2**31 - 1)):
        f = factorize(p * q)
        assert f.as_dict() == ({p: 2} if p == q else {min(p, q): 1, max(p, q): 1})


@settings(max_examples=300, deadline=None)
@given(st.integers(1, (1 << 64) - 1))
def test_factorize_reassembles(n):
    _check(factorize(n))


def test_factorization_helpers():
    f = factorize(360)
    assert str(f) == "2^3 * 3^2 * 5"
    assert f.sigma() == sum(f.divisors()) == 1170
    assert f.divisors()[:6] == [1, 2, 3, 4, 5, 6]
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
