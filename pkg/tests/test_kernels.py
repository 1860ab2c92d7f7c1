import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from numclaims import kernels

U64 = (1 << 64) - 1
moduli = st.one_of(
    st.integers(1, 1 << 16),
    st.integers(1 << 31, 1 << 33),
    st.integers((1 << 62) - 1000, (1 << 63) + 1000),
    st.integers(U64 - 10**6, U64),
)


@settings(max_examples=300, deadline=None)
@given(m=moduli, data=st.data())
def test_mulmod_matches_bigint(backend, m, data):
    a = data.draw(st.integers(0, m - 1))
    b = data.draw(st.integers(0, m - 1))
    assert backend.mulmod(a, b, m) == a * b % m


@settings(max_examples=200, deadline=None)
@given(m=moduli, b=st.integers(0, U64), e=st.integers(0, U64))
def test_powmod_matches_builtin(backend, m, b, e):
    assert backend.powmod(b, e, m) == pow(b, e, m)


@settings(max_examples=100, deadline=None)
@given(m=moduli, b=st.integers(0, U64), k=st.integers(0, 200))
def test_powtower2_matches_builtin(backend, m, b, k):
    assert backend.powtower2(b, k, m) == pow(b, 1 << k, m)


def test_mulmod_edge_moduli(backend):
    for m in (1, 2, 3, (1 << 32) - 1, 1 << 32, (1 << 32) + 1, (1 << 63) - 1, 1 << 63, U64):
        for a, b in ((0, 0), (m - 1, m - 1), (m // 2, m - 1), (1, m - 1)):
            a, b = a % m, b % m
            assert backend.mulmod(a, b, m) == a * b % m, (a, b, m)


def test_batch_kernels_agree_across_backends():
    rng = np.random.default_rng(7)
    mods = np.concatenate([
        rng.integers(2, 1 << 20, 200, dtype=np.uint64),
        rng.integers(1 << 40, 1 << 62, 200, dtype=np.uint64),
        np.full(50, U64 - 58, dtype=np.uint64),
    ])
    a = rng.integers(0, 1 << 63, mods.size, dtype=np.uint64) % mods
    b = rng.integers(0, 1 << 63, mods.size, dtype=np.uint64) % mods
    e = rng.integers(0, 1 << 63, mods.size, dtype=np.uint64)
    want_mul = [int(x) * int(y) % int(m) for x, y, m in zip(a, b, mods)]
    want_pow = [pow(int(x), int(y), int(m)) for x, y, m in zip(a, e, mods)]
    want_tower = [pow(int(x), 1 << 9, int(m)) for x, m in zip(a, mods)]
    for impl in kernels.backends().values():
        assert impl.mulmod_batch(a, b, mods).tolist() == want_mul
        assert impl.powmod_batch(a, e, mods).tolist() == want_pow
        assert [impl.powtower2(int(x), 9, int(m)) for x, m in zip(a, mods)] == want_tower
    assert kernels.powtower2_batch(5, 9, mods).tolist() == [pow(5, 512, int(m)) for m in mods]


def test_powmod_batch_broadcasts():
    q = np.array([7, 11, 13], dtype=np.uint64)
    got = kernels.powmod_batch(np.arange(1, 5, dtype=np.uint64)[:, None], q - 1, q)
    assert got.shape == (4, 3)
    assert (got == 1).all()


def test_is_prime_known_hard_cases(backend):
    # strong pseudoprimes to several small bases and large primes near 2^64
    composites = [3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051,
                  318665857834031151167461 % (1 << 64), 4294967297, 18446744073709551615]
    primes = [2, 3, 37, 41, 1369 + 2, 2**61 - 1, 18446744073709551557, 4294967291]
    for n in composites:
        assert not backend.is_prime(n), n
    for n in primes:
        if n == 1371:  # 1371 = 3 * 457
            assert not backend.is_prime(n)
            continue
        assert backend.is_prime(n), n


def test_rho_splits_semiprimes(backend):
    for p, q in ((641, 6700417), (1000003, 1000033), (4294967291, 4294967279)):
        d = backend.rho(p * q, 1, 2)
        assert d in (p, q)


def test_first_mersenne_divisor_matches_scan(backend):
    for p, k_max, want in ((37, 10, 223), (43, 10, 431), (73, 10, 439), (29, 100, 233), (31, 1000, 0)):
        assert backend.first_mersenne_divisor(p, k_max, True) == want


def test_first_tower_divisor(backend):
    cands = np.array([3, 5, 7, 11, 13, 17, 641, 6700417], dtype=np.uint64)
    assert backend.first_tower_divisor(2, 5, cands) == 6
    assert backend.first_tower_divisor(2, 5, cands[:6]) == -1


def test_sieve_mask_backends_agree():
    masks = [impl.sieve_mask(10**5) for impl in kernels.backends().values()]
    for m in masks[1:]:
        assert np.array_equal(m, masks[0])


def test_trial_divide(backend):
    primes = np.array([2, 3, 5, 7, 11, 13], dtype=np.int64)
    ps, es, rest = backend.trial_divide(2**5 * 3 * 13**2 * 1009, primes)
    assert list(map(int, ps)) == [2, 3, 13]
    assert list(map(int, es)) == [5, 1, 2]
    assert int(rest) == 1009


def test_random_triples_oracle(backend):
    rng = random.Random(2024)
    for _ in range(2000):
        m = rng.choice([rng.randrange(1, 1 << 32), rng.randrange(1 << 32, 1 << 64)])
        a, b = rng.randrange(m), rng.randrange(m)
        assert backend.mulmod(a, b, m) == a * b % m


@pytest.mark.skipif("numba" not in kernels.backends(), reason="numba unavailable")
def test_backend_flag_default_is_numba():
    import os

    if os.environ.get("NUMCLAIMS_DISABLE_JIT"):
        pytest.skip("fallback forced by environment")
    assert kernels.BACKEND == "numba"


def test_mixed_parity_wide_moduli_batch():
    # odd wide moduli take the Montgomery route, even ones the shift-and-add route
    rng = random.Random(3)
    mods = [rng.randrange(1 << 32, 1 << 64) for _ in range(300)] + [(1 << 64) - 2, (1 << 63), (1 << 32) + 2]
    a = [rng.randrange(m) for m in mods]
    e = [rng.randrange(1 << 64) for _ in mods]
    arr = lambda xs: np.array(xs, dtype=np.uint64)
    for impl in kernels.backends().values():
        assert impl.mulmod_batch(arr(a), arr(a), arr(mods)).tolist() == [x * x % m for x, m in zip(a, mods)]
        assert impl.powmod_batch(arr(a), arr(e), arr(mods)).tolist() == [pow(x, y, m) for x, y, m in zip(a, e, mods)]
        assert impl.powtower2_batch(7, 70, arr(mods)).tolist() == [pow(7, 1 << 70, m) for m in mods]


def test_rho_on_wide_odd_semiprime(backend):
    p, q = 2147483647, 4294967291  # product near 2^63
    assert backend.rho(p * q, 1, 2) in (p, q)
