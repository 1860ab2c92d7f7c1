"""Numba-compiled kernels.

All arithmetic is carried out in ``uint64``. Mixing signed and unsigned
integers makes numba promote to ``float64``, so every literal and loop index
that meets a ``uint64`` value is wrapped explicitly.
"""

import numpy as np
from numba import njit, types

u64 = types.uint64
i64 = types.int64

_Z = np.uint64(0)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_U32 = np.uint64(32)
_U64 = np.uint64(64)
_LO32 = np.uint64(0xFFFFFFFF)

_MR_BASES = np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37], dtype=np.uint64)


@njit(u64(u64), cache=True)
def headroom(m):
    """Number of leading zero bits of ``m`` in a 64-bit word."""
    bits = _Z
    t = m
    while t:
        t >>= _ONE
        bits += _ONE
    return _U64 - bits


@njit(u64(u64, u64, u64), cache=True)
def _addmod(x, y, m):
    # x, y < m; never forms x + y when it could wrap
    if x >= m - y:
        return x - (m - y)
    return x + y


@njit(u64(u64, u64, u64, u64), cache=True)
def mulmod_w(a, b, m, w):
    """(a*b) mod m for a, b < m, given ``w = headroom(m)``."""
    if w >= _U32:
        return (a * b) % m
    if w == _Z:
        r = _Z
        for i in range(63, -1, -1):
            r = _addmod(r, r, m)
            if (b >> np.uint64(i)) & _ONE:
                r = _addmod(r, a, m)
        return r
    mask = (_ONE << w) - _ONE
    nbits = _U64 - w
    nchunks = (nbits + w - _ONE) // w
    r = _Z
    for j in range(np.int64(nchunks) - 1, -1, -1):
        r = (r << w) % m
        c = (b >> (np.uint64(j) * w)) & mask
        r = (r + (a * c) % m) % m
    return r


# -- Montgomery form for odd moduli above 2^32 ------------------------------


@njit(u64(u64, u64), cache=True)
def _mulhi(a, b):
    """High word of the 128-bit product, from 32-bit limbs."""
    a0 = a & _LO32
    a1 = a >> _U32
    b0 = b & _LO32
    b1 = b >> _U32
    p00 = a0 * b0
    p01 = a0 * b1
    p10 = a1 * b0
    mid = (p00 >> _U32) + (p01 & _LO32) + (p10 & _LO32)
    return a1 * b1 + (p01 >> _U32) + (p10 >> _U32) + (mid >> _U32)


@njit(u64(u64), cache=True)
def _mont_inv(n):
    # Newton iteration for n^-1 mod 2^64; n*n = 1 mod 8 seeds 3 good bits
    x = n
    for _ in range(5):
        x *= _TWO - n * x
    return x


@njit(u64(u64, u64, u64, u64), cache=True)
def _montmul(a, b, n, ninv):
    """a*b/2^64 mod n for a, b < n (REDC)."""
    hi = _mulhi(a, b)
    t = _mulhi((a * b) * ninv, n)
    if hi >= t:
        return hi - t
    return hi - t + n  # wraps back into [0, n)


@njit(u64(u64, u64), cache=True)
def _mont_r2(n, w):
    # 2^128 mod n by doubling 2^64 mod n; w is unused but keeps call sites uniform
    r = (_Z - n) % n
    for _ in range(64):
        r = _addmod(r, r, n)
    return r


@njit(types.boolean(u64, u64), cache=True)
def _use_mont(m, w):
    return w < _U32 and (m & _ONE) == _ONE


@njit(u64(u64, u64, u64), cache=True)
def mulmod(a, b, m):
    w = headroom(m)
    if _use_mont(m, w):
        ninv = _mont_inv(m)
        return _montmul(_montmul(a % m, b % m, m, ninv), _mont_r2(m, w), m, ninv)
    return mulmod_w(a % m, b % m, m, w)


@njit(u64(u64, u64, u64), cache=True)
def powmod(b, e, m):
    if m == _ONE:
        return _Z
    w = headroom(m)
    b %= m
    if _use_mont(m, w):
        ninv = _mont_inv(m)
        r2 = _mont_r2(m, w)
        x = (_Z - m) % m
        bm = _montmul(b, r2, m, ninv)
        while e:
            if e & _ONE:
                x = _montmul(x, bm, m, ninv)
            bm = _montmul(bm, bm, m, ninv)
            e >>= _ONE
        return _montmul(x, _ONE, m, ninv)
    r = _ONE
    while e:
        if e & _ONE:
            r = mulmod_w(r, b, m, w)
        b = mulmod_w(b, b, m, w)
        e >>= _ONE
    return r


@njit(u64(u64, i64, u64), cache=True)
def powtower2(b, k, m):
    if m == _ONE:
        return _Z
    w = headroom(m)
    x = b % m
    if _use_mont(m, w):
        ninv = _mont_inv(m)
        x = _montmul(x, _mont_r2(m, w), m, ninv)
        for _ in range(k):
            x = _montmul(x, x, m, ninv)
        return _montmul(x, _ONE, m, ninv)
    for _ in range(k):
        x = mulmod_w(x, x, m, w)
    return x


@njit(u64(u64, u64), cache=True)
def gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(types.boolean(u64), cache=True)
def is_prime(n):
    if n < _TWO:
        return False
    for i in range(_MR_BASES.size):
        p = _MR_BASES[i]
        if n == p:
            return True
        if n % p == _Z:
            return False
    if n < np.uint64(1369):  # 37**2
        return True
    d = n - _ONE
    s = 0
    while (d & _ONE) == _Z:
        d >>= _ONE
        s += 1
    w = headroom(n)
    mont = _use_mont(n, w)
    ninv = _mont_inv(n)
    r2 = _mont_r2(n, w) if mont else _Z
    minus_one = n - (_Z - n) % n  # -1 in Montgomery form
    for i in range(_MR_BASES.size):
        x = powmod(_MR_BASES[i], d, n)
        if x == _ONE or x == n - _ONE:
            continue
        composite = True
        if mont:
            x = _montmul(x, r2, n, ninv)
            for _ in range(s - 1):
                x = _montmul(x, x, n, ninv)
                if x == minus_one:
                    composite = False
                    break
        else:
            for _ in range(s - 1):
                x = mulmod_w(x, x, n, w)
                if x == n - _ONE:
                    composite = False
                    break
        if composite:
            return False
    return True


@njit(u64(u64, u64, u64), cache=True)
def _rho_mont(n, c, x0):
    # same walk as rho, but on y -> y^2/2^64 + c; the 2^-64 scale is a unit mod n
    ninv = _mont_inv(n)
    c %= n
    y = x0 % n
    g = _ONE
    r = _ONE
    q = _ONE
    x = y
    ys = y
    block = np.uint64(128)
    while g == _ONE:
        x = y
        for _ in range(r):
            y = _addmod(_montmul(y, y, n, ninv), c, n)
        k = _Z
        while k < r and g == _ONE:
            ys = y
            lim = min(block, r - k)
            for _ in range(lim):
                y = _addmod(_montmul(y, y, n, ninv), c, n)
                diff = x - y if x > y else y - x
                q = _montmul(q, diff, n, ninv)
            g = gcd(q, n)
            k += block
        r *= _TWO
    if g == n:
        g = _ONE
        while g == _ONE:
            ys = _addmod(_montmul(ys, ys, n, ninv), c, n)
            diff = x - ys if x > ys else ys - x
            g = gcd(diff, n)
    return g


@njit(u64(u64, u64, u64), cache=True)
def rho(n, c, x0):
    """Brent's cycle variant of Pollard rho; returns a divisor of n (possibly n)."""
    if (n & _ONE) == _Z:
        return _TWO
    w = headroom(n)
    if _use_mont(n, w):
        return _rho_mont(n, c, x0)
    y = x0 % n
    g = _ONE
    r = _ONE
    q = _ONE
    x = y
    ys = y
    block = np.uint64(128)
    while g == _ONE:
        x = y
        for _ in range(r):
            y = _addmod(mulmod_w(y, y, n, w), c, n)
        k = _Z
        while k < r and g == _ONE:
            ys = y
            lim = min(block, r - k)
            for _ in range(lim):
                y = _addmod(mulmod_w(y, y, n, w), c, n)
                diff = x - y if x > y else y - x
                q = mulmod_w(q, diff, n, w)
            g = gcd(q, n)
            k += block
        r *= _TWO
    if g == n:
        # the block overshot; walk it one step at a time
        g = _ONE
        while g == _ONE:
            ys = _addmod(mulmod_w(ys, ys, n, w), c, n)
            diff = x - ys if x > ys else ys - x
            g = gcd(diff, n)
    return g


@njit(types.Tuple((u64[:], i64[:], u64))(u64, i64[:]), cache=True)
def trial_divide(n, primes):
    ps = np.zeros(64, dtype=np.uint64)
    es = np.zeros(64, dtype=np.int64)
    k = 0
    for i in range(primes.size):
        p = np.uint64(primes[i])
        if p * p > n:
            break
        if n % p == _Z:
            e = 0
            while n % p == _Z:
                n //= p
                e += 1
            ps[k] = p
            es[k] = e
            k += 1
    return ps[:k], es[:k], n


@njit(cache=True)
def sieve_mask(limit):
    mask = np.ones(limit + 1, dtype=np.bool_)
    mask[:2] = False
    i = 2
    while i * i <= limit:
        if mask[i]:
            for j in range(i * i, limit + 1, i):
                mask[j] = False
        i += 1
    return mask


@njit(u64[:](u64[:], u64[:], u64[:]), cache=True)
def mulmod_batch(a, b, m):
    out = np.empty(a.size, dtype=np.uint64)
    for i in range(a.size):
        out[i] = mulmod(a[i], b[i], m[i])
    return out


@njit(u64[:](u64[:], u64[:], u64[:]), cache=True)
def powmod_batch(b, e, m):
    out = np.empty(b.size, dtype=np.uint64)
    for i in range(b.size):
        out[i] = powmod(b[i], e[i], m[i])
    return out


@njit(u64[:](u64, i64, u64[:]), cache=True)
def powtower2_batch(b, k, m):
    out = np.empty(m.size, dtype=np.uint64)
    for i in range(m.size):
        out[i] = powtower2(b, k, m[i])
    return out


@njit(i64(u64, i64, u64[:]), cache=True)
def first_tower_divisor(b, k, candidates):
    """Index of the first candidate q that is prime and divides b^(2^k)+1, else -1."""
    for i in range(candidates.size):
        q = candidates[i]
        if powtower2(b, k, q) == q - _ONE and is_prime(q):
            return i
    return -1


@njit(u64(u64, i64, types.boolean), cache=True)
def first_mersenne_divisor(p, k_max, mod8_filter):
    """Smallest prime q = 2kp+1 (k <= k_max) dividing 2^p - 1, or 0."""
    two_p = _TWO * p
    q = _ONE
    for _ in range(k_max):
        q += two_p
        if mod8_filter:
            r = q & np.uint64(7)
            if r != _ONE and r != np.uint64(7):
                continue
        if powmod(_TWO, p, q) == _ONE and is_prime(q):
            return q
    return _Z
