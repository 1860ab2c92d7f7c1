"""Pure-numpy fallback kernels.

Scalar kernels run on Python ints but follow the same word-size discipline as
the compiled path: every value is a 64-bit word, and the places where the
compiled code relies on wrapping multiplication are masked to 64 bits. They
compute exactly what a 64-bit machine would. Batch kernels are vectorized over
``uint64`` arrays.
"""

import math

import numpy as np

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_CHUNK = 1 << 15
_U64_MAX = (1 << 64) - 1


def headroom(m):
    return 64 - int(m).bit_length()


def _addmod(x, y, m):
    if x >= m - y:
        return x - (m - y)
    return x + y


def mulmod_w(a, b, m, w):
    if w >= 32:
        return (a * b) % m
    if w == 0:
        r = 0
        for i in range(63, -1, -1):
            r = _addmod(r, r, m)
            if (b >> i) & 1:
                r = _addmod(r, a, m)
        return r
    mask = (1 << w) - 1
    nchunks = (64 - w + w - 1) // w
    r = 0
    for j in range(nchunks - 1, -1, -1):
        r = (r << w) % m
        r = (r + (a * ((b >> (j * w)) & mask)) % m) % m
    return r


_M64 = (1 << 64) - 1
_L32 = (1 << 32) - 1


def _mulhi(a, b):
    a0, a1, b0, b1 = a & _L32, a >> 32, b & _L32, b >> 32
    p01, p10 = a0 * b1, a1 * b0
    mid = ((a0 * b0) >> 32) + (p01 & _L32) + (p10 & _L32)
    return a1 * b1 + (p01 >> 32) + (p10 >> 32) + (mid >> 32)


def _mont_inv(n):
    x = n
    for _ in range(5):
        x = (x * ((2 - n * x) & _M64)) & _M64
    return x


def _montmul(a, b, n, ninv):
    hi = _mulhi(a, b)
    t = _mulhi((((a * b) & _M64) * ninv) & _M64, n)
    return hi - t if hi >= t else hi + (n - t)


def _mont_r2(n):
    r = (1 << 64) % n  # the compiled path gets this from (0 - n) mod n
    for _ in range(64):
        r = _addmod(r, r, n)
    return r


def _use_mont(m, w):
    return w < 32 and m & 1


def mulmod(a, b, m):
    w = headroom(m)
    if _use_mont(m, w):
        ninv = _mont_inv(m)
        return _montmul(_montmul(a % m, b % m, m, ninv), _mont_r2(m), m, ninv)
    return mulmod_w(a % m, b % m, m, w)


def powmod(b, e, m):
    if m == 1:
        return 0
    w = headroom(m)
    b %= m
    if _use_mont(m, w):
        ninv = _mont_inv(m)
        x = (1 << 64) % m
        bm = _montmul(b, _mont_r2(m), m, ninv)
        while e:
            if e & 1:
                x = _montmul(x, bm, m, ninv)
            bm = _montmul(bm, bm, m, ninv)
            e >>= 1
        return _montmul(x, 1, m, ninv)
    r = 1
    while e:
        if e & 1:
            r = mulmod_w(r, b, m, w)
        b = mulmod_w(b, b, m, w)
        e >>= 1
    return r


def powtower2(b, k, m):
    if m == 1:
        return 0
    w = headroom(m)
    x = b % m
    if _use_mont(m, w):
        ninv = _mont_inv(m)
        x = _montmul(x, _mont_r2(m), m, ninv)
        for _ in range(k):
            x = _montmul(x, x, m, ninv)
        return _montmul(x, 1, m, ninv)
    for _ in range(k):
        x = mulmod_w(x, x, m, w)
    return x


def gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def is_prime(n):
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 37 * 37:
        return True
    d = n - 1
    s = 0
    while d & 1 == 0:
        d >>= 1
        s += 1
    w = headroom(n)
    if _use_mont(n, w):
        ninv = _mont_inv(n)
        r2 = _mont_r2(n)
        minus_one = n - (1 << 64) % n
        square = lambda x: _montmul(x, x, n, ninv)
    else:
        r2 = None
        minus_one = n - 1
        square = lambda x: mulmod_w(x, x, n, w)
    for a in _MR_BASES:
        x = powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        if r2 is not None:
            x = _montmul(x, r2, n, ninv)
        for _ in range(s - 1):
            x = square(x)
            if x == minus_one:
                break
        else:
            return False
    return True


def rho(n, c, x0):
    if n % 2 == 0:
        return 2
    w = headroom(n)
    if _use_mont(n, w):
        ninv = _mont_inv(n)
        sq = lambda v: _montmul(v, v, n, ninv)
        mul = lambda u, v: _montmul(u, v, n, ninv)
        c %= n
    else:
        sq = lambda v: mulmod_w(v, v, n, w)
        mul = lambda u, v: mulmod_w(u, v, n, w)
    y = x0 % n
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = _addmod(sq(y), c, n)
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(128, r - k)):
                y = _addmod(sq(y), c, n)
                q = mul(q, abs(x - y))
            g = gcd(q, n)
            k += 128
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = _addmod(sq(ys), c, n)
            g = gcd(abs(x - ys), n)
    return g


def trial_divide(n, primes):
    ps, es = [], []
    primes = np.asarray(primes, dtype=np.uint64)
    # primes that divide n are exactly the zeros of one vectorized remainder
    live = primes[primes <= np.uint64(min(math.isqrt(n), _U64_MAX))]
    for p in live[np.uint64(n) % live == 0].tolist():
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        ps.append(p)
        es.append(e)
    return np.array(ps, dtype=np.uint64), np.array(es, dtype=np.int64), n


def sieve_mask(limit):
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if mask[i]:
            mask[i * i :: i] = False
    return mask


# -- batch kernels ----------------------------------------------------------


def _addmod_v(x, y, m):
    t = m - y
    return np.where(x >= t, x - t, x + y)


_LO32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)
_WIDE = np.uint64(1 << 32)


def _mulhi_v(a, b):
    a0, a1 = a & _LO32, a >> _S32
    b0, b1 = b & _LO32, b >> _S32
    p01, p10 = a0 * b1, a1 * b0
    mid = ((a0 * b0) >> _S32) + (p01 & _LO32) + (p10 & _LO32)
    return a1 * b1 + (p01 >> _S32) + (p10 >> _S32) + (mid >> _S32)


class _Mont:
    """Montgomery context for an array of odd moduli (array ops wrap mod 2^64)."""

    def __init__(self, n):
        self.n = n
        x = n.copy()
        for _ in range(5):
            x *= np.uint64(2) - n * x
        self.ninv = x
        self.r1 = (np.zeros_like(n) - n) % n
        r = self.r1
        for _ in range(64):
            r = _addmod_v(r, r, n)
        self.r2 = r

    def mul(self, a, b):
        hi = _mulhi_v(a, b)
        t = _mulhi_v(a * b * self.ninv, self.n)
        return np.where(hi >= t, hi - t, hi - t + self.n)

    def enter(self, a):
        return self.mul(a, self.r2)

    def leave(self, a):
        return self.mul(a, np.ones_like(a))


def _split(m):
    """Mask of moduli handled in Montgomery form: odd and at least 2^32."""
    return (m >= _WIDE) & ((m & np.uint64(1)) == np.uint64(1))


def _flat3(a, b, m):
    a, b, m = np.broadcast_arrays(
        np.asarray(a, dtype=np.uint64), np.asarray(b, dtype=np.uint64), np.asarray(m, dtype=np.uint64)
    )
    return a.shape, a.ravel(), b.ravel(), m.ravel()


def mulmod_batch(a, b, m):
    shape, a, b, m = _flat3(a, b, m)
    a, b = a % m, b % m
    out = np.empty(m.shape, dtype=np.uint64)
    small = m < _WIDE
    if small.all():
        return ((a * b) % m).reshape(shape)
    out[small] = (a[small] * b[small]) % m[small]
    mont = _split(m)
    if mont.any():
        ctx = _Mont(m[mont])
        out[mont] = ctx.mul(ctx.mul(a[mont], b[mont]), ctx.r2)
    rest = ~small & ~mont
    if rest.any():
        out[rest] = _mulmod_wide(a[rest], b[rest], m[rest])
    return out.reshape(shape)


def _mulmod_wide(a, b, m):
    # one headroom for the whole group: the widest modulus sets it
    w = 64 - int(m.max()).bit_length()
    r = np.zeros_like(m)
    if w == 0:
        one = np.uint64(1)
        for i in range(63, -1, -1):
            r = _addmod_v(r, r, m)
            bit = ((b >> np.uint64(i)) & one).astype(bool)
            r = np.where(bit, _addmod_v(r, a, m), r)
        return r
    uw = np.uint64(w)
    mask = np.uint64((1 << w) - 1)
    nchunks = (64 - w + w - 1) // w
    for j in range(nchunks - 1, -1, -1):
        r = (r << uw) % m
        r = (r + (a * ((b >> np.uint64(j * w)) & mask)) % m) % m
    return r


def _ladder(b, e, one, mul):
    r = one
    if e.size == 0:
        return r
    for i in range(int(e.max()).bit_length()):
        bit = ((e >> np.uint64(i)) & np.uint64(1)).astype(bool)
        if bit.any():
            r = np.where(bit, mul(r, b), r)
        b = mul(b, b)
    return r


def powmod_batch(b, e, m):
    shape, b, e, m = _flat3(b, e, m)
    b = b % m
    out = np.empty(m.shape, dtype=np.uint64)
    mont = _split(m)
    plain = ~mont
    if plain.any():
        mp = m[plain]
        out[plain] = _ladder(b[plain], e[plain], np.ones_like(mp) % mp, lambda x, y: mulmod_batch(x, y, mp))
    if mont.any():
        ctx = _Mont(m[mont])
        out[mont] = ctx.leave(_ladder(ctx.enter(b[mont]), e[mont], ctx.r1, ctx.mul))
    return out.reshape(shape)


def powtower2_batch(b, k, m):
    m = np.asarray(m, dtype=np.uint64)
    shape, m = m.shape, m.ravel()
    x = np.full(m.shape, b, dtype=np.uint64) % m
    mont = _split(m)
    plain = ~mont
    out = np.empty_like(m)
    xp, mp = x[plain], m[plain]
    for _ in range(k):
        xp = mulmod_batch(xp, xp, mp)
    out[plain] = xp
    if mont.any():
        ctx = _Mont(m[mont])
        xm = ctx.enter(x[mont])
        for _ in range(k):
            xm = ctx.mul(xm, xm)
        out[mont] = ctx.leave(xm)
    return out.reshape(shape)


def first_tower_divisor(b, k, candidates):
    candidates = np.asarray(candidates, dtype=np.uint64)
    for start in range(0, candidates.size, _CHUNK):
        block = candidates[start : start + _CHUNK]
        hits = np.flatnonzero(powtower2_batch(b, k, block) == block - np.uint64(1))
        for i in hits.tolist():
            if is_prime(int(block[i])):
                return start + i
    return -1


def first_mersenne_divisor(p, k_max, mod8_filter):
    p = int(p)
    for start in range(1, k_max + 1, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, k_max + 1), dtype=np.uint64)
        q = np.uint64(2 * p) * k + np.uint64(1)
        if mod8_filter:
            r = q & np.uint64(7)
            q = q[(r == 1) | (r == 7)]
        hits = q[powmod_batch(2, p, q) == 1]
        for cand in hits.tolist():
            if is_prime(cand):
                return cand
    return 0
