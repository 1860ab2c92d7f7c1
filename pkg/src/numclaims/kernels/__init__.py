"""Hot loops, with a numba backend and a pure-numpy fallback.

The backend is chosen once at import. Set ``NUMCLAIMS_DISABLE_JIT=1`` to force
the numpy path; it is also used automatically when numba is not importable.

Every kernel expects validated, reduced inputs in ``[0, 2**64)``. Argument
checking lives in the public modules (:mod:`numclaims.modarith` and friends).
"""

import importlib
import os

import numpy as np

from . import numpy_impl

_disabled = os.environ.get("NUMCLAIMS_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes"}

numba_impl = None
if not _disabled:
    try:
        numba_impl = importlib.import_module(".numba_impl", __name__)
    except ImportError:  # pragma: no cover - numba is an optional accelerator
        numba_impl = None

BACKEND = "numba" if numba_impl is not None else "numpy"
_impl = numba_impl if numba_impl is not None else numpy_impl

__all__ = [
    "BACKEND",
    "mulmod",
    "powmod",
    "powtower2",
    "is_prime",
    "rho",
    "trial_divide",
    "sieve_mask",
    "mulmod_batch",
    "powmod_batch",
    "powtower2_batch",
    "first_tower_divisor",
    "first_mersenne_divisor",
    "backends",
]


def backends():
    """Map of backend name to implementation module, for benchmarks and tests."""
    out = {"numpy": numpy_impl}
    if numba_impl is not None:
        out["numba"] = numba_impl
    return out


def _u64(x):
    return np.ascontiguousarray(x, dtype=np.uint64).ravel()


if _impl is numba_impl:

    def mulmod(a, b, m):
        return int(numba_impl.mulmod(a, b, m))

    def powmod(b, e, m):
        return int(numba_impl.powmod(b, e, m))

    def powtower2(b, k, m):
        return int(numba_impl.powtower2(b, k, m))

    def is_prime(n):
        return bool(numba_impl.is_prime(n))

    def rho(n, c, x0=2):
        return int(numba_impl.rho(n, c, x0))

    def trial_divide(n, primes):
        ps, es, rest = numba_impl.trial_divide(n, np.asarray(primes, dtype=np.int64))
        return [int(p) for p in ps], [int(e) for e in es], int(rest)

    def sieve_mask(limit):
        return numba_impl.sieve_mask(limit)

    def _broadcast3(a, b, m):
        a, b, m = np.broadcast_arrays(np.asarray(a, np.uint64), np.asarray(b, np.uint64), np.asarray(m, np.uint64))
        # numba warns on broadcast views, so pass owned copies
        return a.shape, *(np.array(x, dtype=np.uint64).ravel() for x in (a, b, m))

    def mulmod_batch(a, b, m):
        shape, a, b, m = _broadcast3(a, b, m)
        return numba_impl.mulmod_batch(a, b, m).reshape(shape)

    def powmod_batch(b, e, m):
        shape, b, e, m = _broadcast3(b, e, m)
        return numba_impl.powmod_batch(b, e, m).reshape(shape)

    def powtower2_batch(b, k, m):
        m = np.asarray(m, dtype=np.uint64)
        return numba_impl.powtower2_batch(b, k, _u64(m)).reshape(m.shape)

    def first_tower_divisor(b, k, candidates):
        return int(numba_impl.first_tower_divisor(b, k, _u64(candidates)))

    def first_mersenne_divisor(p, k_max, mod8_filter=True):
        return int(numba_impl.first_mersenne_divisor(p, k_max, mod8_filter))

else:
    mulmod = numpy_impl.mulmod
    powmod = numpy_impl.powmod
    powtower2 = numpy_impl.powtower2
    is_prime = numpy_impl.is_prime

    def rho(n, c, x0=2):
        return numpy_impl.rho(n, c, x0)

    def trial_divide(n, primes):
        ps, es, rest = numpy_impl.trial_divide(n, np.asarray(primes, dtype=np.int64))
        return [int(p) for p in ps], [int(e) for e in es], int(rest)

    sieve_mask = numpy_impl.sieve_mask
    mulmod_batch = numpy_impl.mulmod_batch
    powmod_batch = numpy_impl.powmod_batch
    powtower2_batch = numpy_impl.powtower2_batch
    first_tower_divisor = numpy_impl.first_tower_divisor

    def first_mersenne_divisor(p, k_max, mod8_filter=True):
        return numpy_impl.first_mersenne_divisor(p, k_max, mod8_filter)
