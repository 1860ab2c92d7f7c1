"""Compare the numba and numpy kernel backends on the hot paths.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case is run once untimed (JIT compile), then timed as the best of N runs.
Outputs are checked for equality across backends before timing is reported.
"""

import argparse
import time

import numpy as np

from numclaims import kernels


def _cases():
    rng = np.random.default_rng(0)
    q_small = rng.integers(3, 1 << 31, 200_000, dtype=np.uint64) | np.uint64(1)
    q_wide = rng.integers(1 << 62, 1 << 63, 50_000, dtype=np.uint64) | np.uint64(1)
    a_small = rng.integers(0, 1 << 31, q_small.size, dtype=np.uint64) % q_small
    a_wide = rng.integers(0, 1 << 62, q_wide.size, dtype=np.uint64) % q_wide
    e = rng.integers(0, 1 << 63, q_wide.size, dtype=np.uint64)
    q_even = q_wide[:5000] - np.uint64(1)
    sf = (np.arange(1, 40_000, dtype=np.uint64) << np.uint64(8)) + np.uint64(1)
    return {
        "mulmod_batch  m<2^31  n=200k": lambda k: k.mulmod_batch(a_small, a_small, q_small),
        "mulmod_batch  m~2^62  n=50k": lambda k: k.mulmod_batch(a_wide, a_wide, q_wide),
        "powmod_batch  m<2^31  n=200k": lambda k: k.powmod_batch(a_small, q_small - np.uint64(1), q_small),
        "powmod_batch  m~2^62  n=50k": lambda k: k.powmod_batch(a_wide, e, q_wide),
        "powmod_batch  m~2^62 even n=5k": lambda k: k.powmod_batch(a_wide[:5000] % q_even, e[:5000], q_even),
        "first_tower_divisor F6 (k*2^8+1)": lambda k: k.first_tower_divisor(2, 6, sf),
        "first_mersenne_divisor p=59 k<=1e5": lambda k: k.first_mersenne_divisor(59, 100_000, True),
        "sieve_mask 1e7": lambda k: k.sieve_mask(10_000_000),
    }


def _best(fn, impl, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(impl)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    impls = kernels.backends()
    if "numba" not in impls:
        print("numba is not installed; only the numpy backend is available")
    print(f"{'case':<38} " + " ".join(f"{name:>10}" for name in impls) + "   speedup")
    for label, fn in _cases().items():
        outs = {name: fn(impl) for name, impl in impls.items()}
        ref = next(iter(outs.values()))
        for name, out in outs.items():
            assert np.array_equal(np.asarray(out), np.asarray(ref)), f"{label}: {name} disagrees"
        times = {name: _best(fn, impl, args.repeat) for name, impl in impls.items()}
        cells = " ".join(f"{times[n] * 1e3:>8.2f}ms" for n in impls)
        speed = f"{times['numpy'] / times['numba']:>8.1f}x" if "numba" in times else ""
        print(f"{label:<38} {cells} {speed}")


if __name__ == "__main__":
    main()
