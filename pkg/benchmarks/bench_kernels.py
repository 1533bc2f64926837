"""Compare the numba and numpy kernels on the two hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--letters 18] [--shots 2000000]

Both backends are imported from the same module and called directly, so one
process measures both.  The first numba call (compilation or cache load) is
timed separately from the steady state.
"""

import argparse
import time

import numpy as np

from braidtrace import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--letters", type=int, default=18, help="braid length for the state sum")
    ap.add_argument("--strands", type=int, default=4)
    ap.add_argument("--shots", type=int, default=2_000_000)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    n, c = args.strands, args.letters
    gens = rng.integers(0, n - 1, size=c).astype(np.int64)
    signs = rng.choice([-1, 1], size=c).astype(np.int64)
    total = 1 << c

    t0 = time.perf_counter()
    _kernels.numba_state_sum_histogram(gens[:2], signs[:2], n, 0, 4)
    _kernels.numba_shot_accumulate(np.ones(2, complex), np.ones(2), np.zeros(1, np.int64), np.zeros(1), 1 + 0j)
    warm = time.perf_counter() - t0

    t_numba, h1 = best_of(lambda: _kernels.numba_state_sum_histogram(gens, signs, n, 0, total), args.repeat)
    t_numpy, h2 = best_of(lambda: _kernels.numpy_state_sum_histogram(gens, signs, n, 0, total), args.repeat)
    assert np.array_equal(h1, h2)

    dim = 64
    diag = np.exp(1j * rng.uniform(0, 6, dim)) * rng.uniform(0, 1, dim)
    weights = rng.uniform(0, 1, dim)
    idx = rng.integers(0, dim, size=args.shots)
    u = rng.random(args.shots)
    s_numba, r1 = best_of(lambda: _kernels.numba_shot_accumulate(diag, weights, idx, u, 1 + 0j), args.repeat)
    s_numpy, r2 = best_of(lambda: _kernels.numpy_shot_accumulate(diag, weights, idx, u, 1 + 0j), args.repeat)
    assert abs(r1[0] - r2[0]) <= 1e-9 * max(1.0, abs(r1[0]))

    print(f"numba warm-up (compile or cache load): {warm:.3f} s")
    print(f"{'kernel':<34}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    print(f"{f'state sum, {n} strands, 2^{c} states':<34}{t_numba:>10.4f}{t_numpy:>10.4f}{t_numpy / t_numba:>9.1f}")
    print(f"{f'shots, {args.shots} samples':<34}{s_numba:>10.4f}{s_numpy:>10.4f}{s_numpy / s_numba:>9.1f}")


if __name__ == "__main__":
    main()
