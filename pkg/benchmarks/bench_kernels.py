"""Benchmark the numba kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [--size N] [--repeats R]

Times complex soft-thresholding and the split-Bregman defect loop with
both implementations (the module always exports both, regardless of the
RWKIT_BACKEND selection) and prints the per-call timings and speedup.
"""

import argparse
import timeit

import numpy as np

from rwkit import kernels


def _time(fn, *args, repeats):
    fn(*args)  # warm up (triggers JIT compilation for the numba path)
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeats))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=1 << 16)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    u = rng.standard_normal(args.size) + 1j * rng.standard_normal(args.size)
    lam = 0.5

    rows = []
    rows.append(
        (
            "soft_threshold",
            _time(kernels.soft_threshold_numpy, u, lam, repeats=args.repeats),
            _time(kernels.soft_threshold_flat, u, lam, repeats=args.repeats)
            if kernels.HAS_NUMBA
            else None,
        )
    )
    loop_args = (u * 4.0, lam, 1e-6 * max(1.0, args.size / 256.0), 10_000)
    rows.append(
        (
            "bregman_loop",
            _time(kernels.bregman_loop_numpy, *loop_args, repeats=args.repeats),
            _time(kernels.bregman_loop, *loop_args, repeats=args.repeats)
            if kernels.HAS_NUMBA
            else None,
        )
    )

    print(f"backend={kernels.BACKEND} numba_available={kernels.HAS_NUMBA} "
          f"size={args.size} repeats={args.repeats}")
    print(f"{'kernel':<16}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, t_np, t_nb in rows:
        if t_nb is None:
            print(f"{name:<16}{t_np * 1e3:>12.3f}{'n/a':>12}{'n/a':>10}")
        else:
            print(f"{name:<16}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}"
                  f"{t_np / t_nb:>10.2f}x")


if __name__ == "__main__":
    main()
