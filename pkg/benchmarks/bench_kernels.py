"""Compare the compiled and numpy cover-set scans.

    python benchmarks/bench_kernels.py [--max-size 7] [--repeat 3]

Both paths must return identical masks; the script exits non-zero otherwise.
"""

import argparse
import sys
import time

import numpy as np

from ordfor import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-size", type=int, default=7)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; timing the numpy path only")
    else:
        _kernels.forest_masks(3, use_numba=True)  # compile outside the timings

    print(f"{'size':>4} {'masks':>12} {'forests':>8} {'numpy s':>9} {'numba s':>9} {'speedup':>8}")
    for size in range(2, args.max_size + 1):
        total = 1 << (size * (size - 1) // 2)
        t_np, a = best_of(lambda: _kernels.forest_masks(size, use_numba=False), args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb, b = best_of(lambda: _kernels.forest_masks(size, use_numba=True), args.repeat)
            if not np.array_equal(a, b):
                print(f"mismatch at size {size}")
                return 1
            print(f"{size:>4} {total:>12} {len(a):>8} {t_np:>9.4f} {t_nb:>9.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{size:>4} {total:>12} {len(a):>8} {t_np:>9.4f} {'-':>9} {'-':>8}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
