"""Compare the numba and pure-numpy kernel backends.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is warmed up
once (numba compiles on first call), then timed as the best of ``--repeat``.
"""

import argparse
import time

import numpy as np

from wulff_tension import kernels

CASES = {
    "walk_green_box": [(0.8, 150), (0.95, 400)],
    "trapezoid_green": [(3, 1, 0.9, 256), (8, 8, 0.95, 1024)],
    "mc_chunk": [(1, 0, 0.5, np.uint64(1), 0, 1 << 16, False, 10**8),
                 (5, 5, 0.9, np.uint64(1), 0, 1 << 16, False, 10**8)],
}


def best_of(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return
    print(f"{'kernel':<18}{'case':<44}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, cases in CASES.items():
        for case in cases:
            t_np = best_of(kernels.NUMPY_KERNELS[name], case, args.repeat)
            t_nb = best_of(kernels.NUMBA_KERNELS[name], case, args.repeat)
            label = ",".join(str(c) for c in case[:4])
            print(f"{name:<18}{label:<44}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
