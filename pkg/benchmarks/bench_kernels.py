"""Compare the compiled and pure-Python kernels on the tree check of T_l.

    python3 benchmarks/bench_kernels.py [max_level]
"""

import sys
import timeit

from gzero import _kernels_py as py

try:
    from gzero import _kernels as cy
except ImportError:
    cy = None


def bench(mod, l, reps=3):
    def run():
        us, vs = mod.t_level_arrays(l)
        mod.union_find_scan(1 << l, us, vs)
    return min(timeit.repeat(run, number=1, repeat=reps))


def main(top=18):
    print(f"{'l':>3} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for l in range(10, top + 1, 2):
        tp = bench(py, l)
        if cy is None:
            print(f"{l:>3} {tp:>12.4f} {'n/a':>12}")
            continue
        tc = bench(cy, l)
        print(f"{l:>3} {tp:>12.4f} {tc:>12.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 18)
