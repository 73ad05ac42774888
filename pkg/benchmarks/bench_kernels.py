"""Time the compiled and pure-Python row-reduction kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--sizes 8 16 32] [--repeat 5]
"""

import argparse
import random
import timeit

from cartan_pentads import _rref_py

try:
    from cartan_pentads import _rref_ext
except ImportError:
    _rref_ext = None


def random_matrix(rng, nrows, ncols, bound=9, rank_deficit=0):
    rows = [[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows - rank_deficit)]
    for _ in range(rank_deficit):  # dependent rows exercise the zero-row path
        a, b = rng.sample(range(len(rows)), 2) if len(rows) > 1 else (0, 0)
        rows.append([x + 2 * y for x, y in zip(rows[a], rows[b])])
    return rows


def reduce_copy(fn, m, ncols):
    rows = [list(r) for r in m]
    return fn(rows, ncols), rows


def bench(fn, mats, ncols, repeat):
    def run():
        for m in mats:
            fn([list(r) for r in m], ncols)
    return min(timeit.repeat(run, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 24, 32])
    ap.add_argument("--count", type=int, default=20, help="matrices per size")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"{'size':>6} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in args.sizes:
        mats = [random_matrix(rng, n, n + 2, rank_deficit=n // 4) for _ in range(args.count)]
        ref = [reduce_copy(_rref_py.rref_int, m, n + 2) for m in mats]
        t_py = bench(_rref_py.rref_int, mats, n + 2, args.repeat)
        if _rref_ext is None:
            print(f"{n:>6} {t_py:>12.4f} {'n/a':>12} {'n/a':>8}")
            continue
        got = [reduce_copy(_rref_ext.rref_int, m, n + 2) for m in mats]
        assert got == ref, "backends disagree"
        t_cy = bench(_rref_ext.rref_int, mats, n + 2, args.repeat)
        print(f"{n:>6} {t_py:>12.4f} {t_cy:>12.4f} {t_py / t_cy:>7.2f}x")


if __name__ == "__main__":
    main()
