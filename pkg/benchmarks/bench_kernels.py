"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--sizes 100 300 1000] [--repeat 3]

Prints the best-of-N wall time of each kernel on each backend and checks
that both backends return identical arrays.
"""

import argparse
import timeit

import numpy as np

from theta_lab import _kernels_py
from theta_lab.theta_graph import build_theta_graph

try:
    from theta_lab import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 300, 1000])
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled extension not built; run `pip install --no-build-isolation -e .` first")

    print(f"{'kernel':<12} {'n':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}  same")
    for n in args.sizes:
        xy = np.random.default_rng(n).random((n, 2))
        xs, ys = xy[:, 0].copy(), xy[:, 1].copy()
        same = np.array_equal(_kernels_py.cone_targets(xs, ys, args.k), _ckernels.cone_targets(xs, ys, args.k))
        tp = best(lambda: _kernels_py.cone_targets(xs, ys, args.k), args.repeat)
        tc = best(lambda: _ckernels.cone_targets(xs, ys, args.k), args.repeat)
        print(f"{'cone_targets':<12} {n:>6} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x  {same}")

        csr = build_theta_graph(xy, args.k, validate=False).csr()
        dp, pp = _kernels_py.all_pairs(*csr)
        dc, pc = _ckernels.all_pairs(*csr)
        same = np.array_equal(dp, dc) and np.array_equal(pp, pc)
        tp = best(lambda: _kernels_py.all_pairs(*csr), args.repeat)
        tc = best(lambda: _ckernels.all_pairs(*csr), args.repeat)
        print(f"{'all_pairs':<12} {n:>6} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x  {same}")


if __name__ == "__main__":
    main()
