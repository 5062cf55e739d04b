"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel and input size with the best wall time (seconds) of each
backend and the speedup.  Without the compiled extension only the fallback
column is filled.
"""
import argparse
import timeit

import numpy as np

from f2c import _kernels_py as py
from f2c.catalog import get_group

try:
    from f2c import _kernels as cy
except ImportError:
    cy = None


def cases():
    rng = np.random.default_rng(0)
    for name, n in [("S3", 3), ("D4", 4), ("A4", 3), ("Z2xZ2xZ2", 4)]:
        G = get_group(name)
        signs = np.ones(G.order, dtype=np.int64)
        vals = rng.integers(0, 12, size=G.order ** n).astype(np.int64)
        yield f"coboundary {name} n={n}", "coboundary", (G.table, signs, vals, n, 12)
    for name, n in [("S3", 2), ("D4", 2), ("Q8", 3)]:
        G = get_group(name)
        signs = np.ones(G.order, dtype=np.int64)
        yield f"differential_matrix {name} n={n}", "differential_matrix", (G.table, signs, G.identity, n)
    for size, N in [(40, 8), (120, 12), (300, 24)]:
        A = rng.integers(0, N, size=(size, size)).astype(np.int64)
        yield f"snf_mod {size}x{size} mod {N}", "snf_mod", (A, N)


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'case':36s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, kernel, inputs in cases():
        t_py = best(getattr(py, kernel), inputs, args.repeat)
        if cy is None:
            print(f"{label:36s} {t_py:10.4f} {'-':>10s} {'-':>8s}")
            continue
        t_cy = best(getattr(cy, kernel), inputs, args.repeat)
        print(f"{label:36s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
