"""Compare the numba and numpy kernel backends on the workloads the tests use.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends are importable side by side (``*_nb`` / ``*_np``), so one process
times both; the numba functions are called once first so compilation is not
counted.
"""
import argparse
import time

import numpy as np

from qme import _kernels as k
from qme.arith import _grid_bits, hilbert_symbol_oracle


def oracle_workload(search, m, squares, pairs):
    return sum(search(c0, c1, m, squares) for c0, c1 in pairs)


def grid_workload(grid, bits, c):
    return int(grid(*bits, c).sum())


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(0)
    m = 47 ** 3
    squares = k.square_table_np(m)
    pairs = [tuple(int(x) for x in rng.integers(1, m, 2)) for _ in range(400)]
    vals = np.array([v for v in range(-500, 501) if v], dtype=np.int64)
    bits = _grid_bits(vals, 3) * 2  # same values on both axes

    cases = [
        ("square_table m=47^3", lambda f: f(m), k.square_table_np, k.square_table_nb),
        ("affine search x400 m=47^3", lambda f: oracle_workload(f, m, squares, pairs),
         k.affine_square_hit_np, k.affine_square_hit_nb),
        ("hilbert grid 1000x1000", lambda f: grid_workload(f, bits, 1),
         k.hilbert_grid_np, k.hilbert_grid_nb),
    ]
    print(f"active backend: {k.BACKEND}")
    print(f"{'workload':<28}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, run, f_np, f_nb in cases:
        run(f_nb)  # compile
        t_np = best_of(lambda: run(f_np), args.repeat)
        t_nb = best_of(lambda: run(f_nb), args.repeat)
        print(f"{name:<28}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x")

    hilbert_symbol_oracle(3, 7, 47)  # warm caches and compiled code
    t0 = time.perf_counter()
    for a in range(-50, 51):
        if a:
            hilbert_symbol_oracle(a, 7, 47)
    print(f"end-to-end oracle, 100 symbols at p=47 ({k.BACKEND}): {time.perf_counter() - t0:.4f} s")


if __name__ == "__main__":
    main()
