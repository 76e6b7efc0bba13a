"""Compare the numba and numpy GF(2) elimination kernels.

    python benchmarks/bench_gf2.py --rows 400 --cols 4096 --repeat 5
"""

import argparse
import time

import numpy as np

from orthinv.gf2 import _kernels
from orthinv.quadratic import QuadraticSpace
from orthinv.solver import MultilinearColumns, constraint_matrix
from orthinv.group import generator_family


def random_rows(rng, nrows, ncols):
    words = (ncols + 63) // 64
    rows = rng.integers(0, 2**63, size=(nrows, words), dtype=np.uint64)
    if ncols % 64:
        rows[:, -1] &= np.uint64((1 << (ncols % 64)) - 1)
    return rows


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench(label, rows, ncols, repeat):
    vec = rows[0] ^ rows[-1]
    results = {}
    for name, rref, reduce in [
        ("numpy", _kernels.rref_numpy, _kernels.reduce_numpy),
        ("numba", _kernels.rref_numba, _kernels.reduce_numba),
    ]:
        R, piv = rref(rows, ncols)  # warm-up (and JIT compile)
        results[name] = (best_of(lambda: rref(rows, ncols), repeat),
                         best_of(lambda: reduce(R, piv, vec), repeat), len(piv))
    (t_np, r_np, rank_np), (t_nb, r_nb, rank_nb) = results["numpy"], results["numba"]
    assert rank_np == rank_nb
    print(f"{label:<28} rank={rank_np:<5} rref numpy {t_np * 1e3:8.2f} ms  numba {t_nb * 1e3:8.2f} ms  "
          f"x{t_np / t_nb:5.1f} | reduce numpy {r_np * 1e6:7.1f} us  numba {r_nb * 1e6:7.1f} us")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=400)
    parser.add_argument("--cols", type=int, default=4096)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    bench(f"random {args.rows}x{args.cols}", random_rows(rng, args.rows, args.cols), args.cols, args.repeat)

    for n, m, group in [(3, 6, "SO"), (4, 6, "SO")]:
        space = QuadraticSpace(n)
        columns = MultilinearColumns(space, m)
        matrix = constraint_matrix(columns, generator_family(space, group, "two"))
        rows = np.unique(matrix.rows, axis=0)
        bench(f"constraints n={n} m={m} {group}", np.ascontiguousarray(rows), columns.ncols, args.repeat)


if __name__ == "__main__":
    main()
