"""Throughput comparison: compiled vs pure-numpy steady-state kernel.

The batched 9x9 trace-constrained solve is the hot inner loop of
response-table construction and of per-pixel verification solves.  Run:

    python benchmarks/bench_kernels.py [N]
"""

import sys
import time

import numpy as np

from eitlens import LevelScheme
from eitlens import _kernels, _kernels_py
from eitlens._kernels import parts_for
from eitlens.levels import GAMMA_E_D2 as GE


def time_solver(solver, xp, xc, parts, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = solver(xp, xc, *parts)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    rng = np.random.default_rng(1)
    xp = rng.uniform(0.0, 2.0, n)
    xc = rng.uniform(0.0, 3.0, n)
    levels = LevelScheme.with_ground_rydberg_width()
    parts = parts_for(levels, -0.28 * GE, 0.0)

    t_py, v_py = time_solver(_kernels_py.solve_steady_vec, xp, xc, parts)
    print(f"numpy fallback : {n / t_py:12.0f} solves/s  ({t_py * 1e3:8.1f} ms)")

    try:
        from eitlens import _steady_cy
    except ImportError:
        print("compiled kernel: not built (install with a C compiler present)")
        return
    t_cy, v_cy = time_solver(_steady_cy.solve_steady_vec, xp, xc, parts)
    print(f"compiled kernel: {n / t_cy:12.0f} solves/s  ({t_cy * 1e3:8.1f} ms)")
    print(f"speedup        : {t_py / t_cy:12.1f}x")
    print(f"max |dev|      : {np.abs(v_cy - v_py).max():12.3e}")
    print(f"active backend : {_kernels.BACKEND}")


if __name__ == "__main__":
    main()
