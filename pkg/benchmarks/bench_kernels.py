"""Compare the compiled and numpy row-compression kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--heavy]

Times ``howell_rows`` on random sparse systems over Z/p^a and then a full
bar-resolution computation with each backend patched in.  ``--heavy`` adds
H^3(S4, Z/2), which takes over a minute on the numpy kernel.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from kumcoh import _modring, cohomology
from kumcoh.gmodule import standard_module, trivial_module
from kumcoh.symgroup import symmetric_group

try:
    from kumcoh._ckernels import howell_rows as compiled
except ImportError:
    compiled = None


def module_order(basis: np.ndarray, p: int, a: int) -> int:
    val, _ = _modring.ring_tables(p, a)
    out = 1
    for row in basis:
        lead = row[np.flatnonzero(row)[0]]
        out *= p ** (a - int(val[lead]))
    return out


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def random_system(rows: int, cols: int, p: int, a: int, rng: np.random.Generator) -> np.ndarray:
    A = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        idx = rng.choice(cols, size=4, replace=False)
        A[i, idx] = rng.integers(0, p**a, size=4)
    return A


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--heavy", action="store_true")
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the numpy kernel is available")
        return
    rng = np.random.default_rng(0)
    print(f"{'case':<34}{'numpy s':>10}{'cython s':>10}{'speedup':>9}  agree")
    for rows, cols, p, a in [(400, 120, 2, 2), (1500, 300, 2, 3), (1500, 300, 3, 2), (2000, 400, 5, 1)]:
        A = random_system(rows, cols, p, a, rng)
        ref = _modring.howell_rows(A, p, a)
        fast = compiled(A, p, a)
        agree = module_order(ref, p, a) == module_order(fast, p, a)
        t_py = best_of(lambda: _modring.howell_rows(A, p, a), args.repeat)
        t_c = best_of(lambda: compiled(A, p, a), args.repeat)
        label = f"random {rows}x{cols} mod {p}^{a}"
        print(f"{label:<34}{t_py:>10.3f}{t_c:>10.3f}{t_py / t_c:>9.1f}  {agree}", flush=True)

    cases = [("H^2(S4, Gamma mod 4)", standard_module(4, 4), 2),
             ("H^2(S4, Z/6)", trivial_module(symmetric_group(4), 6), 2),
             ("H^1(S5, Gamma mod 6)", standard_module(5, 6), 1)]
    if args.heavy:
        cases.append(("H^3(S4, Z/2)", trivial_module(symmetric_group(4), 2), 3))
    for name, M, k in cases:
        results = {}
        timings = {}
        for label, kernel in (("numpy", _modring.howell_rows), ("cython", compiled)):
            cohomology.howell_rows = kernel
            timings[label] = best_of(lambda: results.__setitem__(label, cohomology.h_k_bar(M, k).invariants),
                                     args.repeat)
        cohomology.howell_rows = compiled
        agree = results["numpy"] == results["cython"]
        print(f"{name:<34}{timings['numpy']:>10.3f}{timings['cython']:>10.3f}"
              f"{timings['numpy'] / timings['cython']:>9.1f}  {agree}", flush=True)


if __name__ == "__main__":
    main()
