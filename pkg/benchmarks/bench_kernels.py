"""Benchmark the compiled canonicalization kernel against the pure fallback.

Times the two hot loops of the search pipeline over the full default quartic
3-fold family: canonical-form reduction of all 5-row subsets, and the
permutation-symmetry scan over the surviving class representatives.

Usage: python benchmarks/bench_kernels.py
"""

import time
from itertools import combinations

from ijobstruct._canon_py import canonical_form as canon_py
from ijobstruct._canon_py import row_set_symmetries as syms_py
from ijobstruct.search import default_family

try:
    from ijobstruct._canon import canonical_form as canon_cy
    from ijobstruct._canon import row_set_symmetries as syms_cy
except ImportError:
    canon_cy = syms_cy = None


def bench_canonical(fn, subsets):
    start = time.perf_counter()
    seen = set()
    for rows in subsets:
        seen.add(fn(rows))
    return time.perf_counter() - start, len(seen)


def bench_symmetries(fn, matrices):
    start = time.perf_counter()
    total = 0
    for rows in matrices:
        total += len(fn(rows))
    return time.perf_counter() - start, total


def main():
    family = default_family(4, 4)
    subsets = list(combinations(family, 5))
    print("family rows: %d, 5-subsets: %d" % (len(family), len(subsets)))

    results = {}
    t_py, classes = bench_canonical(canon_py, subsets)
    results["canonical python"] = (t_py, "%d classes" % classes)
    if canon_cy is not None:
        t_cy, classes_cy = bench_canonical(canon_cy, subsets)
        assert classes_cy == classes
        results["canonical cython"] = (t_cy, "%d classes" % classes)

    reps = sorted({canon_py(rows) for rows in subsets})
    t_py_s, total = bench_symmetries(syms_py, reps)
    results["symmetries python"] = (t_py_s, "%d perms found" % total)
    if syms_cy is not None:
        t_cy_s, total_cy = bench_symmetries(syms_cy, reps)
        assert total_cy == total
        results["symmetries cython"] = (t_cy_s, "%d perms found" % total)

    width = max(len(k) for k in results)
    print()
    for name, (seconds, note) in results.items():
        print("%-*s  %8.3f s   %s" % (width, name, seconds, note))
    if canon_cy is not None:
        print()
        print(
            "speedup: canonical x%.1f, symmetries x%.1f"
            % (
                results["canonical python"][0] / results["canonical cython"][0],
                results["symmetries python"][0] / results["symmetries cython"][0],
            )
        )
    else:
        print("\ncompiled kernel not built; only the pure backend was timed")


if __name__ == "__main__":
    main()
