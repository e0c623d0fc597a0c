"""Time the compiled Cayley-table kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from powergraph import _kernels_py
from powergraph import groups as grp

try:
    from powergraph import _kernels
except ImportError:  # extension not built
    _kernels = None

CASES = [
    ("Z512", lambda: grp.build_cyclic(512)),
    ("D400", lambda: grp.build_dihedral(200)),
    ("S5", lambda: grp.build_symmetric(5)),
    ("Z7^2:Z3", lambda: grp.build_frobenius_7_3(2)),
    ("Z2^9", lambda: grp.build_elementary_abelian(2, 9)),
]

KERNELS = [
    ("element_orders", lambda mod, t: mod.element_orders(t)),
    ("power_arcs", lambda mod, t: mod.power_arcs(t)),
    ("associativity", lambda mod, t: mod.associativity_witness(t, -1)),
]


def best_of(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not available; only the fallback can be timed")
    print(f"{'group':<10} {'kernel':<15} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, factory in CASES:
        table = np.ascontiguousarray(factory().table, dtype=np.int32)
        for name, call in KERNELS:
            py = best_of(lambda: call(_kernels_py, table), args.repeat)
            if _kernels is None:
                print(f"{label:<10} {name:<15} {py * 1e3:>10.2f} {'-':>10} {'-':>8}")
                continue
            cy = best_of(lambda: call(_kernels, table), args.repeat)
            assert np.array_equal(np.asarray(call(_kernels_py, table), dtype=object),
                                  np.asarray(call(_kernels, table), dtype=object))
            print(f"{label:<10} {name:<15} {py * 1e3:>10.2f} {cy * 1e3:>10.2f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
