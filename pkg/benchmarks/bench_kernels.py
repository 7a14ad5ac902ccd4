"""Compare the compiled and numpy kernel backends on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from pmaxclass import kernels
from pmaxclass.autos import automorphism_set
from pmaxclass.catalogue import construct, family
from pmaxclass.invariants import all_subgroups, normal_subgroups


def _fresh(desc):
    # new group each run so cached results do not leak between backends
    return construct(desc)


WORKLOADS = [
    ("associativity check, order 512", lambda: family("dihedral", m=9),
     lambda G: kernels.find_nonassociative(G.table)),
    ("element orders, order 3125", lambda: family("cyclotomic_maxclass", p=5, n=5),
     lambda G: kernels.element_orders(G.table)),
    ("conjugacy classes, order 3125", lambda: family("cyclotomic_maxclass", p=5, n=5),
     lambda G: kernels.conjugacy_class_ids(G.table, G.inv)),
    ("normal subgroups of C2^6", lambda: family("elementary_abelian", p=2, k=6), normal_subgroups),
    ("subgroup lattice, order 243", lambda: family("cyclotomic_maxclass", p=3, n=5), all_subgroups),
    ("automorphisms, order 243", lambda: family("cyclotomic_maxclass", p=3, n=5), automorphism_set),
]


def run(repeat: int) -> list[tuple[str, dict[str, float]]]:
    rows = []
    for name, desc, work in WORKLOADS:
        timings = {}
        for backend in kernels.BACKENDS:
            best = float("inf")
            with kernels.backend(backend):
                for _ in range(repeat):
                    G = _fresh(desc())
                    start = time.perf_counter()
                    work(G)
                    best = min(best, time.perf_counter() - start)
            timings[backend] = best
        rows.append((name, timings))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = list(kernels.BACKENDS)
    print(f"{'workload':34}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, t in run(args.repeat):
        line = f"{name:34}" + "".join(f"{t[b]:11.4f}s" for b in backends)
        if "cython" in t:
            line += f"{t['python'] / t['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
