"""Compare the compiled and pure-Python kernels on the same random instances.

    python3 benchmarks/compare_kernels.py --n 256 1024 4096 --t 2 --d 2

Prints one row per (kernel, n) and the per-query speedup of the compiled
kernels when both are available.
"""
import argparse

from tdgraph import _backend
from tdgraph.bench import format_table, measure


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[256, 1024, 4096])
    ap.add_argument("--t", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--queries", type=int, default=2000)
    args = ap.parse_args(argv)

    kernels = _backend.available()
    rows = []
    for n in args.n:
        for kernel in kernels:
            rows.append(measure(n, args.t, args.d, seed=args.seed, queries=args.queries, backend=kernel))
    print(format_table(rows), end="")

    if "cython" not in kernels:
        print("\ncompiled kernels not built; only the pure-Python rows are shown")
        return 0
    print()
    by_key = {(r.kernel, r.n): r for r in rows}
    for n in args.n:
        py, cy = by_key["python", n], by_key["cython", n]
        print(f"n={n}: adj x{py.adj_ns / cy.adj_ns:.1f}, neighbor x{py.neighbor_ns / cy.neighbor_ns:.1f}, "
              f"build x{py.build_ms / cy.build_ms:.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
