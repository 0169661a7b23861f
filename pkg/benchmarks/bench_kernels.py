"""Compare the compiled and pure-Python selection scans.

    python benchmarks/bench_kernels.py [--repeat N]

Times the one-per-vertex scan (all selections, as used by the universal
polynomial) and the pruned scan (acyclic remainders only, as used by the
subset method) on a few graph shapes, and checks both backends agree.
"""

import argparse
import sys
import timeit

from corolla import kernels
from corolla.generators import fixture, random_graph


def cases():
    yield "K4", fixture("K4")
    yield "PRISM", fixture("PRISM")
    yield "ladder(4)", fixture("ladder(4)")
    yield "random v=10", random_graph(1, 10)
    yield "random v=12", random_graph(2, 12)


def one_per_vertex(G):
    return [[1 << h for h in hs] for hs in G.vertices]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best of N runs")
    args = ap.parse_args(argv)
    if not kernels.HAVE_EXTENSION:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'graph':14s} {'scan':8s} {'records':>8s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, G in cases():
        opts = one_per_vertex(G)
        for label, acyclic in (("all", False), ("acyclic", True)):
            py = kernels.selection_scan(G, opts, acyclic, backend="python")
            cy = kernels.selection_scan(G, opts, acyclic, backend="cython")
            if sorted(py) != sorted(cy):
                print(f"{name}: backends disagree", file=sys.stderr)
                return 2
            t_py = min(timeit.repeat(lambda: kernels.selection_scan(G, opts, acyclic, backend="python"),
                                     number=1, repeat=args.repeat))
            t_cy = min(timeit.repeat(lambda: kernels.selection_scan(G, opts, acyclic, backend="cython"),
                                     number=1, repeat=args.repeat))
            print(f"{name:14s} {label:8s} {len(py):8d} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
