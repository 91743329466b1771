"""Compare the compiled and pure-Python Hamiltonian cycle kernels.

    python3 benchmarks/bench_hamiltonian.py [--repeat N]
"""

import argparse
import random
import timeit

from miniweave.ham import complete_graph, knight_graph, random_graph
from miniweave.ham.search import enumerate_hamiltonian_cycles

try:
    from miniweave.ham import _csearch  # noqa: F401

    BACKENDS = ("python", "cython")
except ImportError:
    BACKENDS = ("python",)


def workloads():
    rng = random.Random(7)
    return [
        ("knight 6x6", knight_graph(6, 6)),
        ("knight 5x6", knight_graph(5, 6)),
        ("K9", complete_graph(9)),
        ("G(14, 0.4)", random_graph(14, 0.4, rng)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'graph':<12} {'cycles':>8} " + " ".join(f"{b + ' s':>10}" for b in BACKENDS) + "  speedup")
    for name, g in workloads():
        counts = {b: enumerate_hamiltonian_cycles(g, backend=b) for b in BACKENDS}
        if len(set(counts.values())) != 1:
            raise SystemExit(f"backends disagree on {name}: {counts}")
        times = {
            b: min(timeit.repeat(lambda b=b: enumerate_hamiltonian_cycles(g, backend=b), number=1, repeat=args.repeat))
            for b in BACKENDS
        }
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else "       -"
        print(f"{name:<12} {counts[BACKENDS[0]]:>8} " + " ".join(f"{times[b]:>10.4f}" for b in BACKENDS) + " " + speed)


if __name__ == "__main__":
    main()
