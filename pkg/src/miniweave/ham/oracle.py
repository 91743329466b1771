"""Brute-force Hamiltonian cycle count, kept independent of the search kernels."""

from itertools import permutations

from ..errors import TooLarge

MAX_VERTICES = 10


def brute_force_cycles(g) -> int:
    if g.n > MAX_VERTICES:
        raise TooLarge(f"brute force is limited to {MAX_VERTICES} vertices, got {g.n}")
    if g.n < 3:
        return 0
    edges = {(u, v) for u in range(g.n) for v in g.adjacency[u]}
    found = 0
    for rest in permutations(range(1, g.n)):
        tour = (0,) + rest + (0,)
        if all((tour[i], tour[i + 1]) in edges for i in range(g.n)):
            found += 1
    return found // 2
