"""Undirected graphs stored as paired arcs."""

from __future__ import annotations

from array import array
from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class Graph:
    n: int
    names: tuple
    adjacency: tuple  # adjacency[u] = targets of u's arcs, in arc order

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        if len(self.names) != self.n or len(self.adjacency) != self.n:
            raise ValueError("names and adjacency must have one entry per vertex")
        arcs = Counter()
        for u, targets in enumerate(self.adjacency):
            for v in targets:
                if not 0 <= v < self.n:
                    raise ValueError(f"arc {u}->{v} leaves the graph")
                if v == u:
                    raise ValueError(f"self-loop at vertex {u}")
                arcs[u, v] += 1
        for (u, v), k in arcs.items():
            if arcs[v, u] != k:
                raise ValueError(f"arcs {u}->{v} and {v}->{u} are not paired")

    @classmethod
    def from_edges(cls, n, edges, names=None):
        adj = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        return cls(n, names, tuple(tuple(a) for a in adj))

    def edges(self):
        """Distinct undirected edges as sorted pairs."""
        return sorted({(min(u, v), max(u, v)) for u, ts in enumerate(self.adjacency) for v in ts})

    def has_edge(self, u, v):
        return v in self.adjacency[u]

    def csr(self):
        """Compressed rows of distinct neighbours: (offsets, targets) int arrays."""
        offsets = array("i", [0])
        targets = array("i")
        for ts in self.adjacency:
            targets.extend(dict.fromkeys(ts))
            offsets.append(len(targets))
        return offsets, targets

    def relabel(self, perm):
        """The same graph with vertex u renamed perm[u]."""
        adj = [None] * self.n
        names = [None] * self.n
        for u in range(self.n):
            adj[perm[u]] = tuple(perm[v] for v in self.adjacency[u])
            names[perm[u]] = self.names[u]
        return Graph(self.n, tuple(names), tuple(adj))


KNIGHT_MOVES = ((1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2))


def knight_graph(rows, cols):
    if rows < 1 or cols < 1:
        raise ValueError("board dimensions must be positive")
    index = lambda r, c: r * cols + c  # noqa: E731
    adj = []
    names = []
    for r in range(rows):
        for c in range(cols):
            names.append(f"{r},{c}")
            adj.append(tuple(
                index(r + dr, c + dc)
                for dr, dc in KNIGHT_MOVES
                if 0 <= r + dr < rows and 0 <= c + dc < cols
            ))
    return Graph(rows * cols, tuple(names), tuple(adj))


def complete_graph(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n):
    return Graph.from_edges(n, [(u, (u + 1) % n) for u in range(n)] if n >= 3 else [])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_graph(n, p, rng):
    """G(n, p) using a `random.Random`-like generator."""
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
