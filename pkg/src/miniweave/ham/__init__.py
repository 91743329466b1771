"""The Hamiltonian-circuit example: graphs, counting kernels and the literate corpus."""

from .graph import Graph, complete_graph, cycle_graph, knight_graph, petersen_graph, random_graph
from .oracle import brute_force_cycles
from .search import BACKEND, enumerate_hamiltonian_cycles, search_with_state

__all__ = [
    "BACKEND",
    "Graph",
    "brute_force_cycles",
    "complete_graph",
    "cycle_graph",
    "enumerate_hamiltonian_cycles",
    "knight_graph",
    "petersen_graph",
    "random_graph",
    "search_with_state",
]
