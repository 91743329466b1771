"""Hamiltonian cycle counting with the fastest kernel available.

The compiled kernel is used when it was built; setting
``MINIWEAVE_PURE_PYTHON=1`` forces the pure-Python one.
"""

from __future__ import annotations

import os

from . import _search

try:
    if os.environ.get("MINIWEAVE_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _csearch as _kernel

    BACKEND = "cython"
except ImportError:
    _kernel = _search
    BACKEND = "python"


def _run(kernel, g):
    offsets, targets = g.csr()
    return kernel.count_cycles(g.n, offsets, targets)


def enumerate_hamiltonian_cycles(g, backend=None) -> int:
    """Number of undirected Hamiltonian cycles of `g`.

    `backend` may be "python" or "cython" to pick a kernel explicitly.
    """
    return search_with_state(g, backend)[0]


def search_with_state(g, backend=None):
    """``(count, eff)`` where `eff` is the degree bookkeeping after unwinding."""
    if backend is None:
        kernel = _kernel
    elif backend == "python":
        kernel = _search
    elif backend == "cython":
        from . import _csearch as kernel
    else:
        raise ValueError(f"unknown backend {backend!r}")
    count, eff = _run(kernel, g)
    return count, list(eff)
