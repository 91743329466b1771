"""Pure-Python backtracking kernel for counting Hamiltonian cycles.

Works on compressed rows of distinct neighbours.  The cycle is rooted at
vertex 0 and oriented so that 0's first neighbour on the cycle has a
smaller index than its last one, so each undirected cycle is found once.

``eff[w]`` counts the neighbours of w still usable by a cycle through w:
untaken vertices, the root, and the current end of the path.  A vertex
left with fewer than two kills the branch; a vertex with exactly two
must be visited next.
"""

import sys


def count_cycles(n, offsets, targets):
    """Return ``(count, eff)``; `eff` is the final bookkeeping array, which
    must equal the vertex degrees again once the search has unwound."""
    eff = [offsets[w + 1] - offsets[w] for w in range(n)]
    if n < 3:
        return 0, eff
    nbrs = [list(targets[offsets[w]:offsets[w + 1]]) for w in range(n)]
    taken = [False] * n
    adj0 = [False] * n
    for w in nbrs[0]:
        adj0[w] = True
    taken[0] = True
    first = 0
    closers = 0

    def extend(t, length):
        nonlocal closers
        if length == n:
            return 1 if adj0[t] and t > first else 0
        forced = -1
        for w in nbrs[t]:
            if not taken[w] and eff[w] == 2:
                if forced >= 0:
                    return 0
                forced = w
        total = 0
        for v in (forced,) if forced >= 0 else nbrs[t]:
            if taken[v]:
                continue
            taken[v] = True
            for w in nbrs[t]:
                eff[w] -= 1
            ok = True
            for w in nbrs[t]:
                if not taken[w] and eff[w] < 2:
                    ok = False
                    break
            closes = adj0[v] and v > first
            if closes:
                closers -= 1
            if ok and (closers > 0 or closes):
                total += extend(v, length + 1)
            if closes:
                closers += 1
            for w in nbrs[t]:
                eff[w] += 1
            taken[v] = False
        return total

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n + 100))
    try:
        count = 0
        for f in nbrs[0]:
            first = f
            taken[f] = True
            closers = sum(1 for c in nbrs[0] if c > f)
            if closers:
                count += extend(f, 2)
            taken[f] = False
    finally:
        sys.setrecursionlimit(limit)
    return count, eff
