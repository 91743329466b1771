# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel; the same algorithm as the pure-Python `_search`."""

from libc.stdlib cimport calloc, free


cdef struct Ctx:
    int n
    int first
    int closers
    const int *off
    const int *tgt
    int *eff
    char *taken
    char *adj0


cdef long long extend(Ctx *c, int t, int length) noexcept nogil:
    cdef int i, j, w, v, forced = -1
    cdef int lo = c.off[t], hi = c.off[t + 1]
    cdef bint ok, closes
    cdef long long total = 0
    if length == c.n:
        return 1 if (c.adj0[t] and t > c.first) else 0
    for i in range(lo, hi):
        w = c.tgt[i]
        if not c.taken[w] and c.eff[w] == 2:
            if forced >= 0:
                return 0
            forced = w
    for i in range(lo, hi):
        v = c.tgt[i]
        if forced >= 0:
            if v != forced:
                continue
        if c.taken[v]:
            continue
        c.taken[v] = 1
        for j in range(lo, hi):
            c.eff[c.tgt[j]] -= 1
        ok = True
        for j in range(lo, hi):
            w = c.tgt[j]
            if not c.taken[w] and c.eff[w] < 2:
                ok = False
                break
        closes = c.adj0[v] and v > c.first
        if closes:
            c.closers -= 1
        if ok and (c.closers > 0 or closes):
            total += extend(c, v, length + 1)
        if closes:
            c.closers += 1
        for j in range(lo, hi):
            c.eff[c.tgt[j]] += 1
        c.taken[v] = 0
    return total


def count_cycles(int n, offsets, targets):
    cdef const int[::1] off = offsets
    cdef const int[::1] tgt = targets if len(targets) else None
    cdef Ctx c
    cdef int i, w, f
    cdef long long count = 0
    eff = [offsets[w + 1] - offsets[w] for w in range(n)]
    if n < 3:
        return 0, eff
    c.n = n
    c.off = &off[0]
    c.tgt = &tgt[0] if tgt is not None else NULL
    c.eff = <int *> calloc(n, sizeof(int))
    c.taken = <char *> calloc(n, sizeof(char))
    c.adj0 = <char *> calloc(n, sizeof(char))
    if c.eff == NULL or c.taken == NULL or c.adj0 == NULL:
        free(c.eff); free(c.taken); free(c.adj0)
        raise MemoryError()
    try:
        for w in range(n):
            c.eff[w] = off[w + 1] - off[w]
        for i in range(off[0], off[1]):
            c.adj0[tgt[i]] = 1
        c.taken[0] = 1
        with nogil:
            for i in range(off[0], off[1]):
                f = c.tgt[i]
                c.first = f
                c.taken[f] = 1
                c.closers = 0
                for w in range(off[0], off[1]):
                    if c.tgt[w] > f:
                        c.closers += 1
                if c.closers:
                    count += extend(&c, f, 2)
                c.taken[f] = 0
        eff = [c.eff[w] for w in range(n)]
    finally:
        free(c.eff); free(c.taken); free(c.adj0)
    return count, eff
