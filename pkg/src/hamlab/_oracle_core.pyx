# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled oracle kernels; same contracts as ``_oracle_py``, for n <= 64."""

from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    MAXN = 64

cdef inline int _load(list adj, int n, uint64_t* out) except -1:
    cdef int k
    if n > MAXN:
        raise ValueError("compiled kernel supports at most 64 vertices")
    for k in range(n):
        out[k] = <uint64_t>adj[k]
    return 0


def first_circuit(list adj, int n, int start, long long max_steps=-1):
    cdef uint64_t a[MAXN]
    cdef uint64_t cands[MAXN]
    cdef int path[MAXN]
    cdef uint64_t visited, cand
    cdef int depth, w
    cdef long long steps = 0
    if n < 3:
        return 0, None
    _load(adj, n, a)
    visited = (<uint64_t>1) << start
    path[0] = start
    depth = 0
    cands[0] = a[start] & ~visited
    while depth >= 0:
        cand = cands[depth]
        if cand == 0:
            visited &= ~((<uint64_t>1) << path[depth])
            depth -= 1
            continue
        w = __builtin_ctzll(cand)
        cands[depth] = cand & (cand - 1)
        steps += 1
        if max_steps >= 0 and steps > max_steps:
            return -1, None
        if depth + 1 == n - 1:
            if (a[w] >> start) & 1:
                return 1, [path[k] for k in range(depth + 1)] + [w]
            continue
        depth += 1
        path[depth] = w
        visited |= (<uint64_t>1) << w
        cands[depth] = a[w] & ~visited
    return 0, None


def count_circuits(list adj, int n):
    cdef uint64_t a[MAXN]
    cdef uint64_t cands[MAXN]
    cdef int path[MAXN]
    cdef uint64_t visited, cand
    cdef int depth, w
    cdef long long total = 0
    if n < 3:
        return 0
    _load(adj, n, a)
    visited = 1
    path[0] = 0
    depth = 0
    cands[0] = a[0] & ~visited
    while depth >= 0:
        cand = cands[depth]
        if cand == 0:
            visited &= ~((<uint64_t>1) << path[depth])
            depth -= 1
            continue
        w = __builtin_ctzll(cand)
        cands[depth] = cand & (cand - 1)
        if depth + 1 == n - 1:
            if (a[w] & 1) and path[1] < w:
                total += 1
            continue
        depth += 1
        path[depth] = w
        visited |= (<uint64_t>1) << w
        cands[depth] = a[w] & ~visited
    return total


def reach_levels(list adj, int n, int start):
    cdef uint64_t a[MAXN]
    cdef uint64_t cands[MAXN]
    cdef uint64_t lv[MAXN]
    cdef int path[MAXN]
    cdef uint64_t visited, cand
    cdef int depth, w, k
    _load(adj, n, a)
    for k in range(n):
        lv[k] = 0
    lv[0] = (<uint64_t>1) << start
    if n > 1:
        visited = (<uint64_t>1) << start
        path[0] = start
        depth = 0
        cands[0] = a[start] & ~visited
        while depth >= 0:
            cand = cands[depth]
            if cand == 0:
                visited &= ~((<uint64_t>1) << path[depth])
                depth -= 1
                continue
            w = __builtin_ctzll(cand)
            cands[depth] = cand & (cand - 1)
            lv[depth + 1] |= (<uint64_t>1) << w
            if depth + 2 < n:
                depth += 1
                path[depth] = w
                visited |= (<uint64_t>1) << w
                cands[depth] = a[w] & ~visited
    return [int(lv[k]) for k in range(n)]


def avoiding_path_exists(list adj, int n, int start, int u, int length, int v):
    cdef uint64_t a[MAXN]
    cdef uint64_t cands[MAXN]
    cdef int path[MAXN]
    cdef uint64_t visited, cand, ubit
    cdef int depth, w
    if v == start or v == u:
        return False
    if length == 0:
        return u == start
    _load(adj, n, a)
    ubit = (<uint64_t>1) << u
    visited = ((<uint64_t>1) << start) | ((<uint64_t>1) << v)
    path[0] = start
    depth = 0
    cands[0] = a[start] & ~visited
    while depth >= 0:
        cand = cands[depth]
        if depth + 1 == length:
            if cand & ubit:
                return True
            cand = 0
        if cand == 0:
            if depth > 0:
                visited &= ~((<uint64_t>1) << path[depth])
            depth -= 1
            continue
        w = __builtin_ctzll(cand)
        cands[depth] = cand & (cand - 1)
        if w == u:
            continue
        depth += 1
        path[depth] = w
        visited |= (<uint64_t>1) << w
        cands[depth] = a[w] & ~visited
    return False
