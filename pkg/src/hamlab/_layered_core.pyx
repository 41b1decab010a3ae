# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled trie expansion; same contract as ``_layered_py.trie_expand`` for n <= 64."""

from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def trie_expand(const int64_t[:] parent, const int64_t[:] meaning, Py_ssize_t lo, Py_ssize_t hi,
                list adj, int start, Py_ssize_t cap):
    cdef Py_ssize_t n = len(adj)
    cdef uint64_t a[64]
    cdef uint64_t on_chain, cand, block_start
    cdef Py_ssize_t t, x, produced = 0
    cdef int w
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    for x in range(n):
        a[x] = <uint64_t>adj[x]
    block_start = ~((<uint64_t>1) << start)
    new_parent = []
    new_meaning = []
    for t in range(lo, hi):
        on_chain = 0
        x = t
        while x >= 0:
            on_chain |= (<uint64_t>1) << meaning[x]
            x = parent[x]
        cand = a[meaning[t]] & block_start & ~on_chain
        while cand:
            w = __builtin_ctzll(cand)
            cand &= cand - 1
            if produced >= cap:
                return new_parent, new_meaning, False
            new_parent.append(t)
            new_meaning.append(w)
            produced += 1
    return new_parent, new_meaning, True
