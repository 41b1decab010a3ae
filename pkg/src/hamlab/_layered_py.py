"""Pure-Python kernel for growing the path trie by one level.

For a trie every node has one ancestor chain, so removing the nodes whose
meaning is ``v`` from the ancestor cut of ``u`` disconnects ``u`` from the
root exactly when ``v`` occurs on that chain.  The kernel collects the chain
meanings once per ``u`` and tests each candidate ``v`` against them.
"""


def trie_expand(parent, meaning, lo, hi, adj, start, cap):
    """Children of the level occupying tags ``lo .. hi-1``.

    Returns ``(parents, meanings, complete)``; ``complete`` is False when more
    than ``cap`` children would be produced (the lists are then truncated).
    """
    new_parent = []
    new_meaning = []
    block_start = ~(1 << start)
    for t in range(lo, hi):
        on_chain = 0
        x = t
        while x >= 0:
            on_chain |= 1 << meaning[x]
            x = parent[x]
        cand = adj[meaning[t]] & block_start
        while cand:
            low = cand & -cand
            cand ^= low
            if on_chain & low:
                continue
            if len(new_parent) >= cap:
                return new_parent, new_meaning, False
            new_parent.append(t)
            new_meaning.append(low.bit_length() - 1)
    return new_parent, new_meaning, True
