"""Pure-Python backtracking kernels for the oracle.

Adjacency is passed as a list of neighbor bitmasks.  Every search visits
neighbors in ascending label order.  ``max_steps`` bounds the number of
extension attempts; ``-1`` means unbounded.  Functions with a budget return
``(status, value)`` with status 1 = found, 0 = none, -1 = budget exhausted.
"""


def _low_bit_index(mask):
    return (mask & -mask).bit_length() - 1


def first_circuit(adj, n, start, max_steps=-1):
    if n < 3:
        return 0, None
    path = [start]
    visited = 1 << start
    cands = [adj[start] & ~visited]
    steps = 0
    while cands:
        depth = len(path) - 1
        cand = cands[depth]
        if not cand:
            cands.pop()
            visited &= ~(1 << path.pop())
            continue
        w = _low_bit_index(cand)
        cands[depth] = cand & (cand - 1)
        steps += 1
        if 0 <= max_steps < steps:
            return -1, None
        if depth + 1 == n - 1:
            if adj[w] >> start & 1:
                return 1, path + [w]
            continue
        path.append(w)
        visited |= 1 << w
        cands.append(adj[w] & ~visited)
    return 0, None


def count_circuits(adj, n):
    """Count undirected Hamiltonian cycles: rooted at 0, second label < last label."""
    if n < 3:
        return 0
    total = 0

    def extend(u, visited, depth, second):
        nonlocal total
        cand = adj[u] & ~visited
        while cand:
            w = _low_bit_index(cand)
            cand &= cand - 1
            if depth == 0:
                extend(w, visited | 1 << w, 1, w)
            elif depth + 1 == n - 1:
                if adj[w] & 1 and second < w:
                    total += 1
            else:
                extend(w, visited | 1 << w, depth + 1, second)

    extend(0, 1, 0, -1)
    return total


def reach_levels(adj, n, start):
    """Bitmask of path endpoints for every length 0..n-1 (simple paths from start)."""
    levels = [0] * n
    levels[0] = 1 << start

    def extend(u, visited, depth):
        cand = adj[u] & ~visited
        while cand:
            w = _low_bit_index(cand)
            cand &= cand - 1
            levels[depth + 1] |= 1 << w
            if depth + 2 < n:
                extend(w, visited | 1 << w, depth + 1)

    if n > 1:
        extend(start, 1 << start, 0)
    return levels


def avoiding_path_exists(adj, n, start, u, length, v):
    if v == start or v == u:
        return False
    if length == 0:
        return u == start

    def extend(x, visited, depth):
        cand = adj[x] & ~visited
        if depth + 1 == length:
            return bool(cand >> u & 1)
        while cand:
            w = _low_bit_index(cand)
            cand &= cand - 1
            if w != u and extend(w, visited | 1 << w, depth + 1):
                return True
        return False

    return extend(start, (1 << start) | (1 << v), 0)
