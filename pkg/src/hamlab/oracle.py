"""Brute-force ground truth for Hamiltonicity questions.

Plain backtracking over simple paths with a visited bitmask; neighbors are
always tried in ascending label order so witnesses are deterministic.  This
module shares no code with the layered or state-set constructions.

A held-karp style subset DP (:func:`dp_has_circuit`) is provided as a second,
code-independent cross-check.
"""
from __future__ import annotations

from hamlab._backend import oracle_kernels
from hamlab.graph import Graph

__all__ = [
    "OracleBudgetExhausted",
    "DEFAULT_ORACLE_CAP",
    "oracle_has_circuit",
    "oracle_count_circuits",
    "oracle_level_sets",
    "oracle_avoidance",
    "dp_has_circuit",
]

DEFAULT_ORACLE_CAP = 10


class OracleBudgetExhausted(RuntimeError):
    """The backtracking search hit its step budget before deciding."""


def _check_start(g: Graph, start: int) -> None:
    if not 0 <= start < g.n:
        raise ValueError(f"start vertex {start} not in [0, {g.n})")


def oracle_has_circuit(g: Graph, start: int = 0, max_steps: int | None = None) -> list[int] | None:
    """Lexicographically smallest Hamiltonian circuit from ``start``, or None.

    Raises :class:`OracleBudgetExhausted` when ``max_steps`` extension attempts
    are spent without a decision.
    """
    _check_start(g, start)
    status, circuit = oracle_kernels(g.n).first_circuit(list(g.masks), g.n, start, -1 if max_steps is None else max_steps)
    if status < 0:
        raise OracleBudgetExhausted(f"no decision within {max_steps} steps")
    return circuit


def oracle_count_circuits(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Number of distinct undirected Hamiltonian cycles."""
    if g.n > cap:
        raise ValueError(f"n={g.n} exceeds oracle cap {cap}")
    return oracle_kernels(g.n).count_circuits(list(g.masks), g.n)


def oracle_level_sets(g: Graph, start: int = 0, cap: int = DEFAULT_ORACLE_CAP) -> list[frozenset[int]]:
    """Per length i in 0..n-1, the endpoints of simple paths of exactly i edges from ``start``."""
    _check_start(g, start)
    if g.n > cap:
        raise ValueError(f"n={g.n} exceeds oracle cap {cap}")
    masks = oracle_kernels(g.n).reach_levels(list(g.masks), g.n, start)
    return [frozenset(w for w in range(g.n) if m >> w & 1) for m in masks]


def oracle_avoidance(g: Graph, start: int, u: int, length: int, v: int) -> bool:
    """True iff some simple path of exactly ``length`` edges from ``start`` to ``u`` skips ``v``."""
    _check_start(g, start)
    if not 0 <= length < g.n:
        return False
    return bool(oracle_kernels(g.n).avoiding_path_exists(list(g.masks), g.n, start, u, length, v))


def dp_has_circuit(g: Graph) -> bool:
    """Subset DP: reach[S] holds the endpoints of paths from 0 covering exactly S."""
    n = g.n
    if n < 3:
        return False
    if n > 20:
        raise ValueError("subset DP limited to n <= 20")
    reach = [0] * (1 << n)
    reach[1] = 1
    for subset in range(1, 1 << n, 2):
        ends = reach[subset]
        if not ends:
            continue
        for u in range(n):
            if ends >> u & 1:
                for w in g.adjacency[u]:
                    if not subset >> w & 1:
                        reach[subset | 1 << w] |= 1 << w
    full = (1 << n) - 1
    return any(reach[full] >> u & 1 and g.has_edge(u, 0) for u in range(1, n))
