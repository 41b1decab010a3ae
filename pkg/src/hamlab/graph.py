"""Simple undirected graphs: representation, edge-list I/O, named graphs and generators.

Vertices are dense integer labels ``0 .. n-1``.  Graph values are immutable
and safe to share between threads or processes.

Edge-list format::

    # optional comment lines
    n m
    u v        (m lines, 0 <= u, v < n, u != v)

Duplicate edges are collapsed; self-loops and out-of-range labels are errors.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "GraphParseError",
    "NAMED_GRAPHS",
    "parse_graph",
    "read_graph",
    "format_graph",
    "named_graph",
    "generate_erdos_renyi",
    "generate_planted_cycle",
    "enumerate_all_graphs",
    "is_circuit",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 6


class GraphParseError(ValueError):
    """Raised for malformed edge-list documents; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[frozenset[int], ...] = field(repr=False, compare=False)
    masks: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        canon = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has a label outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in canon:
            adj[u].add(v)
            adj[v].add(u)
        masks = tuple(sum(1 << w for w in nbrs) for nbrs in adj)
        return cls(n, frozenset(canon), tuple(frozenset(a) for a in adj), masks)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbors(self, u: int) -> list[int]:
        """Neighbors of ``u`` in ascending label order."""
        return sorted(self.adjacency[u])

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def remove_vertex(self, x: int) -> "Graph":
        """Delete ``x`` and relabel vertices above it down by one."""
        if not 0 <= x < self.n:
            raise ValueError(f"vertex {x} not in graph")

        def relabel(w: int) -> int:
            return w - 1 if w > x else w

        kept = [(relabel(u), relabel(v)) for u, v in self.edges if x not in (u, v)]
        return Graph.from_edges(self.n - 1, kept)

    def remove_edge(self, u: int, v: int) -> "Graph":
        key = (u, v) if u < v else (v, u)
        if key not in self.edges:
            raise ValueError(f"edge {key} not in graph")
        return Graph.from_edges(self.n, self.edges - {key})

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        return cls.from_edges(data["n"], [tuple(e) for e in data["edges"]])


def is_circuit(g: Graph, seq: Sequence[int], start: int | None = None) -> bool:
    """Check that ``seq`` lists a Hamiltonian circuit of ``g``.

    The sequence holds each vertex once; the closing edge back to ``seq[0]``
    is implied.  Graphs with fewer than three vertices have no circuits.
    """
    if g.n < 3 or len(seq) != g.n:
        return False
    if start is not None and seq[0] != start:
        return False
    if sorted(seq) != list(range(g.n)):
        return False
    return all(g.has_edge(seq[k], seq[(k + 1) % g.n]) for k in range(g.n))


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document (LF or CRLF, ``#`` comments, blank lines skipped)."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise GraphParseError(1, "empty document, expected header 'n m'")

    head_line, head = rows[0]
    n, m = _ints(head_line, head, "header 'n m'")
    if n < 1:
        raise GraphParseError(head_line, f"vertex count must be positive, got {n}")
    if m < 0:
        raise GraphParseError(head_line, f"edge count must be non-negative, got {m}")
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else head_line)
        raise GraphParseError(where, f"header announces {m} edges, found {len(body)}")

    edges = []
    for lineno, parts in body:
        u, v = _ints(lineno, parts, "edge 'u v'")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(lineno, f"label out of range [0, {n}): {u} {v}")
        if u == v:
            raise GraphParseError(lineno, f"self-loop at vertex {u}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def _ints(lineno: int, parts: list[str], what: str) -> tuple[int, int]:
    if len(parts) != 2:
        raise GraphParseError(lineno, f"expected {what}, got {' '.join(parts)!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphParseError(lineno, f"expected {what}, got {' '.join(parts)!r}") from None


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_graph(fh.read())


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# -- named graphs ---------------------------------------------------------

def _complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def _path(n: int) -> Graph:
    return Graph.from_edges(n, [(k, k + 1) for k in range(n - 1)])


def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(k, (k + 1) % n) for k in range(n)])


def _petersen() -> Graph:
    # Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
    subsets = list(combinations(range(5), 2))
    edges = [
        (a, b)
        for a, b in combinations(range(len(subsets)), 2)
        if not set(subsets[a]) & set(subsets[b])
    ]
    return Graph.from_edges(len(subsets), edges)


def _cube() -> Graph:
    return Graph.from_edges(8, [(x, x ^ (1 << b)) for x in range(8) for b in range(3)])


def _complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(x, a + y) for x in range(a) for y in range(b)])


NAMED_GRAPHS = {
    "k3": lambda: _complete(3),
    "k4": lambda: _complete(4),
    "k5": lambda: _complete(5),
    "k6": lambda: _complete(6),
    "k9": lambda: _complete(9),
    "p3": lambda: _path(3),
    "p4": lambda: _path(4),
    "c5": lambda: _cycle(5),
    "c6": lambda: _cycle(6),
    "star": lambda: _complete_bipartite(1, 3),
    "k1_3": lambda: _complete_bipartite(1, 3),
    "k2_3": lambda: _complete_bipartite(2, 3),
    "cube": _cube,
    "petersen": _petersen,
}

_FAMILY = re.compile(r"^([kpc])(\d+)$")


def named_graph(name: str) -> Graph:
    """Build a graph from the catalog in ``NAMED_GRAPHS``.

    Besides the fixed entries, ``k<N>``, ``p<N>`` and ``c<N>`` build complete
    graphs, paths and cycles of any size.
    """
    key = name.strip().lower()
    if key in NAMED_GRAPHS:
        return NAMED_GRAPHS[key]()
    match = _FAMILY.match(key)
    if match and int(match.group(2)) >= 1:
        size = int(match.group(2))
        return {"k": _complete, "p": _path, "c": _cycle}[match.group(1)](size)
    catalog = ", ".join(sorted(NAMED_GRAPHS)) + ", k<N>, p<N>, c<N>"
    raise ValueError(f"unknown graph name {name!r}; known: {catalog}")


# -- generators -----------------------------------------------------------
#
# Randomness comes from random.Random(seed) (Mersenne Twister, whose output
# for a given integer seed is fixed across platforms and Python versions).
# Pairs are visited in lexicographic order (0,1), (0,2), ..., (n-2,n-1) and
# each consumes exactly one rng.random() draw; a pair is kept iff draw < p.

def generate_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    return Graph.from_edges(n, [pair for pair in combinations(range(n), 2) if rng.random() < p])


def generate_planted_cycle(n: int, extra_p: float, seed: int) -> Graph:
    """Cycle 0-1-...-(n-1)-0 plus each other pair with probability ``extra_p``.

    Only non-cycle pairs consume draws, in lexicographic order.
    """
    if n < 3:
        raise ValueError(f"planted cycle needs n >= 3, got {n}")
    if not 0.0 <= extra_p <= 1.0:
        raise ValueError(f"extra_p must lie in [0, 1], got {extra_p}")
    rng = random.Random(seed)
    cycle = {(k, k + 1) for k in range(n - 1)} | {(0, n - 1)}
    extra = [pair for pair in combinations(range(n), 2) if pair not in cycle and rng.random() < extra_p]
    return Graph.from_edges(n, sorted(cycle) + extra)


def enumerate_all_graphs(n: int, cap: int = DEFAULT_ENUMERATION_CAP, override: bool = False) -> Iterator[Graph]:
    """Yield every labeled simple graph on ``n`` vertices in ascending edge-bitmask order.

    Bit ``k`` of the mask selects the ``k``-th pair in lexicographic order.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap and not override:
        raise ValueError(f"n={n} exceeds enumeration cap {cap}; pass override=True to force")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])
