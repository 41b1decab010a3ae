"""Exact layered construction: a multistage DAG holding every simple path from the start.

Each node carries a *meaning* (the graph vertex it stands for) and a *tag*
(its identity; tags are consecutive integers in creation order).  Level
``i`` holds the endpoints of stored paths with ``i`` edges.  Nodes are
stored as a prefix tree, so the sub-DAG of a node's ancestors is the chain
back to the root.

A child with meaning ``v`` is added under node ``u`` only when ``v`` is not
*necessary* for ``u``: after cutting out ``u``'s ancestors and deleting the
nodes that stand for ``v``, some root-to-``u`` path must survive.  The start
vertex never re-enters; closing the circuit is an adjacency test on the last
level.
"""
from __future__ import annotations

import os
import time
from array import array
from dataclasses import dataclass, field

from hamlab._backend import layered_kernels
from hamlab.graph import Graph, is_circuit

__all__ = [
    "BudgetExhausted",
    "Budget",
    "LayeredDag",
    "Decision",
    "exact_build",
    "exact_extend_level",
    "exact_necessary",
    "exact_decide",
]

DEFAULT_NODE_CAP = 10_000_000
DEFAULT_TIME_CAP = 60.0


@dataclass(frozen=True)
class Budget:
    """Caps on total trie nodes and wall-clock seconds for one build."""

    max_nodes: int = DEFAULT_NODE_CAP
    max_seconds: float = DEFAULT_TIME_CAP

    @classmethod
    def from_env(cls) -> "Budget":
        """Read ``HAMLAB_EXACT_NODE_CAP`` / ``HAMLAB_EXACT_TIME_CAP`` overrides."""
        nodes = os.environ.get("HAMLAB_EXACT_NODE_CAP")
        seconds = os.environ.get("HAMLAB_EXACT_TIME_CAP")
        return cls(
            max_nodes=int(nodes) if nodes else DEFAULT_NODE_CAP,
            max_seconds=float(seconds) if seconds else DEFAULT_TIME_CAP,
        )

    def to_dict(self) -> dict:
        return {"max_nodes": self.max_nodes, "max_seconds": self.max_seconds}


class BudgetExhausted(RuntimeError):
    def __init__(self, reason: str, stats: dict):
        super().__init__(f"exact construction budget exhausted: {reason}")
        self.reason = reason
        self.stats = stats


class LayeredDag:
    """Prefix tree of simple paths, stored column-wise.

    ``parent[t]`` and ``meaning[t]`` describe the node with tag ``t``; the
    root has parent -1.  Level ``i`` occupies tags ``bounds[i] .. bounds[i+1]-1``.
    """

    def __init__(self, n: int, start: int):
        if not 0 <= start < n:
            raise ValueError(f"start vertex {start} not in [0, {n})")
        self.n = n
        self.start = start
        self.parent = array("q", [-1])
        self.meaning = array("q", [start])
        self.bounds = [0, 1]

    @property
    def depth(self) -> int:
        """Index of the last materialized level."""
        return len(self.bounds) - 2

    @property
    def size(self) -> int:
        return len(self.meaning)

    def level(self, i: int) -> range:
        return range(self.bounds[i], self.bounds[i + 1])

    def level_of(self, tag: int) -> int:
        for i in range(len(self.bounds) - 1):
            if tag < self.bounds[i + 1]:
                return i
        raise IndexError(tag)

    def parents_of(self, tag: int) -> tuple[int, ...]:
        p = self.parent[tag]
        return () if p < 0 else (p,)

    def arcs(self):
        return ((self.parent[t], t) for t in range(1, self.size))

    def path_to(self, tag: int) -> list[int]:
        out = []
        while tag >= 0:
            out.append(self.meaning[tag])
            tag = self.parent[tag]
        return out[::-1]

    def level_meanings(self) -> list[frozenset[int]]:
        return [frozenset(self.meaning[t] for t in self.level(i)) for i in range(self.depth + 1)]

    def level_sizes(self) -> list[int]:
        return [self.bounds[i + 1] - self.bounds[i] for i in range(self.depth + 1)]

    def append_level(self, parents, meanings) -> None:
        self.parent.extend(parents)
        self.meaning.extend(meanings)
        self.bounds.append(len(self.meaning))

    def dump(self) -> str:
        """One node per line: ``level tag meaning parent-tags`` (``-`` for the root)."""
        lines = []
        for i in range(self.depth + 1):
            for t in self.level(i):
                parents = ",".join(map(str, self.parents_of(t))) or "-"
                lines.append(f"{i} {t} {self.meaning[t]} {parents}")
        return "\n".join(lines) + "\n"


def exact_necessary(dag: LayeredDag, u: int, v: int) -> bool:
    """Is vertex ``v`` necessary on the stored paths from the root to node ``u``?

    Works on the generic DAG view: take the ancestor cut of ``u`` (every node
    on some root-to-``u`` path), delete the nodes meaning ``v``, then ask
    whether the root still reaches ``u``.
    """
    ancestors = {u}
    frontier = [u]
    while frontier:
        for p in dag.parents_of(frontier.pop()):
            if p not in ancestors:
                ancestors.add(p)
                frontier.append(p)
    survivors = {t for t in ancestors if dag.meaning[t] != v}
    if u not in survivors or 0 not in survivors:
        return True
    seen = {u}
    frontier = [u]
    while frontier:
        for p in dag.parents_of(frontier.pop()):
            if p == 0:
                return False
            if p in survivors and p not in seen:
                seen.add(p)
                frontier.append(p)
    return u != 0


def _level_stats(dag: LayeredDag, started: float) -> dict:
    sizes = dag.level_sizes()
    return {
        "nodes_per_level": sizes,
        "arcs_per_level": [0] + sizes[1:],
        "total_nodes": dag.size,
        "elapsed": time.perf_counter() - started,
    }


def exact_extend_level(dag: LayeredDag, g: Graph, budget: Budget | None = None, *, literal: bool = False,
                       _started: float | None = None) -> LayeredDag:
    """Add level ``depth+1`` in place and return ``dag``.

    ``literal=True`` runs :func:`exact_necessary` for every (node, neighbor)
    pair; the default uses the trie kernel, which computes the same test.
    """
    budget = budget or Budget()
    started = time.perf_counter() if _started is None else _started
    room = budget.max_nodes - dag.size
    lo, hi = dag.bounds[-2], dag.bounds[-1]
    if literal:
        parents, meanings, complete = [], [], True
        for u in range(lo, hi):
            for v in g.neighbors(dag.meaning[u]):
                if v == dag.start or exact_necessary(dag, u, v):
                    continue
                if len(parents) >= room:
                    complete = False
                    break
                parents.append(u)
                meanings.append(v)
            if not complete:
                break
            if time.perf_counter() - started > budget.max_seconds:
                raise BudgetExhausted("time", _level_stats(dag, started))
    else:
        parents, meanings, complete = layered_kernels(g.n).trie_expand(
            dag.parent, dag.meaning, lo, hi, list(g.masks), dag.start, max(room, 0)
        )
    if not complete:
        raise BudgetExhausted("nodes", _level_stats(dag, started))
    dag.append_level(parents, meanings)
    if time.perf_counter() - started > budget.max_seconds:
        raise BudgetExhausted("time", _level_stats(dag, started))
    return dag


def exact_build(g: Graph, start: int = 0, budget: Budget | None = None, *, literal: bool = False) -> LayeredDag:
    """Levels 0..n-1 of the path trie; stops early once a level comes out empty."""
    started = time.perf_counter()
    dag = LayeredDag(g.n, start)
    while dag.depth < g.n - 1 and dag.bounds[-1] > dag.bounds[-2]:
        exact_extend_level(dag, g, budget, literal=literal, _started=started)
    return dag


@dataclass
class Decision:
    has_circuit: bool
    level_sets: list[frozenset[int]]
    witness: list[int] | None = None
    stats: dict = field(default_factory=dict)


def exact_decide(g: Graph, start: int = 0, budget: Budget | None = None, *, literal: bool = False) -> Decision:
    started = time.perf_counter()
    dag = exact_build(g, start, budget, literal=literal)
    level_sets = dag.level_meanings()
    level_sets += [frozenset()] * (g.n - len(level_sets))
    witness = None
    if g.n >= 3 and dag.depth == g.n - 1:
        for t in dag.level(g.n - 1):
            if g.has_edge(dag.meaning[t], start):
                witness = dag.path_to(t)
                break
    if witness is not None and not is_circuit(g, witness, start):
        raise AssertionError(f"exact witness {witness} failed validation")
    stats = _level_stats(dag, started)
    return Decision(witness is not None, level_sets, witness, stats)
