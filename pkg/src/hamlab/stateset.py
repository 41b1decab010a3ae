"""State-set construction: the compressed, polynomial-size variant of the layered DAG.

All layered nodes with the same meaning on the same level are merged into a
single state-set node keyed ``(level, meaning)``, so a level holds at most
``n`` nodes.  Each node keeps

* ``rel``: the nodes lying on some root path to it (a bitset over node ids,
  the node itself and the root included);
* ``avoid``: the meanings ``w`` for which some root path to it in this
  structure skips every node meaning ``w`` (a bitset over vertices).

``relrel(p, anchor)`` is derived on demand: the transitions on root paths to
``anchor`` that pass through ``p``.  Materializing it for every node would
need on the order of n^5 bits.

The content is an over-approximation of the exact path store: every simple
path from the start is present, but merged nodes can also admit walks that
repeat a vertex.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from hamlab.graph import Graph, is_circuit

__all__ = [
    "StateSetDag",
    "FuzzyDecision",
    "FuzzyTimeout",
    "AvoidanceView",
    "fuzzy_init",
    "fuzzy_avoidance",
    "avoidance_view",
    "fuzzy_extend_level",
    "fuzzy_decide",
    "fuzzy_extract_candidate",
]

DEFAULT_TIME_CAP = 60.0


class FuzzyTimeout(RuntimeError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class StateSetDag:
    def __init__(self, n: int, start: int):
        if not 0 <= start < n:
            raise ValueError(f"start vertex {start} not in [0, {n})")
        self.n = n
        self.start = start
        self.levels: list[list[int]] = [[0]]
        self.level_of = [0]
        self.meaning = [start]
        self.index = {(0, start): 0}
        self.src: list[int] = []
        self.dst: list[int] = []
        self.incoming: list[list[int]] = [[]]
        self.rel = [1]
        self.avoid = [((1 << n) - 1) & ~(1 << start)]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def node_count(self) -> int:
        return len(self.meaning)

    @property
    def transition_count(self) -> int:
        return len(self.src)

    def key(self, node: int) -> tuple[int, int]:
        return self.level_of[node], self.meaning[node]

    def node(self, level: int, meaning: int) -> int:
        return self.index[(level, meaning)]

    def rel_keys(self, node: int) -> set[tuple[int, int]]:
        return {self.key(p) for p in _bits(self.rel[node])}

    def transition(self, t: int) -> tuple[tuple[int, int], tuple[int, int]]:
        return self.key(self.src[t]), self.key(self.dst[t])

    def cone(self, anchor: int) -> set[int]:
        """Transitions on some root path to ``anchor``."""
        rel = self.rel[anchor]
        return {t for t in range(len(self.dst)) if rel >> self.dst[t] & 1}

    def relrel(self, p: int, anchor: int) -> set[int]:
        """Transitions on root paths to ``anchor`` that go through ``p``."""
        if not self.rel[anchor] >> p & 1:
            return set()
        rel_p = self.rel[p]
        return {t for t in self.cone(anchor) if self.rel[self.src[t]] >> p & 1 or rel_p >> self.dst[t] & 1}

    def level_meanings(self) -> list[frozenset[int]]:
        out = [frozenset(self.meaning[q] for q in nodes) for nodes in self.levels]
        return out + [frozenset()] * (self.n - len(out))

    def add_node(self, level: int, meaning: int, sources: list[int]) -> int:
        q = len(self.meaning)
        self.level_of.append(level)
        self.meaning.append(meaning)
        self.index[(level, meaning)] = q
        incoming = []
        rel = 1 << q
        avoid = 0
        for u in sources:
            incoming.append(len(self.src))
            self.src.append(u)
            self.dst.append(q)
            rel |= self.rel[u]
            avoid |= self.avoid[u]
        self.incoming.append(incoming)
        self.rel.append(rel)
        self.avoid.append(avoid & ~(1 << meaning))
        self.levels[level].append(q)
        return q

    def check_size_bound(self) -> None:
        n = self.n
        if self.node_count > n * (n + 1) or self.transition_count > n ** 3:
            raise AssertionError(
                f"state-set size bound violated: {self.node_count} nodes, {self.transition_count} transitions, n={n}"
            )

    def dump(self) -> str:
        """One node per line: ``level meaning incoming |rel| |relrel|`` (relrel anchored at the node)."""
        lines = []
        for level, nodes in enumerate(self.levels):
            for q in nodes:
                lines.append(
                    f"{level} {self.meaning[q]} {len(self.incoming[q])} {bin(self.rel[q]).count('1')} {len(self.cone(q))}"
                )
        return "\n".join(lines) + "\n"


def fuzzy_init(g: Graph, start: int = 0) -> StateSetDag:
    return StateSetDag(g.n, start)


@dataclass
class AvoidanceView:
    """The per-query restricted structure after the deletion steps."""

    nodes: set[int]
    transitions: set[int]
    deleted: set[int]
    cascade: set[int]
    remaining: set[int]
    survives: bool


def avoidance_view(dag: StateSetDag, u: int, v: int) -> AvoidanceView:
    # step 1: restrict to the nodes and transitions leading to u
    nodes = set(_bits(dag.rel[u]))
    transitions = dag.cone(u)
    # step 2: delete the state sets standing for v
    deleted = {p for p in nodes if dag.meaning[p] == v}
    surviving = nodes - deleted
    # step 3: drop relrel(deleted) minus the union of relrel over the survivors.
    # A transition is in the union iff some survivor lies before its source or
    # after its target (within the cone), which gives the union in one pass.
    surv_mask = sum(1 << p for p in surviving)
    surv_after = 0
    for p in surviving:
        surv_after |= dag.rel[p]
    del_mask = sum(1 << p for p in deleted)
    del_after = 0
    for p in deleted:
        del_after |= dag.rel[p]

    cascade = set()
    for t in transitions:
        s, d = dag.src[t], dag.dst[t]
        through_deleted = dag.rel[s] & del_mask or del_after >> d & 1
        through_survivor = dag.rel[s] & surv_mask or surv_after >> d & 1
        if through_deleted and not through_survivor:
            cascade.add(t)
    remaining = {t for t in transitions - cascade if dag.src[t] in surviving and dag.dst[t] in surviving}

    survives = False
    if u in surviving:
        reached = {0}
        for t in sorted(remaining, key=lambda t: dag.level_of[dag.src[t]]):
            if dag.src[t] in reached:
                reached.add(dag.dst[t])
        survives = u in reached
    return AvoidanceView(nodes, transitions, deleted, cascade, remaining, survives)


def fuzzy_avoidance(dag: StateSetDag, g: Graph, u: int, v: int) -> bool:
    """Does a root path to state-set node ``u`` survive deleting meaning ``v``?"""
    return avoidance_view(dag, u, v).survives


def fuzzy_extend_level(dag: StateSetDag, g: Graph, *, literal: bool = False) -> StateSetDag:
    """Add level ``depth+1`` in place and return ``dag``.

    ``literal=True`` answers each admissibility query with
    :func:`fuzzy_avoidance`; the default reads the node's ``avoid`` bitset,
    which holds the same answers.
    """
    level = dag.depth
    top = dag.levels[level]
    dag.levels.append([])
    for v in range(dag.n):
        if v == dag.start:
            continue
        sources = []
        for u in top:
            if not g.has_edge(dag.meaning[u], v):
                continue
            ok = fuzzy_avoidance(dag, g, u, v) if literal else bool(dag.avoid[u] >> v & 1)
            if ok:
                sources.append(u)
        if sources:
            dag.add_node(level + 1, v, sources)
    return dag


def fuzzy_extract_candidate(dag: StateSetDag, g: Graph, accepting: int) -> list[int] | None:
    """Walk transitions backward from ``accepting`` to the root, one meaning per level.

    Predecessors are tried in ascending meaning order, skipping meanings
    already used; dead ends are backtracked at most ``10 * n**2`` times.
    The result is oriented so its second vertex is below its last one and
    is returned only if it validates as a circuit.
    """
    n = dag.n
    cap = 10 * n * n
    reversals = 0
    used = {dag.meaning[accepting]}
    path = [accepting]
    options = [_back_options(dag, accepting, used)]
    while options:
        node = path[-1]
        if node == 0:
            seq = [dag.meaning[q] for q in reversed(path)]
            if len(seq) > 2 and seq[1] > seq[-1]:
                seq = [seq[0]] + seq[:0:-1]
            return seq if is_circuit(g, seq, dag.start) else None
        if options[-1]:
            nxt = options[-1].pop(0)
            used.add(dag.meaning[nxt])
            path.append(nxt)
            options.append(_back_options(dag, nxt, used))
            continue
        reversals += 1
        if reversals > cap:
            return None
        options.pop()
        used.discard(dag.meaning[path.pop()])
    return None


def _back_options(dag: StateSetDag, node: int, used: set[int]) -> list[int]:
    preds = [dag.src[t] for t in dag.incoming[node]]
    preds = [p for p in preds if p == 0 or dag.meaning[p] not in used]
    return sorted(preds, key=lambda p: dag.meaning[p])


@dataclass
class FuzzyDecision:
    nonempty: bool
    level_sets: list[frozenset[int]]
    candidate: list[int] | None = None
    candidate_verified: bool = False
    stats: dict = field(default_factory=dict)

    @property
    def extraction_failed(self) -> bool:
        return self.nonempty and not self.candidate_verified


def fuzzy_decide(g: Graph, start: int = 0, *, literal: bool = False, max_seconds: float = DEFAULT_TIME_CAP) -> FuzzyDecision:
    started = time.perf_counter()
    dag = fuzzy_build(g, start, literal=literal, max_seconds=max_seconds, _started=started)
    accepting = []
    if g.n >= 3 and dag.depth == g.n - 1:
        accepting = [q for q in dag.levels[-1] if g.has_edge(dag.meaning[q], start)]
    candidate = None
    for q in accepting:
        candidate = fuzzy_extract_candidate(dag, g, q)
        if candidate is not None:
            break
    stats = {
        "nodes": dag.node_count,
        "transitions": dag.transition_count,
        "nodes_per_level": [len(nodes) for nodes in dag.levels],
        "elapsed": time.perf_counter() - started,
    }
    return FuzzyDecision(bool(accepting), dag.level_meanings(), candidate, candidate is not None, stats)


def fuzzy_build(g: Graph, start: int = 0, *, literal: bool = False, max_seconds: float = DEFAULT_TIME_CAP,
                _started: float | None = None) -> StateSetDag:
    """Levels 0..n-1 of the state-set structure, stopping at the first empty level."""
    started = time.perf_counter() if _started is None else _started
    dag = fuzzy_init(g, start)
    while dag.depth < g.n - 1 and dag.levels[-1]:
        fuzzy_extend_level(dag, g, literal=literal)
        if time.perf_counter() - started > max_seconds:
            raise FuzzyTimeout(f"state-set construction exceeded {max_seconds} s at level {dag.depth}")
    if not dag.levels[-1] and dag.depth > 0:
        dag.levels.pop()
    dag.check_size_bound()
    return dag
