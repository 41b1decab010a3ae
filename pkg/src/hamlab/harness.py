"""Differential harness: run oracle, exact and state-set deciders side by side.

Reports are plain JSON-ready dicts.  Their canonical form leaves out wall
clock timings, so the same inputs and configuration give byte-identical
documents; timings are attached only on request.
"""
from __future__ import annotations

import csv
import io
import json
import math
import random
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from hamlab.graph import Graph, enumerate_all_graphs, generate_erdos_renyi, is_circuit
from hamlab.layered import Budget, BudgetExhausted, exact_decide
from hamlab.oracle import OracleBudgetExhausted, oracle_has_circuit, oracle_level_sets
from hamlab.stateset import fuzzy_decide

__all__ = [
    "SCHEMA_VERSION",
    "HarnessConfig",
    "DiffReport",
    "diff_run",
    "verify_report",
    "sweep_exhaustive",
    "campaign_random",
    "minimize",
    "PREDICATES",
    "fit_scaling",
    "ScalingFit",
    "bench",
    "dumps",
    "summary_csv",
    "EXIT_CLEAN",
    "EXIT_DISAGREEMENT",
    "EXIT_ERROR",
]

SCHEMA_VERSION = 1
EXIT_CLEAN = 0
EXIT_DISAGREEMENT = 10
EXIT_ERROR = 1

DISAGREEMENT_KINDS = (
    "fuzzy_false_positive",
    "fuzzy_false_negative",
    "extraction_failure",
    "containment_violation",
    "exact_mismatch",
)


@dataclass(frozen=True)
class HarnessConfig:
    exact_max_n: int = 10
    oracle_level_cap: int = 10
    oracle_max_steps: int | None = 100_000_000
    budget: Budget = field(default_factory=Budget.from_env)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["budget"] = self.budget.to_dict()
        return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _sets(level_sets) -> list[list[int]] | None:
    return None if level_sets is None else [sorted(s) for s in level_sets]


# -- single instance ------------------------------------------------------

@dataclass
class DiffReport:
    graph: Graph
    start: int
    oracle: dict
    exact: dict
    fuzzy: dict
    agreement: dict
    timings: dict

    @property
    def kinds(self) -> list[str]:
        """Disagreement kinds present in this report."""
        return _kinds(self.oracle, self.exact, self.fuzzy, self.agreement)

    def to_dict(self, timings: bool = False) -> dict:
        doc = {
            "schema": "hamlab.diff",
            "schema_version": SCHEMA_VERSION,
            "graph": self.graph.to_dict(),
            "start": self.start,
            "oracle": self.oracle,
            "exact": self.exact,
            "fuzzy": self.fuzzy,
            "agreement": self.agreement,
            "disagreements": self.kinds,
        }
        if timings:
            doc["timings"] = self.timings
        return doc


def _run_oracle(g: Graph, start: int, config: HarnessConfig) -> dict:
    try:
        witness = oracle_has_circuit(g, start, max_steps=config.oracle_max_steps)
    except OracleBudgetExhausted:
        return {"status": "budget-exhausted", "has_circuit": None, "witness": None, "level_sets": None}
    levels = oracle_level_sets(g, start) if g.n <= config.oracle_level_cap else None
    return {"status": "ok", "has_circuit": witness is not None, "witness": witness, "level_sets": _sets(levels)}


def _run_exact(g: Graph, start: int, config: HarnessConfig) -> dict:
    if g.n > config.exact_max_n:
        return {"status": "skipped", "has_circuit": None, "witness": None, "level_sets": None}
    try:
        d = exact_decide(g, start, config.budget)
    except BudgetExhausted as exc:
        return {"status": "budget-exhausted", "reason": exc.reason, "has_circuit": None, "witness": None,
                "level_sets": None, "nodes_per_level": exc.stats["nodes_per_level"]}
    return {"status": "ok", "has_circuit": d.has_circuit, "witness": d.witness, "level_sets": _sets(d.level_sets),
            "nodes_per_level": d.stats["nodes_per_level"]}


def _run_fuzzy(g: Graph, start: int) -> dict:
    f = fuzzy_decide(g, start)
    return {
        "status": "ok",
        "nonempty": f.nonempty,
        "level_sets": _sets(f.level_sets),
        "candidate": f.candidate,
        "candidate_verified": f.candidate_verified,
        "extraction_failed": f.extraction_failed,
        "nodes": f.stats["nodes"],
        "transitions": f.stats["transitions"],
    }


def _agreement(oracle: dict, exact: dict, fuzzy: dict) -> dict:
    def eq(a, b):
        return None if a is None or b is None else a == b

    o, e, f = oracle["has_circuit"], exact["has_circuit"], fuzzy["nonempty"]
    contain = equal = None
    if exact["level_sets"] is not None:
        pairs = list(zip(fuzzy["level_sets"], exact["level_sets"]))
        contain = all(set(ex) <= set(fz) for fz, ex in pairs)
        equal = all(fz == ex for fz, ex in pairs)
    return {
        "oracle_exact": eq(o, e),
        "oracle_fuzzy": eq(o, f),
        "exact_fuzzy": eq(e, f),
        "exact_levelsets_oracle": eq(exact["level_sets"], oracle["level_sets"]),
        "levelsets_containment": contain,
        "levelsets_equality": equal,
    }


def _kinds(oracle: dict, exact: dict, fuzzy: dict, agreement: dict) -> list[str]:
    o, f = oracle["has_circuit"], fuzzy["nonempty"]
    kinds = []
    if o is False and f:
        kinds.append("fuzzy_false_positive")
    if o is True and not f:
        kinds.append("fuzzy_false_negative")
    if fuzzy["extraction_failed"]:
        kinds.append("extraction_failure")
    if agreement["levelsets_containment"] is False:
        kinds.append("containment_violation")
    if agreement["oracle_exact"] is False or agreement["exact_levelsets_oracle"] is False:
        kinds.append("exact_mismatch")
    return kinds


def diff_run(g: Graph, start: int = 0, config: HarnessConfig | None = None) -> DiffReport:
    config = config or HarnessConfig()
    t0 = time.perf_counter()
    oracle = _run_oracle(g, start, config)
    t1 = time.perf_counter()
    exact = _run_exact(g, start, config)
    t2 = time.perf_counter()
    fuzzy = _run_fuzzy(g, start)
    t3 = time.perf_counter()
    timings = {"oracle": t1 - t0, "exact": t2 - t1, "fuzzy": t3 - t2}
    for label, seq in (("oracle", oracle["witness"]), ("exact", exact["witness"]), ("fuzzy", fuzzy["candidate"])):
        if seq is not None and not is_circuit(g, seq, start):
            raise AssertionError(f"{label} circuit {seq} failed validation")
    return DiffReport(g, start, oracle, exact, fuzzy, _agreement(oracle, exact, fuzzy), timings)


def verify_report(doc: dict) -> list[str]:
    """Problems found when re-deriving a serialized DiffReport's flags and circuits."""
    problems = []
    g = Graph.from_dict(doc["graph"])
    start = doc["start"]
    agreement = _agreement(doc["oracle"], doc["exact"], doc["fuzzy"])
    if agreement != doc["agreement"]:
        problems.append("agreement flags do not match embedded verdicts")
    if _kinds(doc["oracle"], doc["exact"], doc["fuzzy"], agreement) != doc["disagreements"]:
        problems.append("disagreement kinds do not match embedded verdicts")
    for label, seq in (("oracle", doc["oracle"]["witness"]), ("exact", doc["exact"]["witness"])):
        if seq is not None and not is_circuit(g, seq, start):
            problems.append(f"{label} witness invalid")
    cand = doc["fuzzy"]["candidate"]
    if doc["fuzzy"]["candidate_verified"] and (cand is None or not is_circuit(g, cand, start)):
        problems.append("fuzzy candidate marked verified but invalid")
    return problems


# -- sweeps ---------------------------------------------------------------

class _Aggregate:
    def __init__(self, kind: str, parameters: dict, config: HarnessConfig, minimize_found: bool):
        self.kind = kind
        self.parameters = parameters
        self.config = config
        self.minimize_found = minimize_found
        self.categories = {"agree_yes": 0, "agree_no": 0, "fuzzy_false_positive": 0,
                           "fuzzy_false_negative": 0, "oracle_undecided": 0}
        self.per_n: dict[int, dict] = {}
        self.timings: dict[int, dict] = {}
        self.lists: dict[str, list] = {k: [] for k in DISAGREEMENT_KINDS}
        self.graphs = 0
        self.hamiltonian = 0
        self.exact_status: dict[str, int] = {}
        self.witnesses_checked = 0
        self.candidates_verified = 0
        self.max_nodes_ratio = 0.0
        self.max_transitions_ratio = 0.0
        self._minimized: dict[tuple, dict] = {}

    def add(self, report: DiffReport, instance: dict) -> None:
        g = report.graph
        self.graphs += 1
        o, f = report.oracle["has_circuit"], report.fuzzy["nonempty"]
        if o is None:
            cat = "oracle_undecided"
        elif o == f:
            cat = "agree_yes" if o else "agree_no"
        else:
            cat = "fuzzy_false_positive" if f else "fuzzy_false_negative"
        self.categories[cat] += 1
        self.hamiltonian += o is True
        st = report.exact["status"]
        self.exact_status[st] = self.exact_status.get(st, 0) + 1
        self.witnesses_checked += (report.oracle["witness"] is not None) + (report.exact["witness"] is not None)
        self.candidates_verified += report.fuzzy["candidate_verified"]
        self.max_nodes_ratio = max(self.max_nodes_ratio, report.fuzzy["nodes"] / (g.n * (g.n + 1)))
        self.max_transitions_ratio = max(self.max_transitions_ratio, report.fuzzy["transitions"] / g.n ** 3)

        row = self.per_n.setdefault(g.n, {"graphs": 0, "oracle_hamiltonian": 0, "fuzzy_nonempty": 0,
                                          "levelsets_equal": 0, "levelsets_unequal": 0})
        row["graphs"] += 1
        row["oracle_hamiltonian"] += o is True
        row["fuzzy_nonempty"] += bool(f)
        eq = report.agreement["levelsets_equality"]
        if eq is not None:
            row["levelsets_equal" if eq else "levelsets_unequal"] += 1
        tm = self.timings.setdefault(g.n, {"oracle": 0.0, "exact": 0.0, "fuzzy": 0.0, "count": 0})
        for k, v in report.timings.items():
            tm[k] += v
        tm["count"] += 1

        kinds = report.kinds
        for kind in kinds:
            entry = dict(instance, graph=g.to_dict(), start=report.start, kinds=kinds)
            if self.minimize_found:
                entry["minimized"] = self._minimize(g, report.start, kind)
            self.lists[kind].append(entry)

    def _minimize(self, g: Graph, start: int, kind: str) -> dict:
        key = (kind, g.n, g.edges, start)
        if key not in self._minimized:
            small = minimize(g, kind.replace("_", "-"), start=start, config=self.config)
            self._minimized[key] = small.to_dict()
        return self._minimized[key]

    def report(self, timings: bool = False) -> dict:
        doc = {
            "schema": "hamlab.sweep",
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "parameters": self.parameters,
            "config": self.config.to_dict(),
            "totals": {
                "graphs": self.graphs,
                "oracle_hamiltonian": self.hamiltonian,
                "categories": self.categories,
                "exact_status": dict(sorted(self.exact_status.items())),
                "disagreement_counts": {k: len(v) for k, v in self.lists.items()},
                "witnesses_validated": self.witnesses_checked,
                "candidates_verified": self.candidates_verified,
                "max_state_nodes_over_bound": round(self.max_nodes_ratio, 6),
                "max_state_transitions_over_bound": round(self.max_transitions_ratio, 6),
            },
            "per_n": {str(n): row for n, row in sorted(self.per_n.items())},
            "disagreements": self.lists,
        }
        if timings:
            doc["timings"] = {
                str(n): {k: (v / t["count"] if k != "count" else v) for k, v in t.items()}
                for n, t in sorted(self.timings.items())
            }
        return doc


def _exhaustive_instances(max_n: int, connected_only: bool, override: bool):
    for n in range(3, max_n + 1):
        for index, g in enumerate(enumerate_all_graphs(n, override=override)):
            if connected_only and not g.is_connected():
                continue
            yield {"n": n, "index": index}, g


def _run_all(items: Iterable, config: HarnessConfig, agg: _Aggregate, jobs: int) -> None:
    if jobs <= 1:
        for instance, g in items:
            agg.add(diff_run(g, 0, config), instance)
        return
    from concurrent.futures import ProcessPoolExecutor
    from functools import partial

    items = list(items)
    with ProcessPoolExecutor(jobs) as pool:
        # map() yields in submission order, keeping aggregation deterministic
        reports = pool.map(partial(diff_run, start=0, config=config), [g for _, g in items], chunksize=256)
        for (instance, _), report in zip(items, reports):
            agg.add(report, instance)


def sweep_exhaustive(max_n: int, connected_only: bool = False, *, override: bool = False,
                     config: HarnessConfig | None = None, minimize_found: bool = False, jobs: int = 1,
                     timings: bool = False) -> dict:
    """Every labeled graph with 3 <= n <= max_n, start fixed at 0."""
    if max_n > 6 and not override:
        raise ValueError(f"max_n={max_n} above 6 requires override=True")
    config = config or HarnessConfig()
    agg = _Aggregate("exhaustive", {"max_n": max_n, "connected_only": connected_only, "start": 0}, config,
                     minimize_found)
    _run_all(_exhaustive_instances(max_n, connected_only, override), config, agg, jobs)
    return agg.report(timings)


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Per-trial graph seeds: successive 63-bit draws from random.Random(seed)."""
    rng = random.Random(seed)
    return [rng.getrandbits(63) for _ in range(trials)]


def campaign_random(n: int, p: float, trials: int, seed: int, *, config: HarnessConfig | None = None,
                    minimize_found: bool = False, jobs: int = 1, timings: bool = False) -> dict:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    config = config or HarnessConfig()
    agg = _Aggregate("random", {"n": n, "p": p, "trials": trials, "seed": seed, "start": 0}, config, minimize_found)
    items = (
        ({"trial": k, "seed": s, "p": p}, generate_erdos_renyi(n, p, s))
        for k, s in enumerate(trial_seeds(seed, trials))
    )
    _run_all(items, config, agg, jobs)
    return agg.report(timings)


def report_exit_code(doc: dict) -> int:
    return EXIT_DISAGREEMENT if any(doc["disagreements"].values()) else EXIT_CLEAN


CSV_COLUMNS = ("n", "graphs", "oracle_hamiltonian", "fuzzy_nonempty", "levelsets_equal", "levelsets_unequal")


def summary_csv(doc: dict) -> str:
    """One CSV row per vertex count of a sweep or campaign report."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for n, row in doc["per_n"].items():
        writer.writerow([n] + [row[c] for c in CSV_COLUMNS[1:]])
    return buf.getvalue()


# -- minimization ---------------------------------------------------------

def _oracle_yes(g: Graph, start: int, config: HarnessConfig) -> bool:
    return oracle_has_circuit(g, start, max_steps=config.oracle_max_steps) is not None


def _kind_predicate(kind: str) -> Callable[[Graph, int, HarnessConfig], bool]:
    def pred(g: Graph, start: int, config: HarnessConfig) -> bool:
        return kind in diff_run(g, start, config).kinds

    return pred


def _fuzzy_false_positive(g: Graph, start: int, config: HarnessConfig) -> bool:
    return fuzzy_decide(g, start).nonempty and not _oracle_yes(g, start, config)


def _fuzzy_false_negative(g: Graph, start: int, config: HarnessConfig) -> bool:
    return not fuzzy_decide(g, start).nonempty and _oracle_yes(g, start, config)


PREDICATES: dict[str, Callable[[Graph, int, HarnessConfig], bool]] = {
    "oracle-yes": _oracle_yes,
    "oracle-no": lambda g, s, c: not _oracle_yes(g, s, c),
    "fuzzy-false-positive": _fuzzy_false_positive,
    "fuzzy-false-negative": _fuzzy_false_negative,
    "extraction-failure": _kind_predicate("extraction_failure"),
    "containment-violation": _kind_predicate("containment_violation"),
    "exact-mismatch": _kind_predicate("exact_mismatch"),
}


def minimize(g: Graph, predicate: str | Callable, *, start: int = 0, min_vertices: int = 3,
             config: HarnessConfig | None = None) -> Graph:
    """Shrink ``g`` while ``predicate`` keeps holding, until no single deletion preserves it.

    Candidates are tried in a fixed order: vertices from the highest label
    down (never going below ``min_vertices`` or deleting ``start``), then
    edges in descending lexicographic order.  After any accepted deletion
    the scan restarts, so the result is 1-minimal.
    """
    config = config or HarnessConfig()
    check = PREDICATES[predicate] if isinstance(predicate, str) else predicate
    if not check(g, start, config):
        raise ValueError(f"predicate {predicate!r} does not hold on the input graph")
    current = g
    while True:
        for smaller, new_start in _one_deletions(current, start, min_vertices):
            if check(smaller, new_start, config):
                current, start = smaller, new_start
                break
        else:
            return current


def _one_deletions(g: Graph, start: int, min_vertices: int):
    """Single-deletion neighbors of ``g`` as ``(graph, start label)`` pairs."""
    if g.n > min_vertices:
        for x in range(g.n - 1, -1, -1):
            if x != start:
                yield g.remove_vertex(x), start - (x < start)
    for u, v in sorted(g.edges, reverse=True):
        yield g.remove_edge(u, v), start


def is_one_minimal(g: Graph, predicate: str | Callable, *, start: int = 0, min_vertices: int = 3,
                   config: HarnessConfig | None = None) -> bool:
    config = config or HarnessConfig()
    check = PREDICATES[predicate] if isinstance(predicate, str) else predicate
    return check(g, start, config) and not any(
        check(h, s, config) for h, s in _one_deletions(g, start, min_vertices)
    )


# -- scaling --------------------------------------------------------------

@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    intercept: float
    residual: float
    points: int


def fit_scaling(samples: Iterable[tuple[float, float]]) -> ScalingFit:
    """Least-squares slope of log(seconds) against log(n); residual is the RMS misfit in log space."""
    samples = list(samples)
    if len({n for n, _ in samples}) < 4:
        raise ValueError("need samples at 4 or more distinct n values")
    if any(n <= 0 or t <= 0 for n, t in samples):
        raise ValueError("all n and timings must be positive")
    xs = [math.log(n) for n, _ in samples]
    ys = [math.log(t) for _, t in samples]
    slope, intercept = statistics.linear_regression(xs, ys)
    rms = math.sqrt(statistics.fmean((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys)))
    return ScalingFit(slope, intercept, rms, len(samples))


def bench(n_list: list[int], p: float, trials: int, seed: int, *, timings: bool = True) -> dict:
    """Time fuzzy_decide on Erdős–Rényi graphs and fit the growth exponent.

    Only the ``timings`` and ``fit`` sections depend on the clock.
    """
    rows = []
    samples = []
    per_n_time = {}
    for n in n_list:
        nodes_max = trans_max = nonempty = 0
        elapsed = []
        for s in trial_seeds(seed + n, trials):
            g = generate_erdos_renyi(n, p, s)
            t0 = time.perf_counter()
            f = fuzzy_decide(g)
            elapsed.append(time.perf_counter() - t0)
            nodes_max = max(nodes_max, f.stats["nodes"])
            trans_max = max(trans_max, f.stats["transitions"])
            nonempty += f.nonempty
        rows.append({"n": n, "trials": trials, "fuzzy_nonempty": nonempty, "max_nodes": nodes_max,
                     "max_transitions": trans_max, "node_bound": n * (n + 1), "transition_bound": n ** 3})
        med = statistics.median(elapsed)
        samples.append((n, med))
        per_n_time[str(n)] = {"median": med, "max": max(elapsed)}
    doc = {"schema": "hamlab.bench", "schema_version": SCHEMA_VERSION,
           "parameters": {"n_list": n_list, "p": p, "trials": trials, "seed": seed}, "sizes": rows}
    if timings:
        fit = fit_scaling(samples)
        doc["timings"] = per_n_time
        doc["fit"] = asdict(fit)
    return doc
