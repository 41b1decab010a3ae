"""Command-line front end.

Exit codes: 0 ran clean, 10 ran clean but disagreements were found,
1 internal or input error (argparse usage errors keep their usual 2).
"""
from __future__ import annotations

import argparse
import sys

from hamlab.graph import format_graph, named_graph, read_graph
from hamlab.harness import (
    EXIT_CLEAN,
    EXIT_DISAGREEMENT,
    EXIT_ERROR,
    PREDICATES,
    HarnessConfig,
    bench,
    campaign_random,
    diff_run,
    dumps,
    minimize,
    report_exit_code,
    summary_csv,
    sweep_exhaustive,
)
from hamlab.layered import exact_decide
from hamlab.oracle import oracle_has_circuit, oracle_level_sets
from hamlab.stateset import fuzzy_decide


def _load(args):
    return named_graph(args.graph) if args.graph else read_graph(args.input)


def _write(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(doc: dict, output: str | None, csv_path: str | None = None) -> None:
    _write(dumps(doc), output)
    if csv_path:
        _write(summary_csv(doc), csv_path)


def cmd_solve(args) -> int:
    g = _load(args)
    if args.algo == "oracle":
        witness = oracle_has_circuit(g, args.start)
        levels = oracle_level_sets(g, args.start) if g.n <= 10 else None
        doc = {"algo": "oracle", "has_circuit": witness is not None, "circuit": witness}
    elif args.algo == "exact":
        d = exact_decide(g, args.start, HarnessConfig().budget)
        levels = d.level_sets
        doc = {"algo": "exact", "has_circuit": d.has_circuit, "circuit": d.witness,
               "nodes_per_level": d.stats["nodes_per_level"]}
    else:
        f = fuzzy_decide(g, args.start)
        levels = f.level_sets
        doc = {"algo": "fuzzy", "has_circuit": f.nonempty, "circuit": f.candidate,
               "candidate_verified": f.candidate_verified, "nodes": f.stats["nodes"],
               "transitions": f.stats["transitions"]}
    doc["level_sets"] = None if levels is None else [sorted(s) for s in levels]
    if args.format == "json":
        sys.stdout.write(dumps(doc))
    else:
        verdict = "yes" if doc["has_circuit"] else "no"
        print(f"{doc['algo']}: {verdict}")
        if doc["circuit"] is not None:
            print("circuit: " + " ".join(map(str, doc["circuit"])))
        if doc["level_sets"] is not None:
            for i, s in enumerate(doc["level_sets"]):
                print(f"level {i}: {' '.join(map(str, s))}")
    return EXIT_CLEAN


def cmd_diff(args) -> int:
    report = diff_run(_load(args), args.start)
    _emit(report.to_dict(timings=args.timings), args.output)
    return EXIT_DISAGREEMENT if report.kinds else EXIT_CLEAN


def cmd_sweep(args) -> int:
    doc = sweep_exhaustive(args.max_n, args.connected_only, override=args.override,
                           minimize_found=args.minimize, jobs=args.jobs, timings=args.timings)
    _emit(doc, args.output, args.csv)
    return report_exit_code(doc)


def cmd_random(args) -> int:
    doc = campaign_random(args.n, args.p, args.trials, args.seed, minimize_found=args.minimize,
                          jobs=args.jobs, timings=args.timings)
    _emit(doc, args.output, args.csv)
    return report_exit_code(doc)


def cmd_minimize(args) -> int:
    small = minimize(_load(args), args.predicate, start=args.start)
    if args.format == "json":
        sys.stdout.write(dumps({"predicate": args.predicate, "graph": small.to_dict()}))
    else:
        sys.stdout.write(format_graph(small))
    return EXIT_CLEAN


def cmd_bench(args) -> int:
    n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    _emit(bench(n_list, args.p, args.trials, args.seed), args.output)
    return EXIT_CLEAN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_source(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", help="edge-list file")
        src.add_argument("--graph", help="named graph, e.g. k4, c6, petersen")
        p.add_argument("--start", type=int, default=0)

    def outputs(p):
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        p.add_argument("--timings", action="store_true", help="attach wall-clock timings (not reproducible)")

    p = sub.add_parser("solve", help="run one algorithm on one graph")
    graph_source(p)
    p.add_argument("--algo", choices=("oracle", "exact", "fuzzy"), default="exact")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("diff", help="oracle vs exact vs fuzzy on one graph")
    graph_source(p)
    outputs(p)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("sweep", help="all labeled graphs with 3 <= n <= max-n")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--override", action="store_true", help="allow max-n above 6")
    p.add_argument("--minimize", action="store_true", help="attach 1-minimal versions of disagreements")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", help="also write per-n summary rows as CSV to this file")
    outputs(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("random", help="Erdős–Rényi campaign")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", help="also write per-n summary rows as CSV to this file")
    outputs(p)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("minimize", help="shrink a graph while a predicate holds")
    graph_source(p)
    p.add_argument("--predicate", choices=sorted(PREDICATES), required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("bench", help="time fuzzy_decide and fit a scaling exponent")
    p.add_argument("--n-list", required=True, help="comma-separated sizes, e.g. 10,20,40,60")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"hamlab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001
        print(f"hamlab: internal error: {exc!r}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
