"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row times one kernel call (best of ``--repeat``) on the same inputs with
both backends and prints the speedup.  Results are checked for equality
before timing so a mismatch aborts the run.
"""
import argparse
import sys
import timeit
from array import array

from hamlab import _backend, _layered_py, _oracle_py
from hamlab.graph import generate_erdos_renyi, named_graph


def build_trie(kernels, adj, n, start=0):
    parent, meaning = array("q", [-1]), array("q", [start])
    lo, hi = 0, 1
    for _ in range(n - 1):
        parents, meanings, _ = kernels.trie_expand(parent, meaning, lo, hi, adj, start, 1 << 40)
        if not meanings:
            break
        parent.extend(parents)
        meaning.extend(meanings)
        lo, hi = hi, len(meaning)
    return len(meaning)


def cases():
    graphs = [("K8", named_graph("k8")), ("K9", named_graph("k9")), ("petersen", named_graph("petersen"))]
    graphs += [(f"G({n},0.5)#{s}", generate_erdos_renyi(n, 0.5, s)) for n in (8, 10) for s in (1, 2)]
    for label, g in graphs:
        adj = list(g.masks)
        yield f"count_circuits {label}", lambda k, a=adj, n=g.n: k.count_circuits(a, n), "oracle"
        yield f"reach_levels {label}", lambda k, a=adj, n=g.n: k.reach_levels(a, n, 0), "oracle"
        yield f"first_circuit {label}", lambda k, a=adj, n=g.n: k.first_circuit(a, n, 0), "oracle"
        if g.n <= 9:
            yield f"trie build {label}", lambda k, a=adj, n=g.n: build_trie(k, a, n), "layered"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _backend.COMPILED:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
        return 1
    pure = {"oracle": _oracle_py, "layered": _layered_py}
    fast = {"oracle": _backend._oracle_core, "layered": _backend._layered_core}
    print(f"{'case':34} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for label, call, family in cases():
        if call(pure[family]) != call(fast[family]):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        t_py = min(timeit.repeat(lambda: call(pure[family]), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: call(fast[family]), number=1, repeat=args.repeat))
        print(f"{label:34} {t_py:10.4f} {t_c:11.5f} {t_py / max(t_c, 1e-9):7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
