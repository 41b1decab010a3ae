import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bruteforce import brute_simple_paths
from hamlab.graph import enumerate_all_graphs, is_circuit, named_graph
from hamlab.layered import (
    Budget,
    BudgetExhausted,
    LayeredDag,
    exact_build,
    exact_decide,
    exact_extend_level,
    exact_necessary,
)
from hamlab.oracle import oracle_avoidance, oracle_has_circuit, oracle_level_sets
from strategies import graphs


def stored_paths(dag):
    return sorted(tuple(dag.path_to(t)) for t in range(dag.size))


def test_k3_levels():
    dag = exact_build(named_graph("k3"), 0)
    assert dag.level_sizes() == [1, 2, 2]
    assert dag.level_meanings() == [{0}, {1, 2}, {1, 2}]
    assert [dag.meaning[t] for t in dag.level(2)] == [2, 1]


def test_p3_levels():
    assert exact_build(named_graph("p3"), 0).level_sizes() == [1, 1, 1]


def test_k4_level3_has_all_orderings():
    g = named_graph("k4")
    dag = exact_build(g, 0)
    expected = sorted(p for p in brute_simple_paths(g, 0) if len(p) == 4)
    assert len(expected) == 6
    assert sorted(tuple(dag.path_to(t)) for t in dag.level(3)) == expected


def test_extend_examples():
    k3 = named_graph("k3")
    dag = exact_extend_level(LayeredDag(3, 0), k3)
    exact_extend_level(dag, k3)
    children = {dag.meaning[dag.parent[t]]: dag.meaning[t] for t in dag.level(2)}
    assert children == {1: 2, 2: 1}

    p3 = named_graph("p3")
    dag = exact_extend_level(exact_extend_level(LayeredDag(3, 0), p3), p3)
    assert [dag.meaning[t] for t in dag.level(2)] == [2]

    star = named_graph("star")
    dag = exact_extend_level(exact_extend_level(LayeredDag(4, 0), star), star)
    assert dag.level_sizes() == [1, 3, 0]


def test_necessary_examples():
    k3 = named_graph("k3")
    dag = exact_extend_level(LayeredDag(3, 0), k3)
    node1 = next(t for t in dag.level(1) if dag.meaning[t] == 1)
    assert not exact_necessary(dag, node1, 2)

    p3 = named_graph("p3")
    dag = exact_build(p3, 0)
    node2 = next(iter(dag.level(2)))
    assert exact_necessary(dag, node2, 1)


def test_necessary_k4_level2_intermediates():
    g = named_graph("k4")
    dag = exact_build(g, 0)
    for t in dag.level(2):
        if dag.meaning[t] != 3:
            continue
        middle = dag.path_to(t)[1]
        # each trie node stores one path, so its intermediate vertex is necessary for it
        assert exact_necessary(dag, t, middle)
        other = ({1, 2} - {middle}).pop()
        assert not exact_necessary(dag, t, other)
    # across all level-2 nodes meaning 3, avoidance of 1 is possible (path 0-2-3)
    assert oracle_avoidance(g, 0, 3, 2, 1)
    assert any(not exact_necessary(dag, t, 1) for t in dag.level(2) if dag.meaning[t] == 3)


def test_root_query_is_never_necessary():
    dag = LayeredDag(3, 0)
    assert not exact_necessary(dag, 0, 1)


def test_decide_examples():
    d = exact_decide(named_graph("k3"), 0)
    assert d.has_circuit and d.witness == [0, 1, 2]
    assert not exact_decide(named_graph("p3"), 0).has_circuit
    petersen = exact_decide(named_graph("petersen"), 0)
    assert not petersen.has_circuit
    assert petersen.level_sets == oracle_level_sets(named_graph("petersen"), 0)


def test_k9_completes_under_default_budget():
    g = named_graph("k9")
    d = exact_decide(g, 0)
    assert d.has_circuit and is_circuit(g, d.witness, 0)
    # 8!/(8-i)! trie nodes at level i
    assert d.stats["nodes_per_level"] == [1, 8, 56, 336, 1680, 6720, 20160, 40320, 40320]


def test_k9_hits_node_budget_cleanly():
    with pytest.raises(BudgetExhausted) as err:
        exact_decide(named_graph("k9"), 0, Budget(max_nodes=5000))
    assert err.value.reason == "nodes"
    assert err.value.stats["total_nodes"] <= 5000


def test_time_budget():
    with pytest.raises(BudgetExhausted) as err:
        exact_decide(named_graph("k9"), 0, Budget(max_seconds=0.0))
    assert err.value.reason == "time"


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("HAMLAB_EXACT_NODE_CAP", "123")
    monkeypatch.setenv("HAMLAB_EXACT_TIME_CAP", "4.5")
    assert Budget.from_env() == Budget(123, 4.5)


def test_dump_format():
    dag = exact_build(named_graph("k3"), 0)
    assert dag.dump() == "0 0 0 -\n1 1 1 0\n1 2 2 0\n2 3 2 1\n2 4 1 2\n"


def test_tags_are_creation_order():
    dag = exact_build(named_graph("k4"), 0)
    assert dag.level_of(0) == 0
    for t in range(1, dag.size):
        assert dag.parent[t] < t
        assert dag.level_of(t) == dag.level_of(dag.parent[t]) + 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_oracle_equivalence_exhaustive(n):
    for g in enumerate_all_graphs(n):
        d = exact_decide(g, 0)
        assert d.level_sets == oracle_level_sets(g, 0)
        assert d.has_circuit == (oracle_has_circuit(g, 0) is not None)
        assert d.witness == oracle_has_circuit(g, 0)


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=7), st.integers(0, 6))
def test_stores_exactly_the_simple_paths(g, start):
    start %= g.n
    dag = exact_build(g, start)
    assert stored_paths(dag) == sorted(brute_simple_paths(g, start))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_literal_and_kernel_extension_agree(g):
    a = exact_build(g, 0)
    b = exact_build(g, 0, literal=True)
    assert list(a.parent) == list(b.parent)
    assert list(a.meaning) == list(b.meaning)
    assert a.bounds == b.bounds


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_necessary_vs_oracle_avoidance(g):
    dag = exact_build(g, 0)
    for i in range(dag.depth + 1):
        for m in range(g.n):
            nodes = [t for t in dag.level(i) if dag.meaning[t] == m]
            for v in range(1, g.n):
                for t in nodes:
                    assert exact_necessary(dag, t, v) == (v in dag.path_to(t))
                survives = any(not exact_necessary(dag, t, v) for t in nodes)
                assert survives == oracle_avoidance(g, 0, m, i, v)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_random_walks_never_repeat_meanings(g, rng):
    dag = LayeredDag(g.n, 0)
    while dag.depth < g.n - 1 and dag.bounds[-1] > dag.bounds[-2]:
        exact_extend_level(dag, g)
        for t in dag.level(dag.depth):
            assert len(dag.parents_of(t)) == 1
        for _ in range(5):
            if dag.bounds[-1] == dag.bounds[-2]:
                break
            path = dag.path_to(rng.randrange(dag.bounds[-2], dag.bounds[-1]))
            assert len(set(path)) == len(path)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_empty_level_means_no_circuit(g):
    d = exact_decide(g, 0)
    if any(not s for s in d.level_sets):
        assert not d.has_circuit
    if d.has_circuit:
        assert is_circuit(g, d.witness, 0)
