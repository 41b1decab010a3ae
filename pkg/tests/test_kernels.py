"""Compiled kernels must agree bit for bit with the pure-Python fallback."""
from array import array

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamlab import _backend, _layered_py, _oracle_py
from hamlab.graph import generate_erdos_renyi, named_graph
from strategies import graphs

compiled = pytest.mark.skipif(not _backend.COMPILED, reason="compiled kernels not built")


@compiled
@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8), st.integers(0, 7))
def test_oracle_kernels_agree(g, start):
    core = _backend._oracle_core
    start %= g.n
    adj = list(g.masks)
    assert core.first_circuit(adj, g.n, start) == _oracle_py.first_circuit(adj, g.n, start)
    assert core.count_circuits(adj, g.n) == _oracle_py.count_circuits(adj, g.n)
    assert core.reach_levels(adj, g.n, start) == _oracle_py.reach_levels(adj, g.n, start)
    for u in range(g.n):
        for v in range(g.n):
            for i in range(g.n):
                assert core.avoiding_path_exists(adj, g.n, start, u, i, v) == \
                    _oracle_py.avoiding_path_exists(adj, g.n, start, u, i, v)


@compiled
def test_step_budget_agrees():
    g = named_graph("petersen")
    adj = list(g.masks)
    for steps in (0, 1, 10, 100, 10_000):
        assert _backend._oracle_core.first_circuit(adj, 10, 0, steps) == _oracle_py.first_circuit(adj, 10, 0, steps)


@compiled
def test_full_width_masks():
    g = generate_erdos_renyi(64, 0.5, 3)
    adj = list(g.masks)
    # bit 63 exercises the top of the uint64 masks
    for steps in (50, 200, 5000):
        assert _backend._oracle_core.first_circuit(adj, 64, 63, steps) == _oracle_py.first_circuit(adj, 64, 63, steps)


@compiled
@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8), st.integers(0, 7), st.integers(0, 400))
def test_trie_kernels_agree(g, start, cap):
    start %= g.n
    adj = list(g.masks)
    parent, meaning = array("q", [-1]), array("q", [start])
    lo, hi = 0, 1
    while hi > lo:
        a = _backend._layered_core.trie_expand(parent, meaning, lo, hi, adj, start, cap)
        b = _layered_py.trie_expand(parent, meaning, lo, hi, adj, start, cap)
        assert a == b
        if not a[2]:
            break
        parent.extend(a[0])
        meaning.extend(a[1])
        lo, hi = hi, len(meaning)


def test_compiled_rejects_oversized_graphs():
    if not _backend.COMPILED:
        pytest.skip("compiled kernels not built")
    with pytest.raises(ValueError):
        _backend._oracle_core.count_circuits([0] * 65, 65)
    assert _backend.oracle_kernels(65) is _oracle_py
