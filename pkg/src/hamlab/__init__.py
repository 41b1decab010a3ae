"""Hamiltonian-circuit laboratory.

Two constructions over layered path structures are run against a
brute-force oracle:

* :mod:`hamlab.layered`: exact multistage DAG of all simple paths (exponential);
* :mod:`hamlab.stateset`: merged per-level state sets (polynomial, over-approximating).
"""
from hamlab._backend import backend_name
from hamlab.graph import (
    Graph,
    enumerate_all_graphs,
    generate_erdos_renyi,
    generate_planted_cycle,
    is_circuit,
    named_graph,
    parse_graph,
)
from hamlab.layered import Budget, BudgetExhausted, exact_decide
from hamlab.oracle import oracle_count_circuits, oracle_has_circuit, oracle_level_sets
from hamlab.stateset import fuzzy_decide

__version__ = "0.1.0"
