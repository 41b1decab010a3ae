import json
import math

import pytest
from hypothesis import given, settings

from hamlab.graph import Graph, is_circuit, named_graph
from hamlab.harness import (
    HarnessConfig,
    PREDICATES,
    campaign_random,
    diff_run,
    dumps,
    fit_scaling,
    is_one_minimal,
    minimize,
    report_exit_code,
    sweep_exhaustive,
    verify_report,
)
from hamlab.oracle import oracle_has_circuit
from strategies import graphs


def test_diff_k3_all_agree():
    r = diff_run(named_graph("k3"))
    assert r.oracle["has_circuit"] and r.exact["has_circuit"] and r.fuzzy["nonempty"]
    assert r.agreement == {
        "oracle_exact": True,
        "oracle_fuzzy": True,
        "exact_fuzzy": True,
        "exact_levelsets_oracle": True,
        "levelsets_containment": True,
        "levelsets_equality": True,
    }
    assert r.kinds == []


def test_diff_p3_all_no():
    r = diff_run(named_graph("p3"))
    assert (r.oracle["has_circuit"], r.exact["has_circuit"], r.fuzzy["nonempty"]) == (False, False, False)


def test_diff_petersen_flags_false_positive():
    doc = diff_run(named_graph("petersen")).to_dict()
    assert doc["oracle"]["has_circuit"] is False and doc["exact"]["has_circuit"] is False
    assert doc["disagreements"] == ["fuzzy_false_positive", "extraction_failure"]
    assert verify_report(json.loads(dumps(doc))) == []


def test_verify_report_catches_tampering():
    doc = diff_run(named_graph("k4")).to_dict()
    doc["agreement"]["oracle_fuzzy"] = False
    doc["exact"]["witness"] = [0, 1]
    problems = verify_report(doc)
    assert "agreement flags do not match embedded verdicts" in problems
    assert "exact witness invalid" in problems


def test_timings_only_on_request():
    r = diff_run(named_graph("k4"))
    assert "timings" not in r.to_dict()
    assert set(r.to_dict(timings=True)["timings"]) == {"oracle", "exact", "fuzzy"}


def test_exact_skipped_above_range():
    r = diff_run(named_graph("c5"), config=HarnessConfig(exact_max_n=4))
    assert r.exact["status"] == "skipped"
    assert r.agreement["oracle_exact"] is None and r.agreement["levelsets_containment"] is None


def test_exact_budget_is_a_report_state():
    from hamlab.layered import Budget

    r = diff_run(named_graph("k9"), config=HarnessConfig(budget=Budget(max_nodes=1000)))
    assert r.exact["status"] == "budget-exhausted" and r.exact["reason"] == "nodes"
    assert r.oracle["has_circuit"] is True


def test_oracle_budget_is_a_report_state():
    r = diff_run(named_graph("petersen"), config=HarnessConfig(oracle_max_steps=3))
    assert r.oracle["status"] == "budget-exhausted"
    assert r.agreement["oracle_fuzzy"] is None


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=6))
def test_report_round_trip_verifies(g):
    doc = json.loads(dumps(diff_run(g).to_dict()))
    assert verify_report(doc) == []


def test_sweep_counts_n4():
    doc = sweep_exhaustive(4)
    assert doc["per_n"]["3"]["graphs"] == 8
    assert doc["per_n"]["4"]["graphs"] == 64
    totals = doc["totals"]
    assert totals["graphs"] == sum(totals["categories"].values()) == 72


def test_sweep_hamiltonian_count_matches_oracle_counts():
    from hamlab.graph import enumerate_all_graphs
    from hamlab.oracle import oracle_count_circuits

    doc = sweep_exhaustive(4)
    expected = sum(oracle_count_circuits(g) > 0 for g in enumerate_all_graphs(4))
    assert doc["per_n"]["4"]["oracle_hamiltonian"] == expected


def test_sweep_connected_only():
    doc = sweep_exhaustive(4, connected_only=True)
    # connected labeled graphs: 4 on 3 vertices, 38 on 4 vertices
    assert doc["per_n"]["3"]["graphs"] == 4
    assert doc["per_n"]["4"]["graphs"] == 38


def test_sweep_override_guard():
    with pytest.raises(ValueError, match="override"):
        sweep_exhaustive(7)


def test_sweep_disagreements_replay():
    doc = sweep_exhaustive(5, minimize_found=True)
    fps = doc["disagreements"]["fuzzy_false_positive"]
    assert len(fps) == doc["totals"]["categories"]["fuzzy_false_positive"] > 0
    for entry in fps[:25]:
        g = Graph.from_dict(entry["graph"])
        assert "fuzzy_false_positive" in diff_run(g, entry["start"]).kinds
        small = Graph.from_dict(entry["minimized"])
        assert is_one_minimal(small, "fuzzy-false-positive")
    assert report_exit_code(doc) == 10


def test_campaign_deterministic():
    a = campaign_random(8, 0.5, 100, 1)
    b = campaign_random(8, 0.5, 100, 1)
    assert dumps(a) == dumps(b)
    assert a["totals"]["graphs"] == 100


def test_campaign_complete_graph():
    doc = campaign_random(5, 1.0, 1, 3)
    assert doc["totals"]["categories"]["agree_yes"] == 1
    assert report_exit_code(doc) == 0


def test_campaign_skips_exact_above_range():
    doc = campaign_random(12, 0.5, 2, 4)
    assert doc["totals"]["exact_status"] == {"skipped": 2}


def test_minimize_p4_oracle_no():
    small = minimize(named_graph("p4"), "oracle-no")
    assert small.n == 3 and oracle_has_circuit(small) is None
    assert is_one_minimal(small, "oracle-no")


def test_minimize_k5_oracle_yes():
    small = minimize(named_graph("k5"), "oracle-yes")
    assert small == named_graph("k3")
    assert is_one_minimal(small, "oracle-yes")


def test_minimize_petersen_false_positive():
    small = minimize(named_graph("petersen"), "fuzzy-false-positive")
    assert PREDICATES["fuzzy-false-positive"](small, 0, HarnessConfig())
    assert is_one_minimal(small, "fuzzy-false-positive")
    assert small.n < 10


def test_minimize_tracks_start_label():
    # start vertex 2 on a path; deleting vertex 0 shifts it to label 1
    g = named_graph("p4")
    small = minimize(g, lambda h, s, c: h.degree(s) >= 1, start=2, min_vertices=2)
    assert small == Graph.from_edges(2, [(0, 1)])


def test_minimize_rejects_false_predicate():
    with pytest.raises(ValueError, match="does not hold"):
        minimize(named_graph("k4"), "oracle-no")


def test_fit_scaling_cubic():
    fit = fit_scaling([(n, n ** 3) for n in (10, 20, 40, 60)])
    assert fit.exponent == pytest.approx(3.0, abs=0.01)
    assert fit.residual < 1e-9


def test_fit_scaling_noisy_residual():
    fit = fit_scaling([(10, 1.0), (20, 4.4), (40, 15.0), (80, 70.0)])
    assert 1.5 < fit.exponent < 2.5
    assert fit.residual > 0


@pytest.mark.parametrize("samples", [[(10, 1.0)], [(10, 1.0), (10, 2.0), (20, 1), (30, 1)], [(10, 0.0), (20, 1), (30, 1), (40, 1)]])
def test_fit_scaling_degenerate(samples):
    with pytest.raises(ValueError):
        fit_scaling(samples)


def test_witnesses_in_reports_validate():
    for name in ("k3", "k4", "k5", "c6", "cube"):
        g = named_graph(name)
        r = diff_run(g)
        for seq in (r.oracle["witness"], r.exact["witness"], r.fuzzy["candidate"]):
            assert is_circuit(g, seq, 0)


def test_levelset_inequality_is_measured_not_flagged():
    doc = sweep_exhaustive(5)
    row = doc["per_n"]["5"]
    assert row["levelsets_equal"] + row["levelsets_unequal"] == row["graphs"]
    assert math.isfinite(doc["totals"]["max_state_nodes_over_bound"])
