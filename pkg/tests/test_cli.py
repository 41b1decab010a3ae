import json
from pathlib import Path

import pytest

from hamlab.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_solve_text(capsys):
    code, out = run(capsys, "solve", "--graph", "k3", "--algo", "exact")
    assert code == 0
    assert out.out.splitlines()[:2] == ["exact: yes", "circuit: 0 1 2"]


@pytest.mark.parametrize("algo", ["oracle", "exact", "fuzzy"])
def test_solve_json_file(capsys, algo):
    code, out = run(capsys, "solve", "--input", str(DATA / "petersen.txt"), "--algo", algo, "--format", "json")
    doc = json.loads(out.out)
    assert code == 0
    assert doc["algo"] == algo
    assert doc["has_circuit"] is (algo == "fuzzy")


def test_diff_exit_codes(capsys):
    code, out = run(capsys, "diff", "--graph", "k4")
    assert code == 0 and json.loads(out.out)["disagreements"] == []
    code, out = run(capsys, "diff", "--input", str(DATA / "petersen.txt"))
    assert code == 10


def test_diff_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, _ = run(capsys, "diff", "--graph", "c6", "--output", str(target), "--timings")
    assert code == 0
    assert "timings" in json.loads(target.read_text())


def test_sweep_and_random(capsys):
    code, out = run(capsys, "sweep", "--max-n", "4")
    assert code == 0 and json.loads(out.out)["totals"]["graphs"] == 72
    code, out = run(capsys, "random", "--n", "5", "--p", "1", "--trials", "1", "--seed", "3")
    assert code == 0


def test_sweep_csv_summary(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out = run(capsys, "sweep", "--max-n", "4", "--csv", str(target))
    doc = json.loads(out.out)
    lines = target.read_text().splitlines()
    assert lines[0] == "n,graphs,oracle_hamiltonian,fuzzy_nonempty,levelsets_equal,levelsets_unequal"
    assert [line.split(",")[:2] for line in lines[1:]] == [["3", "8"], ["4", "64"]]
    assert int(lines[2].split(",")[2]) == doc["per_n"]["4"]["oracle_hamiltonian"]


def test_sweep_refuses_large_n(capsys):
    code, out = run(capsys, "sweep", "--max-n", "7")
    assert code == 1 and "override" in out.err


def test_minimize_text(capsys):
    code, out = run(capsys, "minimize", "--graph", "k5", "--predicate", "oracle-yes")
    assert code == 0
    assert out.out == "3 3\n0 1\n0 2\n1 2\n"


def test_bench(capsys):
    code, out = run(capsys, "bench", "--n-list", "5,6,7,8", "--p", "0.5", "--trials", "2", "--seed", "1")
    doc = json.loads(out.out)
    assert code == 0
    assert set(doc["fit"]) == {"exponent", "intercept", "residual", "points"}


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("5 5\n0 0\n")
    code, out = run(capsys, "solve", "--input", str(bad))
    assert code == 1 and "line 2" in out.err
