import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from mixedfair import Allocation, Instance
from mixedfair.cli import main
from mixedfair.files import (FormatError, allocation_from_json, allocation_to_json, instance_from_json,
                             instance_to_json)
from mixedfair.generators import EXAMPLE1_UTILITIES, PROP3_UTILITIES

from conftest import instance_and_allocation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return _write


def gen(capsys, dist, **flags):
    argv = ["gen", "--dist", dist]
    for k, v in flags.items():
        argv += [f"--{k.replace('_', '-')}", str(v)]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_gen_paper_tables(capsys):
    assert gen(capsys, "paper-prop3")["utilities"] == PROP3_UTILITIES
    assert gen(capsys, "paper-example1")["utilities"] == EXAMPLE1_UTILITIES
    doc = gen(capsys, "mixed", n=3, m=6, p_good=1.0, seed=4)
    assert all(u >= 1 for row in doc["utilities"] for u in row)


def test_gen_is_deterministic(capsys):
    assert gen(capsys, "mixed", seed=9, n=3, m=5) == gen(capsys, "mixed", seed=9, n=3, m=5)
    assert gen(capsys, "all-chores", m=5)["utilities"][0][0] < 0
    rows = gen(capsys, "identical", n=3, m=4)["utilities"]
    assert rows[0] == rows[1] == rows[2]


def test_solve_adjusted_winner_example1(capsys, write):
    path = write("ex1.json", {"agents": 2, "items": 7, "utilities": EXAMPLE1_UTILITIES})
    code, out, err = run(capsys, "solve", path, "-a", "adjusted-winner")
    doc = json.loads(out)
    assert code == 0
    assert doc["allocation"]["bundles"] == [[2, 4], [1, 3, 5, 6, 7]]
    assert [(t["item"], t["direction"]) for t in doc["trace"]["transfers"]] == [
        (1, "winner->loser"), (2, "loser->winner"), (3, "winner->loser")]
    assert {r["property"]: r["holds"] for r in doc["reports"]} == {"EF1": True, "PO": True}
    assert "EF1 ok" in err and "PO ok" in err


def test_solve_prop3(capsys, write):
    path = write("p3.json", {"utilities": PROP3_UTILITIES})
    code, out, err = run(capsys, "solve", path, "-a", "naive-rr")
    assert code == 1 and "EF1 FAIL" in err
    assert json.loads(out)["reports"][0]["violation"] == {"agent": 2, "other": 1}
    code, out, _ = run(capsys, "solve", path, "-a", "double-rr")
    assert code == 0 and json.loads(out)["allocation"]["bundles"] == [[3], [1, 2, 4]]


@pytest.mark.parametrize("alg", ["envy-graph", "serial-dictatorship", "moving-knife", "connected-prop1"])
def test_solve_other_algorithms(capsys, write, alg):
    path = write("ex1.json", {"utilities": EXAMPLE1_UTILITIES})
    code, out, _ = run(capsys, "solve", path, "-a", alg)
    assert code == 0
    doc = json.loads(out)
    assert all(r["holds"] for r in doc["reports"])


def test_solve_usage_errors(capsys, write):
    three = write("three.json", {"utilities": [[1], [1], [1]]})
    code, _, err = run(capsys, "solve", three, "-a", "adjusted-winner")
    assert code == 2 and "exactly 2 agents" in err
    code, _, _ = run(capsys, "solve", write("bad.json", {"utilities": [[0.5]]}), "-a", "double-rr")
    assert code == 2
    code, _, _ = run(capsys, "solve", "/nonexistent.json", "-a", "double-rr")
    assert code == 2
    code, _, _ = run(capsys, "solve", three, "-a", "serial-dictatorship", "--order", "1,1,2")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", three, "-a", "no-such-alg"])
    assert exc.value.code == 2


def test_solve_budget_exit(capsys, write):
    path = write("big.json", {"utilities": [[1] * 9, [2] * 9]})
    code, out, _ = run(capsys, "solve", path, "-a", "adjusted-winner", "--budget", "100")
    assert code == 3
    assert any(r["holds"] is None for r in json.loads(out)["reports"])


def test_check_examples(capsys, write):
    p3 = write("p3.json", {"utilities": PROP3_UTILITIES})
    alloc = write("a.json", {"bundles": [[1, 2], [3, 4]]})
    code, out, _ = run(capsys, "check", p3, alloc, "-p", "EF1")
    assert code == 1
    assert json.loads(out)["reports"][0]["violation"] == {"agent": 2, "other": 1}

    single = write("one.json", {"utilities": [[3, -1, "1/2"]]})
    code, _, _ = run(capsys, "check", single, write("b.json", {"bundles": [[1, 2, 3]]}), "-p", "PROP")
    assert code == 0

    ex1 = write("ex1.json", {"utilities": EXAMPLE1_UTILITIES})
    aw = write("aw.json", {"bundles": [[2, 4], [1, 3, 5, 6, 7]], "complete": True})
    code, out, _ = run(capsys, "check", ex1, aw, "-p", "EF1,PROP1,PO")
    assert code == 0
    assert [r["holds"] for r in json.loads(out)["reports"]] == [True, True, True]


def test_check_rejects_bad_allocations(capsys, write):
    p3 = write("p3.json", {"utilities": PROP3_UTILITIES})
    code, _, _ = run(capsys, "check", p3, write("x.json", {"bundles": [[1, 2], [2]]}))
    assert code == 2
    code, _, _ = run(capsys, "check", p3, write("y.json", {"bundles": [[0], [1]]}))
    assert code == 2
    code, _, _ = run(capsys, "check", p3, write("z.json", {"bundles": [[1], [9]]}))
    assert code == 2
    code, _, _ = run(capsys, "check", p3, write("w.json", {"bundles": [[1], [2]]}), "-p", "PO")
    assert code == 2
    code, _, _ = run(capsys, "check", p3, write("v.json", {"bundles": [[1], [2]]}), "-p", "FOO")
    assert code == 2


def test_check_budget_exit(capsys, write):
    path = write("big.json", {"utilities": [[1] * 9, [2] * 9]})
    alloc = write("a.json", {"bundles": [list(range(1, 10)), []]})
    code, _, _ = run(capsys, "check", path, alloc, "-p", "PO", "--budget", "100")
    assert code == 3


def test_probe_two_agents(capsys, tmp_path):
    code, out, _ = run(capsys, "probe", "--n", "2", "--m", "5", "--count", "30", "-p", "EF1,PO",
                       "--out-dir", str(tmp_path))
    assert code == 0
    assert "exist      30" in out and "rate       100.00%" in out
    assert not list(tmp_path.iterdir())


def test_probe_reports_missing_and_writes_counterexamples(capsys, tmp_path):
    code, out, _ = run(capsys, "probe", "--n", "2", "--m", "1", "--dist", "all-goods", "--count", "3",
                       "-p", "EF", "--out-dir", str(tmp_path))
    assert code == 1
    assert "none       3" in out
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["counterexample_0.json", "counterexample_1.json", "counterexample_2.json"]
    inst = instance_from_json(json.loads((tmp_path / files[0]).read_text()))
    assert (inst.n, inst.m) == (2, 1)


def test_probe_budget_is_counted(capsys):
    code, out, _ = run(capsys, "probe", "--n", "3", "--m", "6", "--count", "2", "--budget", "10")
    assert code == 0 and "too-large  2" in out and "rate       n/a" in out


def test_stdin_stdout_mode(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"utilities": PROP3_UTILITIES})))
    code, out, _ = run(capsys, "solve", "-", "-a", "double-rr")
    assert code == 0 and json.loads(out)["algorithm"] == "double-rr"


def test_output_file(capsys, write, tmp_path):
    path = write("p3.json", {"utilities": PROP3_UTILITIES})
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "solve", path, "-a", "double-rr", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["allocation"]["complete"] is True


def test_rational_round_trip():
    inst = Instance([["1/3", -2, "-7/14"]], names=["Ann"])
    doc = instance_to_json(inst)
    assert doc["utilities"] == [["1/3", -2, "-1/2"]]
    assert instance_from_json(json.loads(json.dumps(doc))) == inst
    assert instance_from_json(doc).u(0, 2) == Fraction(-1, 2)
    with pytest.raises(FormatError):
        instance_from_json({"utilities": [[1.5]]})
    with pytest.raises(FormatError):
        instance_from_json({"agents": 3, "utilities": [[1]]})
    with pytest.raises(FormatError):
        allocation_from_json({"bundles": [[True]]})


@given(instance_and_allocation(complete=False))
def test_file_round_trips(case):
    inst, alloc = case
    assert instance_from_json(json.loads(json.dumps(instance_to_json(inst)))) == inst
    doc = json.loads(json.dumps(allocation_to_json(alloc, inst.m)))
    assert allocation_from_json(doc) == alloc
    assert doc["complete"] == alloc.is_complete(inst.m)


def test_module_entry_point(tmp_path):
    path = tmp_path / "p3.json"
    path.write_text(json.dumps({"utilities": PROP3_UTILITIES}))
    proc = subprocess.run([sys.executable, "-m", "mixedfair", "solve", str(path), "-a", "naive-rr"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["allocation"]["bundles"] == [[1, 3], [2, 4]]
    assert Allocation([{0, 2}, {1, 3}]) == Allocation.from_assignment([0, 1, 0, 1], 2)
