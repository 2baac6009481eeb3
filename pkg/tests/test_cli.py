import csv
import io
import json

import pytest

from grover_period.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_analyze_b123():
    code, text = run("analyze", "--bethe", "1,2,3", "--confirm-bruteforce")
    assert code == 0
    doc = json.loads(text)
    assert doc["classification"]["family"] == "SubdividedB123"
    assert doc["classification"]["parameters"] == {"k": 1}
    assert doc["spectral"]["period"] == 12
    assert doc["bruteforce"]["period"] == 12
    assert doc["level_sizes"] == [1, 1, 2, 6]
    assert doc["omega"] == [1, 2]
    assert all(doc["checks"].values())


def test_analyze_aperiodic_witness():
    code, text = run("analyze", "--bethe", "2,2")
    assert code == 0
    doc = json.loads(text)
    assert doc["spectral"]["periodic"] is False
    assert doc["spectral"]["witness"]["transform"] == "z^4 - (2/3)*z^2 + 1"
    assert doc["hopping_rates"] == ["1/3", "2/3"]


def test_analyze_path():
    _, text = run("analyze", "--bethe", "1,1,1,1")
    doc = json.loads(text)
    assert doc["classification"]["family"] == "Path"
    assert doc["spectral"]["period"] == 8


def test_simulate_p2(tmp_path):
    path = tmp_path / "p2.txt"
    path.write_text("0 1\n")
    code, text = run("simulate", "--graph", str(path), "--steps", "4")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    at = {(int(r["time"]), int(r["vertex"])): r["probability"] for r in rows}
    for t in range(5):
        assert at[(t, 1 - t % 2)] == "1/1"
        assert at[(t, t % 2)] == "0/1"


def test_simulate_c3_returns(tmp_path):
    path = tmp_path / "c3.txt"
    path.write_text("0 1\n1 2\n2 0\n")
    _, text = run("simulate", "--graph", str(path), "--steps", "3", "--initial-arc", "2")
    rows = list(csv.DictReader(io.StringIO(text)))
    by_t = {}
    for r in rows:
        by_t.setdefault(r["time"], []).append((r["vertex"], r["probability"]))
    assert by_t["0"] == by_t["3"]


def test_simulate_zero_steps_and_numeric():
    _, text = run("simulate", "--bethe", "2", "--steps", "0")
    assert text.splitlines() == ["time,vertex,probability", "0,0,0/1", "0,1,1/1", "0,2,0/1"]
    _, text = run("simulate", "--bethe", "2", "--steps", "1", "--numeric", "--format", "json")
    doc = json.loads(text)
    assert {d["probability"] for d in doc if d["time"] == 1} == {"0.0", "1.0"}


def test_enumerate():
    code, text = run("enumerate", "--max-levels", "2", "--max-degree", "2", "--max-vertices", "5",
                     "--confirm-bruteforce")
    assert code == 0
    lines = [json.loads(l) for l in text.splitlines()]
    assert [l["spec"] for l in lines[:-1]] == ["1", "1,1", "1,2", "2", "2,1"]
    assert all(set(l) == {"spec", "classifier", "spectral", "bruteforce", "agreement"} for l in lines[:-1])
    assert lines[-1]["summary"]["disagreements"] == 0


def test_enumerate_with_workers():
    code, text = run("enumerate", "--max-levels", "2", "--max-degree", "3", "--max-vertices", "10",
                     "--workers", "2")
    serial = run("enumerate", "--max-levels", "2", "--max-degree", "3", "--max-vertices", "10")[1]
    assert code == 0 and text == serial


def test_spectrum():
    code, text = run("spectrum", "--bethe", "1,1")
    assert code == 0
    doc = json.loads(text)
    assert doc["max_mismatch"] < 1e-9
    assert doc["lifted"]["mult_plus_one"] == 1


@pytest.mark.parametrize("argv", [
    ["analyze", "--bethe", "0,1"],
    ["analyze", "--bethe", "x"],
    ["analyze"],
    ["simulate", "--graph", "/nonexistent/file"],
    ["simulate", "--bethe", "2", "--steps", "-1"],
    ["simulate", "--bethe", "2", "--initial-arc", "9"],
    ["simulate", "--bethe", "3,3", "--numeric", "--dense-limit", "4"],
    ["enumerate", "--max-levels", "0"],
    ["frobnicate"],
])
def test_bad_input_exits_2(argv):
    assert run(*argv)[0] == 2


def test_disconnected_graph_exits_2(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\n2 3\n")
    assert run("spectrum", "--graph", str(path))[0] == 2
