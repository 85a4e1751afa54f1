import json
import subprocess
import sys

import pytest

from contextus.cli import main

SCHEMA_FOR = {
    "poset": "poset.json",
    "downsets": "downsets.json",
    "nonbool": "nonbool.json",
    "contextuality": "contextuality.json",
    "mbqc-table": "mbqc-table.json",
    "mbqc-trace": "mbqc-trace.json",
}

AB_DOC = {"n": 3, "m": 2, "state": {"type": "ghz", "n": 3}, "obs": [["X", "Y"]] * 3, "Q": [[1, 0], [0, 1], [1, 1]]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def write(tmp_path, doc, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_nonbool_example(capsys):
    out = run_json(capsys, "scenario", "ghz-or", "nonbool")
    assert out["downset_count"] == 113 and out["q"] == "111/113"


def test_contextuality_example(capsys):
    out = run_json(capsys, "scenario", "ghz-or", "contextuality", "--state-dependent")
    assert out["contextual"] is True and out["sections_count"] == 0 and out["witness"] is None
    out = run_json(capsys, "scenario", "ghz-or", "contextuality")
    assert out["contextual"] is False and out["sections_count"] == 64


def test_trace_example(capsys):
    out = run_json(capsys, "scenario", "ghz-or", "mbqc-trace", "--plan", "1:X:+,2:X:+")
    assert out["q_sequence"] == ["111/113", "3/5", "0"]
    assert out["steps"][1]["residual_table"] == {"00": 0, "01": 1}


def test_mbqc_table(capsys):
    out = run_json(capsys, "scenario", "ghz-or", "mbqc-table", "--seed", "3")
    assert out["table"] == {"00": 0, "01": 1, "10": 1, "11": 1}
    assert out["linear"] is False and out["state_dependent_contextual"] is True
    assert {k: v["output"] for k, v in out["sampled"].items()} == out["table"]


def test_peres_mermin(capsys):
    assert run_json(capsys, "scenario", "peres-mermin", "contextuality")["contextual"] is True
    assert len(run_json(capsys, "scenario", "peres-mermin", "poset")["labels"]) == 15


@pytest.mark.parametrize("scenario", ["ghz-or", "bell-parity", "peres-mermin"])
@pytest.mark.parametrize("verb", list(SCHEMA_FOR))
def test_outputs_validate(capsys, schema_validator, scenario, verb):
    extra = ["--plan", "1:X:+"] if verb == "mbqc-trace" else []
    if verb == "contextuality" and scenario != "peres-mermin":
        extra = ["--state-dependent", "--dump"]
    if verb == "nonbool" and scenario == "bell-parity":
        extra = ["--tables"]
    code, out, err = run(capsys, "scenario", scenario, verb, *extra)
    if scenario == "peres-mermin" and verb.startswith("mbqc"):
        assert code == 2 and "not an MBQC spec" in err
        return
    assert code == 0, err
    schema_validator(SCHEMA_FOR[verb], json.loads(out))


def test_repeat_runs_are_byte_identical():
    cmd = [sys.executable, "-m", "contextus", "scenario", "ghz-or", "mbqc-trace", "--plan", "1:X,2:Y", "--seed", "11"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_input_spec_file(capsys, tmp_path):
    path = write(tmp_path, AB_DOC)
    assert run_json(capsys, "nonbool", "--input", path)["q"] == "111/113"
    assert run_json(capsys, "mbqc-table", "--input", path)["table"]["11"] == 1


def test_input_strings_and_contexts(capsys, tmp_path):
    doc = {"strings": [list(s) for s in ("XXX", "XXY", "XYY", "YYX")], "state": {"type": "ghz", "n": 3}}
    out = run_json(capsys, "poset", "--input", write(tmp_path, doc))
    assert out["labels"][:3] == ["V1", "V2", "V3"]
    doc = {"contexts": [["+ XI", "+ IX"], ["+ XX", "+ ZZ"]], "labels": ["A", "B"]}
    out = run_json(capsys, "poset", "--input", write(tmp_path, doc))
    assert out["labels"] == ["A", "B", "XX"] and out["cover_edges"] == [["XX", "A"], ["XX", "B"]]


def test_bare_poset_input(capsys, tmp_path):
    doc = {"labels": ["x", "a", "b"], "cover_edges": [["x", "a"], ["x", "b"]]}
    path = write(tmp_path, doc)
    assert run_json(capsys, "nonbool", "--input", path) == {"downset_count": 5, "complemented_count": 2, "q": "3/5"}
    assert run_json(capsys, "downsets", "--input", path)["downsets"][0] == []
    code, _, _ = run(capsys, "contextuality", "--input", path)
    assert code == 1


def test_dot_output(capsys):
    code, out, _ = run(capsys, "scenario", "ghz-or", "poset", "--format", "dot")
    assert code == 0
    assert out.startswith('digraph "ghz-or" {') and "rankdir=BT" in out
    assert out.count(" -> ") == 12 and '"XII" -> "V1";' in out
    code, _, _ = run(capsys, "scenario", "ghz-or", "mbqc-trace", "--format", "dot")
    assert code == 2


def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "nonbool", "--input", str(bad))[0] == 2
    assert run(capsys, "nonbool", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "nonbool", "--input", write(tmp_path, {"Q": []}))[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_plan_and_determinism_errors(capsys, tmp_path):
    assert run(capsys, "scenario", "ghz-or", "mbqc-trace", "--plan", "1:X:+,1:Y:+")[0] == 3
    assert run(capsys, "scenario", "ghz-or", "mbqc-trace", "--plan", "1:Z:+")[0] == 3
    assert run(capsys, "scenario", "ghz-or", "mbqc-trace", "--plan", "1:X:+,2:X:+,3:X:-")[0] == 3
    doc = {"n": 1, "m": 1, "state": {"type": "product", "letters": "+"}, "obs": [["X", "Z"]], "Q": [[1]]}
    code, _, err = run(capsys, "mbqc-table", "--input", write(tmp_path, doc))
    assert code == 3 and "input 1" in err


def test_capacity_errors(capsys, tmp_path, monkeypatch):
    labels = [f"e{k}" for k in range(25)]
    assert run(capsys, "downsets", "--input", write(tmp_path, {"labels": labels}))[0] == 4
    doc = {"strings": [["X"] * 13], "state": {"type": "ghz", "n": 13}}
    assert run(capsys, "poset", "--input", write(tmp_path, doc))[0] == 4
    monkeypatch.setenv("CONTEXTUS_MAX_QUBITS", "13")
    assert run(capsys, "poset", "--input", write(tmp_path, doc))[0] == 0
    monkeypatch.setenv("CONTEXTUS_MAX_QUBITS", "40")
    doc = {"strings": [["X"] * 15], "state": {"type": "ghz", "n": 15}}
    assert run(capsys, "poset", "--input", write(tmp_path, doc))[0] == 4
