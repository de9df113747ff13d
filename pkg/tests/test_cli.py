import json
from pathlib import Path

import jsonschema
import pytest

from qcartan import gl_q2
from qcartan.cli import main

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report-schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def instance_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("inst") / "gl_q2.json"
    gl_q2().dump(path)
    return str(path)


def test_json_report_validates(capsys, instance_file):
    code, out, _ = run(capsys, "verify", "--instance", instance_file, "--suite", "braid",
                       "--report", "json")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    suite = report["suites"][0]
    assert suite["failed"] == 0 and report["summary"]["ok"]
    assert len(suite["artifacts"]["sigma"]) == 16
    assert report["q"] is None


def test_text_and_json_verdicts_agree(capsys, instance_file):
    _, text, _ = run(capsys, "verify", "--instance", instance_file, "--suite", "duality")
    _, js, _ = run(capsys, "verify", "--instance", instance_file, "--suite", "duality",
                   "--report", "json")
    rows = json.loads(js)["suites"][0]["checks"]
    lines = [ln for ln in text.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert len(lines) == len(rows)
    for ln, row in zip(lines, rows):
        assert ln.startswith("PASS" if row["status"] == "pass" else "FAIL")
        assert row["check"] in ln


def test_specialized_q(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "defect-index", "--q", "1",
                       "--report", "json")
    report = json.loads(out)
    assert code == 0 and report["q"] == "1"
    jsonschema.validate(report, SCHEMA)


def test_raw_normalization(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "leibniz", "--normalization", "raw",
                       "--report", "json")
    assert code == 0
    assert json.loads(out)["normalization"] == "raw"


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "nope"],
    ["verify", "--q", "one"],
    ["verify", "--q", "0"],
    ["verify", "--instance", "/nonexistent/instance.json"],
    ["verify", "--degree-cap", "0"],
    ["eval", "d(a * b"],
])
def test_configuration_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "configuration error" in err
    assert out == ""


def test_prespecialized_instance_with_q(capsys, tmp_path):
    path = tmp_path / "q2.json"
    gl_q2().specialize(2).dump(path)
    code, _, err = run(capsys, "verify", "--instance", str(path), "--q", "3")
    assert code == 2 and "already specialized" in err


def test_malformed_instance(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "verify", "--instance", str(path))
    assert code == 2


def test_failing_check_exits_1(capsys, tmp_path, monkeypatch):
    import qcartan.suites as suites
    from qcartan.suites import Check, Outcome

    monkeypatch.setitem(suites.SUITES, "duality",
                        lambda ctx: [Check("deliberately false", lambda: Outcome(False, "1", "2"))])
    monkeypatch.setitem(suites.EXPRESSIONS, "duality", [])
    code, out, _ = run(capsys, "verify", "--suite", "duality")
    assert code == 1
    assert "FAIL  deliberately false" in out


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "a*b - q*b*a")
    assert code == 0 and out.strip() == "0"
