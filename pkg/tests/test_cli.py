import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszulkit import cli


def run(capsys, *args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_exit_codes(capsys):
    assert run(capsys, "check-operad", "--preset", "lie", "--max-arity", "4")[0] == 0
    assert run(capsys, "check-algebra", "--preset", "kxy", "--max-weight", "3")[0] == 0
    code, out, _ = run(capsys, "check-algebra", "--preset", "nk", "--max-weight", "3", "--format", "json")
    assert code == 1
    assert json.loads(out)["verdict"]["first_failure"] == 3
    assert run(capsys, "check-algebra", "--preset", "nope")[0] == 2


def test_mixed_inputs_take_the_worst_code(capsys):
    assert run(capsys, "check-algebra", "--preset", "kxy", "--preset", "nk", "--max-weight", "3")[0] == 1
    assert run(capsys, "check-algebra", "--preset", "kxy", "--preset", "nope", "--max-weight", "3")[0] == 2


OPERAD = {"kind": "operad", "name": "c", "max_arity": 3, "generators": [{"name": "mu", "arity": 2, "rep": "trivial"}]}


@pytest.mark.parametrize("doc,code", [
    ('{"kind": "operad",', "json-syntax"),
    ({"kind": "monoid"}, "schema"),
    ({"kind": "operad", "generators": [{"name": "mu"}]}, "schema"),
    (dict(OPERAD, relations=[[{"coef": "1", "tree": "mu(mu(1, 2), 3"}]]), "malformed-tree"),
    (dict(OPERAD, relations=[[{"coef": "1", "tree": "mu(mu(1, 2, 4), 3)"}]]), "arity-mismatch"),
    (dict(OPERAD, relations=[[{"coef": "1", "tree": "nu(mu(1, 2), 3)"}]]), "unknown-generator"),
    (dict(OPERAD, relations=[[{"coef": "1", "tree": "mu(1, 2)"}]]), "relation-weight"),
    (dict(OPERAD, relations=[[{"coef": 0.5, "tree": "mu(mu(1, 2), 3)"}]]), "coefficient"),
    (dict(OPERAD, generators=[{"name": "f", "arity": 2, "rep": "explicit", "matrices": {"21": [["2"]]}}]),
     "representation"),
    ({"kind": "operad", "preset": "ass"}, "unknown-preset"),
    ({"kind": "algebra", "operad": {"preset": "as"}, "generators": [{"name": "x"}],
      "relations": [[{"coef": "1", "op": "m", "inputs": ["x", "z"]}]]}, "unknown-generator"),
    ({"kind": "algebra", "operad": {"preset": "as"}, "generators": [{"name": "x"}],
      "relations": [[{"coef": "1", "op": "m", "inputs": ["x", {"op": "m", "inputs": ["x", "x"]}]}]]},
     "relation-outside-EV"),
    ({"kind": "algebra", "operad": {"preset": "as"}, "generators": [{"name": "x"}],
      "relations": [[{"coef": "1", "op": "m", "inputs": ["x"]}]]}, "arity-mismatch"),
])
def test_error_codes(tmp_path, capsys, doc, code):
    path = write(tmp_path, "p.json", doc)
    rc, out, _ = run(capsys, "report", path, "--format", "json")
    assert rc == 2
    assert json.loads(out)["error"]["code"] == code


def test_missing_file(capsys):
    rc, out, _ = run(capsys, "report", "/nonexistent.json")
    assert rc == 2 and "[io]" in out


def test_truncation_reports_needed_bound(capsys, monkeypatch):
    from koszulkit import operad as op

    def boom(pres):
        raise op.TruncationError("too small", needed=(5, 4))

    monkeypatch.setattr(cli, "run_check_operad", boom)
    rc, out, _ = run(capsys, "check-operad", "--preset", "as", "--format", "json")
    assert rc == 2
    assert json.loads(out)["error"] == {"code": "truncation", "where": "", "message": "too small", "needed": [5, 4]}


def test_dual_round_trip_operad(tmp_path, capsys):
    rc, out, _ = run(capsys, "dual", "--preset", "com", "--max-arity", "4")
    assert rc == 0
    d = json.loads(out)
    assert d["kind"] == "operad" and d["generators"][0]["rep"] == "sign"
    rc, out, _ = run(capsys, "check-operad", write(tmp_path, "d.json", out), "--format", "json")
    assert rc == 0 and json.loads(out)["dims"]["P"] == [1, 1, 2, 6]
    rc, out2, _ = run(capsys, "dual", str(tmp_path / "d.json"))
    assert json.loads(out2) == {"schema": cli.PRESENTATION_SCHEMA, "kind": "operad", "preset": "com", "max_arity": 4}


def test_dual_round_trip_algebra(tmp_path, capsys):
    _, out, _ = run(capsys, "dual", "--preset", "kxy", "--max-weight", "3")
    once = write(tmp_path, "d1.json", out)
    _, out, _ = run(capsys, "dual", once)
    twice = write(tmp_path, "d2.json", out)
    assert json.loads(out)["operad"] == {"preset": "as", "max_arity": 4}
    _, a, _ = run(capsys, "report", "--preset", "kxy", "--max-weight", "3", "--format", "json")
    _, b, _ = run(capsys, "report", twice, "--max-weight", "3", "--format", "json")
    _, c, _ = run(capsys, "report", once, "--max-weight", "3", "--format", "json")
    assert json.loads(a)["dims"] == json.loads(b)["dims"]
    assert json.loads(c)["dims"]["A"] == json.loads(a)["dims"]["A_dual"]


def test_coefficients_normalized(tmp_path, capsys):
    doc = dict(OPERAD, relations=[[{"coef": "2/4", "tree": "mu(mu(1, 2), 3)"},
                                   {"coef": "-1/2", "tree": "mu(1, mu(2, 3))"}]])
    pres = cli.parse_document(json.dumps(doc))
    coefs = {c for r in cli.presentation_json(pres)["relations"] for c in (t["coef"] for t in r)}
    assert coefs <= {"1", "-1", "1/2", "-1/2"}


@given(st.fractions())
def test_coefficient_round_trip(q):
    assert cli.parse_coefficient(cli.format_coefficient(q), "") == q


def test_report_is_deterministic_and_jobs_preserve_order(capsys):
    args = ["report", "--preset", "x2", "--preset", "lie-ab2", "--preset", "module", "--max-weight", "3",
            "--format", "json"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    _, c, _ = run(capsys, *args, "--jobs", "3")
    assert a == b == c
    assert [r["name"] for r in json.loads(a)] == ["x2", "lie-ab2", "kxy-triv"]


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.txt"
    run(capsys, "bar", "--preset", "x2", "--max-weight", "3", "-o", str(out))
    assert "bar Betti" in out.read_text()


def test_presets_listing(capsys):
    rc, out, _ = run(capsys, "presets")
    names = [e["name"] for e in json.loads(out)]
    assert rc == 0 and {"as", "com", "lie", "kxy", "nk", "module"} <= set(names)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "koszulkit.cli", "check-operad", "--preset", "as", "--max-arity", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "dims P: 1 2 6" in r.stdout


def test_bounds_validated(capsys):
    with pytest.raises(SystemExit):
        cli.main(["report", "--preset", "x2", "--max-weight", "1"])


PRESENTATIONS = __import__("pathlib").Path(__file__).parent.parent / "presentations"


@pytest.mark.parametrize("name,cmd,code", [("lie.json", "check-operad", 0), ("kxy.json", "check-algebra", 0),
                                           ("nk.json", "check-algebra", 1), ("sym-x2.json", "check-algebra", 0)])
def test_shipped_presentations(capsys, name, cmd, code):
    rc, out, _ = run(capsys, cmd, str(PRESENTATIONS / name), "--max-weight", "3", "--format", "json")
    assert rc == code
    rep = json.loads(out)
    if name == "nk.json":
        assert rep["verdict"]["first_failure"] == 3


def test_file_and_preset_agree(capsys):
    _, a, _ = run(capsys, "report", str(PRESENTATIONS / "kxy.json"), "--max-weight", "3", "--format", "json")
    _, b, _ = run(capsys, "report", "--preset", "kxy", "--max-weight", "3", "--format", "json")
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "input"}
    assert strip(a) == strip(b)
