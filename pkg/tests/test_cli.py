import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from lasagna.cli import run
from lasagna.corpus import CLOSED, glue_corpus, square_tangles
from lasagna.diagram import cap, cup, unknot
from lasagna.handles import closed_braid
from lasagna.report import schema_text, validate
from lasagna.textio import serialize_diagram

ROOT = Path(__file__).resolve().parents[1]


def _call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    items = {"unknot": unknot(), "cup": cup(), "cap": cap(), "trefoil": CLOSED["trefoil-right"](),
             "hopf": CLOSED["hopf+"](), "big": closed_braid(2, [1] * 20)[0],
             "twist": square_tangles()["full-twist-1"]}
    out = {}
    for name, d in items.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(serialize_diagram(d))
        out[name] = p
    up, low = glue_corpus()[2][1:]
    for name, d in (("upper", up), ("lower", low)):
        p = tmp_path / f"{name}.txt"
        p.write_text(serialize_diagram(d))
        out[name] = p
    (tmp_path / "module.json").write_text(json.dumps({"dims": [[0, 0, 2]]}))
    (tmp_path / "relations.json").write_text(json.dumps(
        {"relations": [{"epsilon": 0, "blocks": [{"degree": [0, 0], "matrix": [[1, 1], [1, 1]]}]}]}))
    out["module"] = tmp_path / "module.json"
    out["relations"] = tmp_path / "relations.json"
    (tmp_path / "bad.txt").write_text("crossings: (1, 2\n")
    out["bad"] = tmp_path / "bad.txt"
    return out


def test_kh_unknot(files):
    code, out, _ = _call("kh", files["unknot"])
    assert code == 0
    assert "t^0 q^1 + t^0 q^-1" in out


def test_glue_check_cup_cap(files):
    code, out, _ = _call("glue-check", "--upper", files["cup"], "--lower", files["cap"])
    assert code == 0
    assert "pass: true" in out


def test_exit_codes(files, tmp_path):
    assert _call("kh", files["big"])[0] == 3
    assert _call("arc-algebra", "--n", "5")[0] == 3
    assert _call("kh", files["bad"])[0] == 2
    assert _call("kh", tmp_path / "missing.txt")[0] == 2
    assert _call("kh", files["unknot"], "--bogus")[0] == 2
    assert _call("kh", files["unknot"], "--threads", "0")[0] == 2
    assert _call("kh", files["unknot"], "--field", "4")[0] == 2
    assert _call("kh", files["cup"])[0] == 2
    assert _call("handle2", "--link", files["unknot"], "--knot", files["unknot"], "--framing", "1")[0] == 2
    assert _call("handle2", "--link", files["unknot"], "--knot", files["trefoil"])[0] == 2
    assert _call("handle2", "--link", files["unknot"], "--knot", files["unknot"],
                 "--max-cable", "3", "--cable-cap", "2")[0] == 3


def test_error_messages_go_to_stderr(files):
    code, out, err = _call("kh", files["bad"])
    assert out == "" and "line 1" in err


def test_figure(files, tmp_path):
    fig = tmp_path / "kh.png"
    assert _call("kh", files["trefoil"], "--figure", fig)[0] == 0
    assert fig.read_bytes()[:4] == b"\x89PNG"


def test_schema_file_is_current():
    assert (ROOT / "schema" / "report.schema.json").read_text() == schema_text()


def _commands(files):
    return [
        ["kh", files["trefoil"]], ["kh", files["hopf"], "--theory", "lee", "--field", "Q"],
        ["jones", files["trefoil"]], ["arc-algebra", "--n", "2"], ["bimodule", files["twist"]],
        ["glue-check", "--upper", files["upper"], "--lower", files["lower"]],
        ["handle1", "--tangle", files["twist"]],
        ["handle2", "--link", files["hopf"], "--knot", files["unknot"], "--max-cable", "2"],
        ["handle3", "--module", files["module"], "--relations", files["relations"]],
        ["handle4", "--module", files["module"]], ["handle4"],
        ["selftest", "--only", "1"],
    ]


def test_machine_reports_validate(files):
    for cmd in _commands(files):
        code, out, err = _call(*cmd, "--format", "machine")
        assert code == 0, (cmd, err)
        report = json.loads(out)
        validate(report)
        assert report["command"] == cmd[0]


def test_human_reports_are_sorted(files):
    code, out, _ = _call("kh", files["trefoil"])
    keys = [line.split(":")[0] for line in out.splitlines()[3:]]
    assert keys == sorted(keys)


def test_threads_do_not_change_output(files):
    for cmd in _commands(files)[:8]:
        assert _call(*cmd, "--threads", "1") == _call(*cmd, "--threads", "8")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lasagna", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "handle2" in r.stdout
