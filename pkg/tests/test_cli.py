import json
import subprocess
import sys

import pytest

from projdyn.cli import main
from projdyn.core import dumps, map_to_json
from projdyn.fixtures import fixture_text, load_fixture


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_period_7(tmp_path, capsys):
    out = tmp_path / "m.json"
    code, text, _ = run(capsys, "construct", "--dim", "2", "--period", "7", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data == json.loads(text)
    assert data["certification"]["period"] == 7
    assert len(data["transcript"]) == 7


def test_construct_warmup_choices(capsys):
    code, text, _ = run(capsys, "construct", "--dim", "1", "--period", "3", "--choices", "c=1,b:=1-a")
    assert code == 0
    assert json.loads(text)["map"] == map_to_json(load_fixture("sec1_p1_period3").map)


def test_construct_above_bound(capsys):
    code, _, err = run(capsys, "construct", "--dim", "2", "--period", "8")
    assert code == 2
    assert "exceeds the construction bound" in err


def test_construct_bad_flags(capsys):
    assert run(capsys, "construct", "--dim", "two", "--period", "3")[0] == 1
    assert run(capsys, "construct", "--dim", "2", "--period", "3", "--choices", "zz")[0] == 1
    assert run(capsys, "construct", "--dim", "0", "--period", "1")[0] == 1


def test_construct_budget_exhausted(capsys):
    assert run(capsys, "construct", "--dim", "3", "--period", "11", "--budget", "1")[0] == 2


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--map", "fixture:ex1_p2_period9", "--period", "9")[0] == 0
    code, text, _ = run(capsys, "verify", "--map", "fixture:ex1_p2_period9", "--period", "3")
    assert code == 3 and json.loads(text)["error"] == "NotPeriodic"
    code, text, _ = run(capsys, "verify", "--map", "fixture:ex1_p2_period9", "--period", "18")
    assert code == 3 and json.loads(text)["error"] == "PeriodDivides"


def test_verify_without_period_detects_orbit(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(dumps(map_to_json(load_fixture("ex1_p2_period9").map)))
    code, text, _ = run(capsys, "verify", "--map", str(path), "--point", "0,0,1")
    assert code == 0 and json.loads(text)["period"] == 9


def test_verify_respects_iteration_cap(tmp_path, capsys, monkeypatch):
    path = tmp_path / "m.json"
    path.write_text(dumps(map_to_json(load_fixture("ex1_p2_period9").map)))
    monkeypatch.setenv("PROJDYN_MAX_ITERS", "5")
    code, text, _ = run(capsys, "verify", "--map", str(path))
    assert code == 3 and json.loads(text)["outcome"] == "Exhausted"


def test_certify(tmp_path, capsys):
    code, text, _ = run(capsys, "certify", "--map", "fixture:ex2_p3_period24")
    assert code == 0 and json.loads(text)["decision"] == "morphism"
    cz = {"dimension": 2, "degree": 2, "coordinates": [
        [{"exponents": [2, 0, 0], "coefficient": "1"}],
        [{"exponents": [1, 1, 0], "coefficient": "1"}],
        [{"exponents": [0, 0, 2], "coefficient": "1"}]]}
    path = tmp_path / "cz.json"
    path.write_text(json.dumps(cz))
    code, text, _ = run(capsys, "certify", "--map", str(path))
    assert code == 3 and json.loads(text)["decision"] == "common_zero"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "certify", "--map", str(bad))[0] == 1
    assert run(capsys, "certify", "--map", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "certify", "--map", "fixture:nope")[0] == 1


def test_product_reproduces_published_map(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, _, _ = run(capsys, "product", "--left", "fixture:ex2_p2_period8",
                     "--right", "fixture:sec1_p1_period3", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    published = json.loads(fixture_text("ex2_p3_period24"))
    assert dumps(data["map"]) == dumps(published["map"])
    assert data["period"] == 24 and data["point"] == published["point"]


def test_plan(capsys):
    code, text, _ = run(capsys, "plan", "--dim", "3")
    assert code == 0 and json.loads(text)["achieved"] >= 21
    code, text, _ = run(capsys, "plan", "--dim", "4", "--extra-period", "2:8", "--realize")
    data = json.loads(text)
    assert code == 0 and data["achieved"] == 56 and data["certification"]["period"] == 56
    assert run(capsys, "plan", "--dim", "4", "--extra-period", "2:x")[0] == 1
    assert run(capsys, "plan", "--dim", "2", "--extra-period", "2:10", "--realize")[0] == 2


def test_check_fixtures(capsys):
    code, text, _ = run(capsys, "paper-check")
    assert code == 0 and json.loads(text)["ok"]
    code, text, _ = run(capsys, "check-fixtures", "--human")
    assert code == 0 and text.count("ok") == 8


def test_human_flag_either_side(capsys):
    a = run(capsys, "--human", "verify", "--map", "fixture:sec1_p1_period3")
    b = run(capsys, "verify", "--map", "fixture:sec1_p1_period3", "--human")
    assert a == b and a[0] == 0 and "primitive period 3" in a[1]


def test_usage_errors(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "--help")[0] == 0


@pytest.mark.parametrize("seed", ["1", "abc"])
def test_console_runs_are_byte_identical(tmp_path, seed):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        subprocess.run([sys.executable, "-m", "projdyn", "construct", "--dim", "3", "--period", "11",
                        "--seed", seed, "--out", str(path)], check=True, capture_output=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_realized_plan_files_are_byte_identical(tmp_path, capsys):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        assert run(capsys, "plan", "--dim", "3", "--realize", "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
