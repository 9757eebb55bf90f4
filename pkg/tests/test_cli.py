import csv
import io
import json
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from cantorkit import properties
from cantorkit.cli import main

Fr = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_iterate_depth_two(capsys):
    code, out, _ = run(capsys, "iterate", "--depth", "2")
    assert code == 0
    got = [(Fr(r["left"]), Fr(r["right"])) for r in rows(out)]
    assert got == [(0, Fr(1, 9)), (Fr(2, 9), Fr(1, 3)), (Fr(2, 3), Fr(7, 9)), (Fr(8, 9), 1)]


def test_iterate_depth_zero(capsys):
    _, out, _ = run(capsys, "iterate", "--depth", "0")
    assert [(r["left"], r["right"]) for r in rows(out)] == [("0/1", "1/1")]


def test_svc(capsys):
    _, out, _ = run(capsys, "svc", "--m", "4", "--depth", "1")
    assert [(r["left"], r["right"]) for r in rows(out)] == [("0/1", "3/8"), ("5/8", "1/1")]


def test_decimals_are_labelled(capsys):
    _, out, _ = run(capsys, "iterate", "--depth", "1", "--decimals")
    r = rows(out)[0]
    assert r["right"] == "1/3" and r["right_approx"] == "0.333333333333"


def test_member(capsys):
    _, out, _ = run(capsys, "member", "1/4", "1/2", "--format", "json")
    recs = json.loads(out)
    assert recs[0]["status"] == "in"
    assert recs[1]["status"] == "removed" and recs[1]["level"] == 1
    assert (recs[1]["gap_left"], recs[1]["gap_right"]) == ("1/3", "2/3")


def test_staircase(capsys):
    _, out, _ = run(capsys, "staircase", "--depth", "1")
    assert [(r["x"], r["F"]) for r in rows(out)] == [
        ("0/1", "0/1"), ("1/3", "1/2"), ("2/3", "1/2"), ("1/1", "1/1")]
    _, out, _ = run(capsys, "staircase", "--grid", "27")
    ys = [Fr(r["F"]) for r in rows(out)]
    assert len(ys) == 28 and ys == sorted(ys)


def test_approx(capsys):
    _, out, _ = run(capsys, "approx", "--depth", "4")
    recs = rows(out)
    assert len(recs) == 6
    assert all(r["within_bound"] == "true" for r in recs)


def test_quotient(capsys):
    _, out, _ = run(capsys, "quotient", "--depth", "3")
    recs = rows(out)
    assert recs[0]["quotient"] == "3/4"
    assert {r["ratio"] for r in recs[1:]} == {"9/4"}
    _, out, _ = run(capsys, "quotient", "--depth", "2", "--component", "phi", "--format", "json")
    dump = json.loads(out)
    assert [s["ratio"] for s in dump["steps"][1:]] == ["9/2", "9/2"]
    assert "note" in dump


def test_curves(capsys):
    _, out, _ = run(capsys, "curve2", "--depth", "1")
    recs = rows(out)
    assert len(recs) == 4
    assert {"t": "1/3", "x": "1/2", "y": "1/1", "on_cantor": "true"} in recs
    _, out, _ = run(capsys, "curve2", "--depth", "0")
    assert [(r["x"], r["y"]) for r in rows(out)] == [("0/1", "0/1"), ("1/1", "1/1")]
    _, out, _ = run(capsys, "curve3", "--depth", "1")
    assert all(set(r) == {"t", "x", "y", "z", "on_cantor"} for r in rows(out))


def test_curve3_svg_is_usage_error(capsys):
    code, _, err = run(capsys, "curve3", "--depth", "1", "--format", "svg")
    assert code == 2 and "svg" in err


def test_preimage(capsys):
    _, out, _ = run(capsys, "preimage", "1/2", "1/2")
    assert rows(out)[0]["t"] == "1/9"
    _, out, _ = run(capsys, "preimage", "1", "0")
    assert rows(out)[0]["t"] == "3/4"


@pytest.mark.parametrize("cmd", [["iterate", "--depth", "3"], ["staircase", "--depth", "2"],
                                 ["curve2", "--depth", "2"], ["svc", "--depth", "2"]])
def test_svg_is_well_formed(capsys, cmd):
    _, out, _ = run(capsys, *cmd, "--format", "svg")
    root = ET.fromstring(out)
    assert root.tag.endswith("svg")


def box_file(tmp_path, text):
    p = tmp_path / "K.txt"
    p.write_text(text)
    return str(p)


def test_hausdorff_singleton(capsys, tmp_path):
    path = box_file(tmp_path, "dimension 2\n1/3 2/5\n")
    _, out, _ = run(capsys, "hausdorff", path, "--depth", "3", "--x", "0", "1/4", "1")
    assert {(r["p0"], r["p1"]) for r in rows(out)} == {("1/3", "2/5")}


def test_hausdorff_two_points(capsys, tmp_path):
    path = box_file(tmp_path, "dimension 2\n0 0\n1 1\n")
    _, out, _ = run(capsys, "hausdorff", path, "--depth", "2")
    assert {(r["p0"], r["p1"]) for r in rows(out)} == {("0/1", "0/1"), ("1/1", "1/1")}


def test_hausdorff_json_dump(capsys, tmp_path):
    path = box_file(tmp_path, "dimension 2\n0 0 : 1 1\n")
    _, out, _ = run(capsys, "hausdorff", path, "--depth", "2", "--x", "0", "--format", "json")
    dump = json.loads(out)
    assert dump["widths"] == [0, 2]
    assert [lv["radius"] for lv in dump["levels"]] == ["1/1", "1/2"]
    assert dump["traces"][0]["indices"] == [0, 0]


def test_hausdorff_parse_error_has_path_and_line(capsys, tmp_path):
    path = box_file(tmp_path, "dimension 2\n0 0\n0 x\n")
    code, _, err = run(capsys, "hausdorff", path)
    assert code == 2
    assert path in err and "line 3" in err


def test_hausdorff_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "hausdorff", str(tmp_path / "nope.txt"))
    assert code == 2 and "nope.txt" in err


def test_hausdorff_empty_set(capsys, tmp_path):
    code, _, err = run(capsys, "hausdorff", box_file(tmp_path, "dimension 1\n"))
    assert code == 2 and "empty" in err


def test_domain_errors_exit_two(capsys):
    code, _, err = run(capsys, "iterate", "--depth", "40")
    assert code == 2 and err
    code, _, err = run(capsys, "member", "0.5")
    assert code == 2 and err


@pytest.mark.parametrize("cmd", [
    ["iterate", "--depth", "3"], ["svc", "--m", "5", "--depth", "2"], ["member", "1/4", "4/9"],
    ["staircase", "--depth", "3", "--format", "svg"], ["approx", "--depth", "3", "--format", "json"],
    ["quotient", "--depth", "4"], ["curve2", "--depth", "2", "--decimals"], ["curve3", "--depth", "2"],
    ["preimage", "1/3", "1/5", "1/7"],
])
def test_output_files_are_byte_identical(tmp_path, cmd):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(cmd + ["--out", str(a)]) == 0
    assert main(cmd + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--select", "measure", "--select", "quotient-growth")
    assert code == 0
    assert out.startswith("PASS measure")
    assert "9/4" in out and "9/2" in out


def test_verify_failure_exits_one(capsys, monkeypatch):
    def failing(cfg):
        r = properties.SuiteResult("broken")
        r.check(False, "witness x=1/2")
        return r

    monkeypatch.setitem(properties.SUITES, "broken", failing)
    code, out, _ = run(capsys, "verify", "--select", "broken")
    assert code == 1
    assert "FAIL broken" in out and "witness x=1/2" in out


def test_verify_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--select", "nonsense"])
    assert exc.value.code == 2
    assert "nonsense" in capsys.readouterr().err
