import json

import pytest

from fibral.cli import main
from helpers import i2_document


@pytest.fixture
def i2_path(tmp_path):
    p = tmp_path / "i2.json"
    p.write_text(json.dumps(i2_document()))
    return p


def test_validate_ok(i2_path, capsys):
    assert main(["validate", str(i2_path)]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_validate_broken_row(tmp_path, capsys):
    doc = i2_document()
    doc["places"][0]["pairing"] = [["-2", "2"], ["2", "-1"]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert main(["validate", str(p)]) == 1
    out = capsys.readouterr().out
    assert "FAIL weighted-kernel-identity [v]" in out and "row 2" in out


def test_validate_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "nope.json")]) == 2


def test_validate_parse_error(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("{ not json")
    assert main(["validate", str(p)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_usage_error():
    assert main(["bogus"]) == 2


def test_synthesize(i2_path, tmp_path, capsys):
    out = tmp_path / "w.json"
    assert main(["synthesize", str(i2_path), "--choice", "v=C1", "--n", "2", "--out", str(out)]) == 0
    w = json.loads(out.read_text())
    assert w["degree"] == "4" and w["choice"] == {"v": "C1"}
    assert main(["synthesize", str(i2_path), "--choice", "v=C9"]) == 1


def test_clear_and_verify(i2_path, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["clear", str(i2_path), "--out", str(cert)]) == 0
    assert "final degree 8" in capsys.readouterr().err
    assert json.loads(cert.read_text())["degree"] == "8"
    assert main(["verify", str(i2_path), str(cert)]) == 0

    doc = json.loads(cert.read_text())
    doc["log"][0]["outputs"]["witness"]["vertical"]["v"]["C1"] = "-1"
    cert.write_text(json.dumps(doc))
    assert main(["verify", str(i2_path), str(cert)]) == 1
    assert "step 0" in capsys.readouterr().out


def test_verify_other_surface(i2_path, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["clear", str(i2_path), "--out", str(cert)]) == 0
    other = tmp_path / "other.json"
    doc = i2_document()
    doc["name"] = "renamed"
    other.write_text(json.dumps(doc))
    assert main(["verify", str(other), str(cert)]) == 1
    assert "binding" in capsys.readouterr().out


def test_clear_irreducible(tmp_path, capsys):
    doc = {
        "name": "irr", "class_group_torsion": True,
        "places": [{"id": "a", "components": [{"id": "C", "multiplicity": 1}], "pairing": [["0"]]}],
        "ample": {"id": "D", "generic_degree": "5/2", "pairings": {"a": {"C": "5/2"}}, "support": ["P"]},
    }
    p = tmp_path / "irr.json"
    p.write_text(json.dumps(doc))
    assert main(["clear", str(p)]) == 0
    assert json.loads(capsys.readouterr().out)["degree"] == "5/2"


def test_clear_torsion_false(i2_path, tmp_path, capsys):
    doc = i2_document()
    doc["class_group_torsion"] = False
    p = tmp_path / "t.json"
    p.write_text(json.dumps(doc))
    assert main(["clear", str(p)]) == 1
    assert "torsion" in capsys.readouterr().err


def test_clear_width_guard(tmp_path, capsys):
    p = tmp_path / "i5.json"
    assert main(["gen-fiber", "--type", "I_n", "--n", "5", "--surface", "--out", str(p)]) == 0
    assert main(["clear", str(p), "--max-width", "4"]) == 1
    assert "exceeds" in capsys.readouterr().err


def test_gen_fiber_i3(capsys):
    assert main(["gen-fiber", "--type", "I_3"]) == 0
    frag = json.loads(capsys.readouterr().out)
    assert frag["pairing"] == [["-2", "1", "1"], ["1", "-2", "1"], ["1", "1", "-2"]]
    assert [c["multiplicity"] for c in frag["components"]] == [1, 1, 1]


def test_gen_fiber_d4_validates(tmp_path, capsys):
    p = tmp_path / "d4.json"
    assert main(["gen-fiber", "--type", "I0*", "--surface", "--out", str(p)]) == 0
    assert main(["validate", str(p)]) == 0
    frag = json.loads(p.read_text())["places"][0]
    assert [c["multiplicity"] for c in frag["components"]] == [2, 1, 1, 1, 1]
    assert frag["pairing"][0] == ["-2", "1", "1", "1", "1"]


@pytest.mark.parametrize("argv", [["--type", "I_1"], ["--type", "I_n", "--n", "1"], ["--type", "II"], ["--type", "I_n"]])
def test_gen_fiber_errors(argv):
    assert main(["gen-fiber", *argv]) == 2


def test_avoid(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[1, 0], [0, 1], [1, 1]]))
    assert main(["avoid", "--q", "2", "--m", "1", "--points", str(pts)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degree"] == 2 and out["form"] == "x0^2 + x0*x1 + x1^2"
    assert main(["avoid", "--q", "4", "--m", "1"]) == 1
