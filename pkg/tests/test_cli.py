import json

import pytest

from src.cli import main
from src.config import REPORT_SCHEMA, TOOL_NAME


def _json(capsys, argv):
    code = main(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_check_catalog_algebra(capsys):
    code, document = _json(capsys, ["check", "poincare", "--contractions"])
    assert code == 0
    assert document["schema"] == REPORT_SCHEMA
    assert document["tool"] == TOOL_NAME
    assert document["status"] == "closed"
    assert {c["check"] for c in document["checks"]} >= {"jacobi", "cartan", "involution"}
    assert [s["label"] for s in document["spaces"]] == ["S1", "S2"]
    assert document["contractions"]


def test_check_broken_file_exits_one(tmp_path, capsys):
    path = tmp_path / "broken.alg"
    path.write_text("algebra broken { generators [A, B, C]; bracket [A, B] = A; bracket [A, C] = B; }",
                    encoding="utf-8")
    code, document = _json(capsys, ["check", str(path)])
    assert code == 1
    assert document["status"] == "failed"


def test_parse_error_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text("algebra bad { generators [A, B] }", encoding="utf-8")
    assert main(["check", str(path)]) == 2
    assert "error" in capsys.readouterr().err


def test_unsupported_chain_exits_two(capsys):
    assert main(["deform", "poincare", "galilei"]) == 2
    assert "supported" in capsys.readouterr().err


def test_deform_report_is_deterministic(capsys):
    argv = ["deform", "galilei-extended", "nh-minus", "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    document = json.loads(first)
    assert document["deformation"]["kappa"] == "κ1"
    assert len(document["brackets"]) == 45
    assert all(b["status"] == "closed" for b in document["brackets"])
    assert document["constraints"]["relations"]


def test_failed_deformation_exits_one(capsys):
    code, document = _json(capsys, ["deform", "galilei", "nh-minus"])
    assert code == 1
    assert any("do not span" in note for note in document["deformation"]["notes"])


def test_deform_with_casimirs_and_sign(capsys):
    code, document = _json(capsys, ["deform", "galilei-extended", "nh-minus", "--kappa-sign", "+", "--casimirs"])
    assert code == 0
    assert document["deformation"]["target"] == "nh-plus"
    assert [c["name"] for c in document["casimirs"]] == ["C1", "C2"]


def test_zero_scale_is_a_usage_error(capsys):
    assert main(["deform", "galilei", "poincare", "--scale", "0,1"]) == 2
    capsys.readouterr()


def test_rep_report(capsys):
    code, document = _json(capsys, ["rep", "nh-deformed", "--points", "1"])
    assert code == 0
    (body,) = document["representations"]
    assert body["algebra"] == "nh-minus"
    assert body["spin"] == "0"
    assert len(body["brackets"]) == 45


def test_rep_unsupported_spin(capsys):
    assert main(["rep", "poincare-massive", "--spin", "7/2"]) == 2
    assert "--float-spin" in capsys.readouterr().err


def test_rep_float_spin(capsys):
    code, document = _json(capsys, ["rep", "poincare-massive", "--spin", "7/2", "--float-spin"])
    assert code == 0
    assert document["representations"][0]["numeric"]["dimension"] == 8


def test_catalog_list_and_export(capsys):
    assert main(["catalog", "list"]) == 0
    listing = capsys.readouterr().out
    assert "so41-euclidean-chain" in listing
    assert main(["catalog", "export", "ads", "--source"]) == 0
    assert "algebra ads from ds" in capsys.readouterr().out


def test_unknown_catalog_entry(capsys):
    assert main(["catalog", "export", "sl2"]) == 2
    capsys.readouterr()


def test_text_report_header(capsys):
    assert main(["check", "galilei"]) == 0
    assert capsys.readouterr().out.startswith(f"{TOOL_NAME} ")


@pytest.mark.slow
def test_observables_report(capsys):
    code, document = _json(capsys, ["deform", "galilei", "poincare", "--observables"])
    assert code == 0
    assert document["constraints"]["roots"]
    assert all(o["status"] == "closed" for o in document["observables"])
