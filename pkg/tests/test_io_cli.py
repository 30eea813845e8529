import json
import subprocess
import sys
from fractions import Fraction

import pytest

from trimat import algebra as al
from trimat import cli
from trimat import io as tio
from trimat.errors import DocumentError
from trimat.linalg import QQ


def run(*argv):
    return cli.run(list(argv) + ["--no-timing"])


@pytest.mark.parametrize("name", tio.fixture_names())
def test_fixture_validates(name):
    code, rep = run("validate", f"fixtures:{name}")
    assert code == 0, rep


EXIT_CASES = [
    (("congruent", "fixtures:ex-matenoneq"), 1),
    (("mate", "fixtures:onepoint", "--mode", "projective"), 0),
    (("tilt-verify", "fixtures:onepoint"), 0),
    (("gldim", "fixtures:trivext-DM", "--bound", "12"), 3),
    (("gldim", "fixtures:trivext-M"), 0),
    (("mate", "fixtures:artin", "--mode", "artin"), 0),
    (("mate", "fixtures:artin", "--mode", "general"), 0),
    (("congruent", "fixtures:artin"), 0),
    (("check", "fixtures:artin"), 0),
    (("repetitive", "fixtures:ex-matenoneq", "--periods", "3"), 0),
    (("trivext", "fixtures:trivext-M#A", "M"), 0),
    (("mate", "fixtures:ex-matenoneq", "--mode", "artin"), 1),
    (("cartan", "fixtures:kronecker"), 0),
    (("validate", "fixtures:nope"), 2),
    (("validate", "fixtures:artin", "--field", "fp:3"), 0),
    (("validate", "fixtures:artin", "--field", "fp:4"), 2),
    (("fixtures",), 0),
]


@pytest.mark.parametrize("argv,code", EXIT_CASES, ids=[" ".join(a) for a, _ in EXIT_CASES])
def test_exit_codes(argv, code):
    got, rep = run(*argv)
    assert got == code, rep
    assert rep["exit_code"] == code


def test_congruent_report():
    _, rep = run("congruent", "fixtures:ex-matenoneq")
    r = rep["result"]
    assert r["verdict"] == "NotCongruent"
    assert r["certificate"]["method"] == "complete-enumeration"
    assert r["C1"]["matrix"] == [[2, 0], [1, 3]] and r["C2"]["matrix"] == [[3, 0], [1, 2]]


def test_gldim_report():
    _, rep = run("gldim", "fixtures:trivext-DM")
    assert rep["result"]["value"] == {"status": "AtLeast", "bound": 12}
    assert rep["result"]["matches_reference"]
    _, rep = run("gldim", "fixtures:trivext-M")
    assert rep["result"]["value"] == {"status": "Finite", "value": 1}


def test_onepoint_matches_document_mate():
    _, rep = run("mate", "fixtures:onepoint", "--mode", "projective")
    assert rep["result"]["matches_document_mate"] is True


def test_determinism():
    for argv in (("congruent", "fixtures:ex-matenoneq"), ("mate", "fixtures:artin", "--mode", "artin")):
        a = json.dumps(run(*argv)[1], sort_keys=True)
        b = json.dumps(run(*argv)[1], sort_keys=True)
        assert a == b


def test_report_round_trip():
    _, rep = run("tilt-verify", "fixtures:artin")
    assert json.loads(json.dumps(rep)) == rep


def test_timing_field():
    code, rep = cli.run(["gldim", "fixtures:trivext-M"])
    assert code == 0 and rep["timing"]["seconds"] >= 0


def test_main_prints_json(capsys):
    assert cli.main(["cartan", "fixtures:ex-matenoneq", "--no-timing"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"]["C_Lambda"] == [[2, 0], [1, 3]]


def test_usage_error_exit_code(capsys):
    assert cli.main(["congruent"]) == 2
    assert cli.main(["frobnicate"]) == 2


def test_console_script():
    p = subprocess.run([sys.executable, "-m", "trimat.cli", "gldim", "fixtures:trivext-DM", "--no-timing"],
                       capture_output=True, text=True)
    assert p.returncode == 3
    assert json.loads(p.stdout)["result"]["dim"] == 4


def test_parse_scalar():
    assert tio.parse_scalar(2, "x") == 2
    assert tio.parse_scalar("3/4", "x") == Fraction(3, 4)
    assert tio.parse_scalar(" -6/4", "x") == Fraction(-3, 2)
    for bad in (1.5, True, "abc", "1/0", None):
        with pytest.raises(DocumentError):
            tio.parse_scalar(bad, "x")


def test_format_scalar():
    assert tio.format_scalar(Fraction(3, 1)) == 3
    assert tio.format_scalar(Fraction(-1, 2)) == "-1/2"
    assert tio.to_json_value({1: [Fraction(1, 2)]}) == {"1": ["1/2"]}


def test_algebra_to_spec_round_trip(F4):
    K = al.path_algebra(QQ, [1, 2], [("a", 1, 2), ("b", 1, 2)])
    for A in (F4, K, al.truncated_polynomial(QQ, 3)):
        doc = {"algebras": {"A": tio.algebra_to_spec(A)}}
        B = tio.load_document(json.loads(json.dumps(doc))).algebra("A")
        assert B.mult == A.mult and B.unit == A.unit and B.idempotents == A.idempotents


def test_file_source(tmp_path):
    doc = tio.fixture_data("kronecker")
    p = tmp_path / "k.json"
    p.write_text(json.dumps(doc))
    code, rep = run("gldim", str(p))
    assert code == 0 and rep["result"]["value"] == {"status": "Finite", "value": 1}
    q = tmp_path / "bad.json"
    q.write_text('{"algebras": {,}}')
    code, rep = run("validate", str(q))
    assert code == 2 and ":1:" in rep["error"]


def _doc(**sections):
    return {"format": "trimat-doc/1", "field": "rational", **sections}


def test_document_errors():
    with pytest.raises(DocumentError):
        tio.load_document({"format": "trimat-doc/9"})
    with pytest.raises(DocumentError):
        tio.load_document(_doc(extra={}))
    with pytest.raises(DocumentError):
        tio.load_document(_doc(field="fp:6"))
    ws = tio.load_document(_doc(algebras={"A": {"kind": "product", "factors": ["A"]}}))
    with pytest.raises(DocumentError, match="circular"):
        ws.algebra("A")
    ws = tio.load_document(_doc(algebras={"A": {"kind": "structure", "labels": ["1"], "products": [
        {"left": "1", "right": "z", "result": {"1": 1}}], "unit": [1], "idempotents": [[1]]}}))
    with pytest.raises(DocumentError, match="products\\[0\\]"):
        ws.algebra("A")
    ws = tio.load_document(_doc(algebras={"A": {"kind": "truncated_polynomial", "n": 2}},
                                modules={"S": {"kind": "simple", "algebra": "A", "vertex": 3}}))
    with pytest.raises(DocumentError, match="vertex"):
        ws.module("S")


def test_validation_errors_are_located():
    # x^2 = 1 with the single idempotent 1 is not primitive over Q
    ws = tio.load_document(_doc(algebras={"A": {"kind": "structure", "labels": ["1", "x"], "products": [
        {"left": "1", "right": "1", "result": {"1": 1}}, {"left": "1", "right": "x", "result": {"x": 1}},
        {"left": "x", "right": "1", "result": {"x": 1}}, {"left": "x", "right": "x", "result": {"1": 1}}],
        "unit": {"1": 1}, "idempotents": [{"1": 1}]}}))
    with pytest.raises(DocumentError, match="algebras.A.*IdempotentViolation"):
        ws.algebra("A")


def test_prime_field_document():
    code, rep = run("cartan", "fixtures:ex-matenoneq", "--field", "fp:5")
    assert code == 0 and rep["result"]["C_Lambda"] == [[2, 0], [1, 3]]


def test_fixtures_listing():
    _, rep = run("fixtures")
    assert set(rep["result"]["fixtures"]) >= {"ex-matenoneq", "onepoint", "trivext-DM", "trivext-M", "artin"}
    _, rep = run("fixtures", "onepoint")
    assert rep["result"]["document"]["format"] == "trimat-doc/1"
