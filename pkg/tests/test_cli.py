import io
import json
import subprocess
import sys

import pytest

from hopfadj.cli import run
from hopfadj.constructions import builtin
from hopfadj.scalars import QQ
from hopfadj.serialize import algebra_to_json


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text.lstrip().startswith("{") else text)


def test_cohomology_superline():
    code, rep = call("cohomology", "--algebra", "builtin:superline", "--field", "Q", "--degree", "2")
    assert code == 0
    assert rep["result"]["dimH"] == 3
    assert set(rep) == {"command", "inputs", "inputs_digest", "result", "wall_time", "version"}


def test_charpoly_superline():
    code, rep = call("charpoly", "--algebra", "builtin:superline", "--field", "Q")
    r = rep["result"]
    assert r["charpoly"] == "(λ²+1)²(λ+1)⁴(λ−1)⁸"
    assert r["minpoly"] == "(λ²+1)(λ+1)(λ−1)²"
    assert r["det"] == "1/1"
    assert len(r["charpoly_coeffs"]) == 17


def test_groupoid_s3_f2():
    code, rep = call("groupoid", "--group", "s3", "--field", "Fp:2", "--degree", "2")
    assert code == 0 and rep["result"]["dim"] == 5


def test_groupoid_basis():
    code, rep = call("groupoid", "--group", "c3", "--field", "Fp:3", "--degree", "2", "--basis")
    b = rep["result"]["basis"]
    assert len(b) == rep["result"]["dim"] == 3
    assert set(b[0]) == {"e", "a", "a^2"}


def test_ybe_ks3():
    code, rep = call("ybe", "--algebra", "builtin:kg:s3")
    assert rep["result"] == {"ybe": True, "inverse_ok": True}


def test_check_and_ad_table():
    code, rep = call("check", "--algebra", "builtin:superline")
    assert rep["result"]["hopf"] and rep["result"]["adjoint_conditions"] == [True, True]
    code, rep = call("ad-table", "--algebra", "builtin:superline")
    assert rep["result"]["ad"]["g"]["x"] == "2x"
    code, text = call("ad-table", "--algebra", "builtin:superline", "--format", "text")
    assert code == 0 and text.splitlines()[2].split("|")[3].strip() == "0"


def test_deform():
    code, rep = call("deform", "--algebra", "builtin:superline", "--cocycle-index", "2",
                     "--random-combos", "3", "--seed", "5")
    r = rep["result"]
    assert r["ybe"] and r["residual_norms"] == [0, 0] and r["random_combos_ybe"] == [3, 3]
    code, rep = call("deform", "--algebra", "builtin:superline", "--cocycle-index", "3")
    assert code == 1 and rep["error"]["code"] == "ParseError"


def test_quandle_tables():
    code, rep = call("quandle-from-groupoid", "--group", "s3", "--field", "Q", "--degree", "2")
    r = rep["result"]
    assert r["dim"] == 3 and r["rack_cocycles_verified"] == [3, 3]
    assert set(r["psi"][0]["(1 2)"]) == {"()", "(2 3)", "(1 2)", "(1 2 3)", "(1 3 2)", "(1 3)"}
    code, rep = call("quandle-from-groupoid", "--group", "c3", "--field", "Fp:3", "--degree", "3")
    assert rep["result"]["rack_cocycles_verified"][0] == rep["result"]["dim"]


def test_dump_matrix(tmp_path):
    p = tmp_path / "d2.json"
    code, rep = call("cohomology", "--algebra", "builtin:kg:c3", "--degree", "2", "--dump-matrix", str(p))
    m = json.loads(p.read_text())
    assert m["shape"][1] == 27 and m["entries"]


def test_text_cocycle_grid():
    code, text = call("cohomology", "--algebra", "builtin:superline", "--degree", "2", "--basis",
                      "--format", "text")
    assert code == 0 and "cocycle 2, block 0:" in text and "gx |  0 |  g |  x |  x" in text


def test_file_algebra_and_field_mismatch(tmp_path):
    p = tmp_path / "sl.json"
    p.write_text(json.dumps(algebra_to_json(builtin("superline", QQ))))
    code, rep = call("cohomology", "--algebra", str(p), "--degree", "1")
    assert code == 0 and rep["result"]["dimH"] == 1 and rep["inputs"]["algebra_sha256"]
    code, rep = call("cohomology", "--algebra", str(p), "--field", "Fp:5", "--degree", "1")
    assert code == 1 and rep["error"]["code"] == "FieldMismatch"


def test_deterministic_modulo_wall_time():
    args = ("cohomology", "--algebra", "builtin:superline", "--degree", "2", "--basis")
    a, b = call(*args)[1], call(*args)[1]
    a.pop("wall_time"), b.pop("wall_time")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


ERRORS = [
    (["cohomology", "--algebra", "builtin:superline", "--field", "Fp:2", "--degree", "2"], "CharTwoUnsupported"),
    (["cohomology", "--algebra", "builtin:kg:c3", "--field", "Fp:2", "--degree", "2"], "CharTwoUnsupported"),
    (["cohomology", "--algebra", "builtin:kg:s3", "--degree", "3"], "TooLarge"),
    (["cohomology", "--algebra", "builtin:superline", "--field", "Fp:4", "--degree", "2"], "NotPrime"),
    (["cohomology", "--algebra", "builtin:superline", "--field", "R", "--degree", "2"], "ParseError"),
    (["cohomology", "--algebra", "missing.json", "--degree", "2"], "ParseError"),
    (["check", "--algebra", "builtin:kg:x9"], "ParseError"),
    (["check", "--algebra", "builtin:kg:s9"], "ParseError"),
    (["groupoid", "--group", "q8", "--degree", "2"], "ParseError"),
]


@pytest.mark.parametrize("argv,code", ERRORS, ids=[e[1] + str(i) for i, e in enumerate(ERRORS)])
def test_domain_errors_exit_1(argv, code):
    rc, rep = call(*argv)
    assert rc == 1 and rep["error"]["code"] == code and rep["error"]["message"]


def test_file_errors(tmp_path):
    bad_group = tmp_path / "g.json"
    bad_group.write_text(json.dumps({"labels": ["a", "b"], "table": [[0, 0], [0, 0]]}))
    assert call("groupoid", "--group", str(bad_group), "--degree", "2")[1]["error"]["code"] == "NotAGroup"
    js = algebra_to_json(builtin("kg:c2", QQ))
    js["counit"] = ["1/1", "0/1"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(js))
    rep = call("check", "--algebra", str(p))[1]
    assert rep["error"]["code"] == "NotHopfAlgebra" and rep["error"]["details"]["axiom"]
    del js["mu"]
    p.write_text(json.dumps(js))
    assert call("check", "--algebra", str(p))[1]["error"]["code"] == "MalformedAlgebra"
    p.write_text("{")
    assert call("check", "--algebra", str(p))[1]["error"]["code"] == "ParseError"


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["cohomology", "--algebra", "builtin:superline"],
                                  ["cohomology", "--algebra", "builtin:superline", "--degree", "4"],
                                  ["groupoid", "--group", "s3", "--degree", "x"],
                                  ["accept", "nosuchsuite"],
                                  ["ybe", "--algebra", "builtin:superline", "--format", "xml"]])
def test_usage_errors_exit_2(argv):
    assert run(argv, stdout=io.StringIO()) == 2


def test_accept_suite_exit_codes():
    code, text = call("accept", "superline")
    assert code == 0 and text.count("[PASS]") == 3
    code, rep = call("accept", "groups", "--format", "json")
    rows = rep["result"]["rows"]
    # the kS3 row over F_3 is an open discrepancy and fails; see the README
    assert [r["status"] for r in rows] == ["FAIL", "PASS"] and code == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "hopfadj", "ybe", "--algebra", "builtin:kg:c2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["ybe"]
