import json

import pytest

from hopfadj.constructions import builtin
from hopfadj.errors import MalformedAlgebra, NotHopfAlgebra, ParseError
from hopfadj.scalars import QQ, FieldSpec
from hopfadj.serialize import algebra_from_json, algebra_to_json, dumps, load_json, matrix_to_json


@pytest.mark.parametrize("name,F", [("superline", QQ), ("superline", FieldSpec(5)),
                                    ("kg:s3", FieldSpec(3)), ("fun:c3", QQ)])
def test_roundtrip_bit_exact(name, F):
    H = builtin(name, F)
    js = algebra_to_json(H)
    text = dumps(js)
    H2 = algebra_from_json(json.loads(text))
    assert dumps(algebra_to_json(H2)) == text
    assert H2.mu == H.mu and H2.delta == H.delta and H2.antipode == H.antipode
    assert H2.ad == H.ad


def test_rational_scalars_as_strings():
    js = algebra_to_json(builtin("superline", QQ))
    assert js["antipode"][2][3] == "-1/1"
    js5 = algebra_to_json(builtin("superline", FieldSpec(5)))
    assert js5["antipode"][2][3] == 4


def test_malformed_inputs():
    js = algebra_to_json(builtin("kg:c2", QQ))
    bad = dict(js)
    del bad["mu"]
    with pytest.raises(MalformedAlgebra):
        algebra_from_json(bad)
    bad = dict(js, mu=[[[1]]])
    with pytest.raises(MalformedAlgebra):
        algebra_from_json(bad)
    bad = dict(js, labels=["e"])
    with pytest.raises(MalformedAlgebra):
        algebra_from_json(bad)
    bad = json.loads(json.dumps(js))
    bad["counit"] = ["1/1", "0/1"]
    with pytest.raises(NotHopfAlgebra):
        algebra_from_json(bad)


def test_load_json_errors(tmp_path):
    with pytest.raises(ParseError):
        load_json(str(tmp_path / "missing.json"))
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_json(str(p))


def test_matrix_dump(superline):
    m = matrix_to_json(superline.R)
    assert m["shape"] == [16, 16] and m["field"] == "Q"
    assert m["entries"] == sorted(m["entries"])
