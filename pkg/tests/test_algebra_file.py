import json

import pytest

from leibniz_mult import algebra_file
from leibniz_mult.algebra_file import AlgebraFileError
from leibniz_mult.exactlin import GF, QQ
from leibniz_mult.leibniz_core import CATALOG_NAMES, catalog, random_nilpotent


@pytest.mark.parametrize("F", [QQ, GF(5), GF(7)])
def test_roundtrip_is_entrywise_equal(F):
    algs = [catalog(n, F) for n in CATALOG_NAMES] + [random_nilpotent(s, 2, 2, F) for s in range(20)]
    for L in algs:
        back = algebra_file.loads(algebra_file.dumps(L))
        assert back == L and back.field == F


def test_format_details():
    doc = algebra_file.to_dict(catalog("cyclic:2"))
    assert doc["field"] == "Q"
    assert doc["products"] == [{"left": 1, "right": 1, "value": ["0", "1"]}]
    assert algebra_file.to_dict(catalog("cyclic:2", GF(5)))["field"] == {"GF": 5}


def test_rationals_survive():
    text = json.dumps({"field": "Q", "dim": 2, "products": [{"left": 1, "right": 1, "value": ["0", "-3/4"]}]})
    L = algebra_file.loads(text)
    assert algebra_file.loads(algebra_file.dumps(L)) == L
    assert '"-3/4"' in algebra_file.dumps(L)


def test_gf_accepts_fraction_strings():
    text = json.dumps({"field": {"GF": 5}, "dim": 2, "products": [{"left": 1, "right": 1, "value": [0, "1/2"]}]})
    assert algebra_file.loads(text).table[0][0] == (0, 3)


def test_digest_ignores_name():
    a = catalog("cyclic:3")
    doc = algebra_file.to_dict(a)
    doc["name"] = "other"
    assert algebra_file.digest(algebra_file.from_dict(doc)) == algebra_file.digest(a)
    assert algebra_file.digest(a) != algebra_file.digest(catalog("cyclic:3", GF(5)))


@pytest.mark.parametrize("doc", [
    [],
    {"dim": 2},
    {"field": "R", "dim": 1},
    {"field": {"GF": 6}, "dim": 1},
    {"field": "Q", "dim": -1},
    {"field": "Q", "dim": 2, "products": [{"left": 0, "right": 1, "value": ["0", "0"]}]},
    {"field": "Q", "dim": 2, "products": [{"left": 1, "right": 3, "value": ["0", "0"]}]},
    {"field": "Q", "dim": 2, "products": [{"left": 1, "right": 1, "value": ["0"]}]},
    {"field": "Q", "dim": 2, "products": [{"left": 1, "right": 1, "value": ["0", "x"]}]},
    {"field": "Q", "dim": 2, "products": [{"left": 1, "right": 1, "value": ["0", 1.5]}]},
    {"field": "Q", "dim": 2, "products": [{"left": 1, "value": ["0", "1"]}]},
    {"field": "Q", "dim": 2, "products": [{"left": 1, "right": 1, "value": ["0", "1"]},
                                          {"left": 1, "right": 1, "value": ["0", "1"]}]},
    {"field": "Q", "dim": 2, "labels": ["a"]},
])
def test_malformed_documents(doc):
    with pytest.raises(AlgebraFileError):
        algebra_file.loads(json.dumps(doc))


def test_invalid_json_and_missing_file(tmp_path):
    with pytest.raises(AlgebraFileError):
        algebra_file.loads("{not json")
    with pytest.raises(AlgebraFileError):
        algebra_file.load(tmp_path / "missing.json")


def test_load_uses_file_stem(tmp_path):
    p = tmp_path / "mine.json"
    doc = algebra_file.to_dict(catalog("cyclic:2"))
    doc.pop("name")
    p.write_text(json.dumps(doc))
    assert algebra_file.load(p).name == "mine"
