import json
from fractions import Fraction

import pytest

from mbrace import instances
from mbrace.algfile import AlgFileError, dump_dict, load, load_dict, parse_sum
from mbrace.scalars import GradedSpace

EXT = {
    "name": "ext",
    "basis": [["1", 0], ["th", 1]],
    "product": "m",
    "maps": {"m": ["m(1,1) = 1", "m(1,th) = th", "m(th,1) = th", "m(th,th) = 0"]},
    "elements": {"a": "2*th + 1", "b": "-1/2*{1,th}"},
}


def test_load_dict_basics():
    alg = load_dict(EXT)
    S = alg.space
    assert S.labels == ("1", "th") and S.degrees == (0, 1)
    assert alg.maps["m"].table == {(0, 0): {(0,): 1}, (0, 1): {(1,): 1}, (1, 0): {(1,): 1}}
    assert alg.elements["a"].terms == {(1,): 2, (0,): 1}
    assert alg.elements["b"].terms == {(0, 1): Fraction(-1, 2)}


@pytest.mark.parametrize("basis", [
    [{"label": "1", "deg": 0}, {"label": "th", "deg": 1}],
    [{"label": "1", "degree": 0}, {"label": "th", "degree": 1}],
    [["1", 0], ["th", 1]],
])
def test_basis_forms(basis):
    alg = load_dict(dict(EXT, basis=basis))
    assert alg.space.degrees == (0, 1)


def test_bare_labels_are_even():
    alg = load_dict({"basis": ["a", "b"], "maps": {}})
    assert alg.space.degrees == (0, 0)


def test_parse_sum():
    S = GradedSpace.from_basis("t", [("x", 0), ("y", 1)])
    assert parse_sum(S, "x - 3*{x,y} + 2/3*{}") == {(0,): 1, (0, 1): -3, (): Fraction(2, 3)}
    assert parse_sum(S, "0") == {}


@pytest.mark.parametrize("patch, msg", [
    ({"basis": []}, "nonempty"),
    ({"basis": [["a", 0], ["a", 1]]}, "duplicate basis"),
    ({"basis": [3]}, "bad basis entry"),
    ({"maps": {"m": ["m(1,1) 1"]}}, "expected name(args) = value"),
    ({"maps": {"m": ["n(1,1) = 1"]}}, "rule is for"),
    ({"maps": {"m": ["m(1,1) = 1", "m(1,1) = th"]}}, "duplicate rule"),
    ({"maps": {"m": ["m(1,z) = 1"]}}, "z"),
    ({"maps": {"m": ["m(1,1) = q"]}}, "q"),
    ({"elements": {"m": "1"}}, "names defined twice"),
])
def test_errors(patch, msg):
    with pytest.raises(AlgFileError) as info:
        load_dict(dict(EXT, **patch))
    assert msg in str(info.value)


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.alg.json"
    p.write_text("{ not json")
    with pytest.raises(AlgFileError, match="invalid JSON at line 1"):
        load(p)


def test_dump_roundtrip(tmp_path):
    alg = load_dict(EXT)
    data = dump_dict(alg.space, alg.maps, name="ext")
    p = tmp_path / "ext.alg.json"
    p.write_text(json.dumps(data))
    back = load(p)
    assert back.maps["m"] == alg.maps["m"]
    assert back.space.degrees == alg.space.degrees


@pytest.mark.parametrize("name", instances.ALGEBRAS)
def test_shipped_files_match_builders(name):
    shipped = instances.algebra(name)
    built = instances.built(name)
    assert shipped.space.labels == built.space.labels
    assert shipped.space.degrees == built.space.degrees
    for k, v in built.maps.items():
        assert shipped.maps[k] == v


def test_shipped_file_names():
    assert instances.data_path("z2").name == "z2_bialgebra.alg.json"
    assert instances.data_path("exterior").name == "exterior.alg.json"


def test_unknown_instance():
    with pytest.raises(KeyError):
        instances.algebra("nope")
    with pytest.raises(KeyError):
        instances.bialgebra("exterior")
