from fractions import Fraction

import pytest

from fuzzycoarse import Family, ScaleParams, int_window, grid_window
from fuzzycoarse.asdim import DimensionWitness, witness_ratio_minmax
from fuzzycoarse.config import (
    family_from_json,
    family_to_json,
    map_from_config,
    parse_scale,
    parse_window_spec,
    space_from_config,
    window_to_spec,
    witness_from_json,
    witness_to_json,
)
from fuzzycoarse.errors import ParseError

F = Fraction


def test_parse_scale():
    assert parse_scale("1/2:1") == ScaleParams(F(1, 2), 1)
    assert parse_scale("9/10:7/2") == ScaleParams(F(9, 10), F(7, 2))
    for bad in ["1/2", "0.5:1", "1/2:0", "2:1"]:
        with pytest.raises(Exception):
            parse_scale(bad)


def test_window_specs_roundtrip():
    w = int_window(-3, 9)
    assert parse_window_spec(window_to_spec(w)) == w
    g = grid_window(0, 3, F(1, 2))
    assert parse_window_spec(window_to_spec(g)) == g
    assert parse_window_spec({"grid": {"lo": "0", "hi": "3", "step": "1/2"}}) == g
    with pytest.raises(ParseError):
        parse_window_spec("5..1")
    with pytest.raises(ParseError):
        parse_window_spec("1.5..2")


def test_space_from_config():
    assert space_from_config("ratio_minmax").kind_name == "ratio_minmax"
    sp = space_from_config({"kind": "pathological", "tnorm": "product"})
    assert sp.tnorm.name == "product"
    std = space_from_config({"kind": "standard", "universe": "rationals"})
    assert std.universe.name == "rationals"
    tbl = space_from_config({
        "kind": "standard",
        "metric": {"rule": "table", "points": [1, 2], "matrix": [["0", "1/2"], ["1/2", "0"]]},
    })
    assert tbl.value(1, 2, 1) == F(2, 3)
    with pytest.raises(ParseError):
        space_from_config("unknown_kind")
    with pytest.raises(ParseError):
        space_from_config({"kind": "ratio_minmax", "metric": "euclidean"})


def test_family_roundtrip():
    fam = Family.of([[1, 2], [5]], "demo")
    assert family_from_json(family_to_json(fam)) == fam


def test_witness_roundtrip():
    wit = witness_ratio_minmax(ScaleParams(F(1, 2), 1), int_window(1, 60))
    back = witness_from_json(witness_to_json(wit))
    assert back == wit


def test_witness_with_rational_points_roundtrip():
    fam = Family.of([[F(1, 2), 1], [F(5, 2)]], "q")
    wit = DimensionWitness(0, ScaleParams(F(1, 3), 1), ScaleParams(F(1, 2), 1),
                           (fam,), grid_window(0, 3, F(1, 2)))
    back = witness_from_json(witness_to_json(wit))
    assert back == wit


def test_map_from_config():
    m = map_from_config({
        "rule": {"affine": {"a": "2", "b": "0"}},
        "domain": "0..5",
        "expansive": [{"level_in": "1/2", "t_in": "1", "level_out": "1/2", "t_out": "2"}],
        "onto": "1/2:2",
    })
    assert m.apply(3) == 6
    assert m.onto_params == ScaleParams(F(1, 2), 2)
    assert m.expansive[0].t_out == 2
    ident = map_from_config({"rule": "identity"})
    assert ident.apply(7) == 7
    tab = map_from_config({"rule": {"table": [[1, 10], [2, 20]]}})
    assert tab.apply(2) == 20
    with pytest.raises(ParseError):
        map_from_config({"rule": "teleport"})
