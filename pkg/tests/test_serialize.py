import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riesz import fixtures as F
from riesz import serialize
from riesz.errors import ParseError
from strategies import elements, fg_triples, vs_triples


def round_trip(t):
    text = json.dumps(serialize.triple_to_json(t))
    return serialize.triple_from_json(json.loads(text))


def same_triple(a, b):
    return (a.field == b.field and a.n == b.n and a.mode == b.mode
            and [[x.coeffs for x in g] for g in a.generators] == [[x.coeffs for x in g] for g in b.generators]
            and a.faces == b.faces)


def test_fixture_round_trips():
    for name, make in F.ALL.items():
        t = make()
        back = round_trip(t)
        assert same_triple(t, back), name
        assert serialize.triple_to_json(back) == serialize.triple_to_json(t)


def test_tensor_ex_json_shape():
    obj = serialize.triple_to_json(F.tensor_ex())
    assert obj == {
        "n": 1,
        "mode": "finitely_generated",
        "field": {"min_poly": ["-2", "0", "1"], "root_interval": ["1", "2"]},
        "generators": [[["1", "0"]], [["0", "1"]]],
        "lattice": [{"S": [], "P": []}, {"S": [1], "P": [1]}],
    }


def test_rationals_are_strings():
    t = F.Q
    assert serialize.elem_to_json(t.rational(serialize._rational("-6/4"))) == ["-3/2"]


def test_parse_errors():
    good = serialize.triple_to_json(F.lexicographic())
    for broken in (
        {**good, "mode": "group"},
        {**good, "n": 0},
        {k: v for k, v in good.items() if k != "lattice"},
        {**good, "lattice": [{"S": [3], "P": [3]}]},
        {**good, "generators": [[["0.5"], ["1"]]]},
        [],
    ):
        with pytest.raises(ParseError):
            serialize.triple_from_json(broken)


def test_element_forms():
    t = F.tensor_ex()
    a = serialize.element_from_json({"coeffs": ["-1", "1"]}, t)
    b = serialize.element_from_json([-1, 1], t)
    assert a.coeffs == b.coeffs
    with pytest.raises(ParseError):
        serialize.element_from_json([1, 2, 3], t)
    with pytest.raises(ParseError):
        serialize.element_from_json(["1/2", 0], t)
    v = serialize.element_from_json([["1/3"], 2], F.half_open_half_plane())
    assert v.coords[0] == serialize._rational("1/3")


@settings(max_examples=1000)
@given(st.one_of(fg_triples(), vs_triples()), st.data())
def test_round_trip_bit_exact(t, data):
    back = round_trip(t)
    assert same_triple(t, back)
    g = data.draw(elements(t))
    text = json.dumps(serialize.element_to_json(g))
    h = serialize.element_from_json(json.loads(text), back)
    assert [x.coeffs for x in h.coords] == [x.coeffs for x in g.coords]
