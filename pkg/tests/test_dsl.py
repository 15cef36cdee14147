import json

import pytest

from weyltype import presets
from weyltype.dsl import DSLError, parse_presentation, serialize_document, serialize_presentation
from weyltype.growth import growth_table

WEYL_DOC = ('{"mode":"pbw","generators":["x","d"],'
            '"rules":[{"lhs":["d","x"],"rhs":"x*d + 1"}]}')


def test_minimal_weyl_document():
    doc = parse_presentation(WEYL_DOC)
    P = doc.presentation
    assert P.generator_names() == ["x", "d"]
    assert P.reduce_word("dx") == P.element("x*d + 1")


def test_so3_document():
    P = presets.load("so3").presentation
    assert P.reduce_word("yx") == P.element("x*y - z")


def test_degree_raising_rule_rejected():
    text = '{"mode":"pbw","generators":["x","y"],"rules":[{"lhs":["y","x"],"rhs":"x*x*y"}]}'
    with pytest.raises(DSLError) as info:
        parse_presentation(text)
    assert info.value.path == "rules[0]"


def test_syntax_error_has_line_and_column():
    with pytest.raises(DSLError) as info:
        parse_presentation('{\n  "mode": "pbw",\n  "generators": [x]\n}')
    assert info.value.line == 3 and info.value.column is not None


@pytest.mark.parametrize("patch,path", [
    ({"bogus": 1}, "bogus"),
    ({"rules": [{"lhs": ["d", "q"], "rhs": "1"}]}, "rules[0].lhs"),
    ({"rules": [{"lhs": ["d", "x"], "rhs": "x*d + * 1"}]}, "rules[0].rhs"),
    ({"subspaces": {"V": ["x", "q"]}}, "subspaces.V[1]"),
    ({"kappa": [{"m1": "x", "m2": "d", "value": 0.5}]}, "kappa[0].value"),
])
def test_semantic_errors_carry_paths(patch, path):
    doc = json.loads(WEYL_DOC)
    doc.update(patch)
    with pytest.raises(DSLError) as info:
        parse_presentation(json.dumps(doc))
    assert info.value.path == path


def test_builtin_errors():
    base = {"mode": "central", "exponent_module": {"rank": 1, "embeddings": ["1"], "unit": [1]}}
    with pytest.raises(DSLError) as info:
        parse_presentation(json.dumps(dict(base, p=[0])))
    assert info.value.path == "p"
    with pytest.raises(DSLError):
        parse_presentation(json.dumps(dict(base, generators=["x"])))


def test_kappa_table():
    doc = json.loads(WEYL_DOC)
    doc["kappa"] = [{"m1": "x", "m2": "d", "value": "3/2"}]
    N = parse_presentation(json.dumps(doc)).na_algebra()
    P = N.P
    assert N.multiply("x", "d") - N.multiply("d", "x") == P.element("3/2")


def test_round_trip_weyl():
    doc = parse_presentation(WEYL_DOC)
    again = parse_presentation(serialize_presentation(doc.presentation))
    for w in ("dx", "ddxx", "dxdx", "xdd"):
        assert str(again.presentation.reduce_word(w)) == str(doc.presentation.reduce_word(w))


def test_round_trip_so3_growth():
    doc = presets.load("so3")
    again = parse_presentation(serialize_document(doc))
    for name in ("V", "V2"):
        assert growth_table(again.subspace(name), 4).dims == growth_table(doc.subspace(name), 4).dims


@pytest.mark.parametrize("name", ["weyltype-r1", "weyltype-r2-sqrt2", "na-example-31"])
def test_round_trip_builtin_flags(name):
    doc = presets.load(name)
    again = parse_presentation(serialize_document(doc)).presentation
    P = doc.presentation
    assert again.describe() == P.describe()
    e = "d*x^(1)" if P.r == 1 and P.module.unit != (1,) else "d*x"
    assert str(again.element(e) * again.element(e)) == str(P.element(e) * P.element(e))


@pytest.mark.parametrize("name", presets.names())
def test_every_preset_parses_and_round_trips(name):
    doc = presets.load(name)
    again = parse_presentation(serialize_document(doc))
    assert again.presentation.generator_names() == doc.presentation.generator_names()


def test_float_scalars_rejected():
    doc = json.loads(WEYL_DOC)
    doc["rules"][0]["rhs"] = 1.5
    with pytest.raises(DSLError):
        parse_presentation(json.dumps(doc))
