import json

import pytest
from hypothesis import given, settings

from cartdec import catalog
from cartdec.cartesian import classify, natural_decomposition
from cartdec.config import Budget
from cartdec.io import (
    FormatError,
    GroupFile,
    Report,
    canonical,
    emit_decomposition,
    emit_group_file,
    emit_instance,
    emit_report,
    parse_decomposition,
    parse_group_file,
    parse_instance,
    parse_report,
)

from conftest import small_groups


def _group_text(gens, degree=3, **extra):
    return json.dumps({"name": "g", "degree": degree, "points": "0-based", "generators": gens, **extra})


def test_identity_group():
    gf = parse_group_file(_group_text([[0, 1, 2]]))
    assert gf.group().order() == 1


def test_catalog_group_round_trip():
    e = catalog.entry("a5_natural")
    gf = parse_group_file(json.dumps(e))
    assert gf.group().order() == 60
    text = emit_group_file(gf)
    assert emit_group_file(parse_group_file(text)) == text


@settings(max_examples=30, deadline=None)
@given(small_groups())
def test_group_file_round_trip(G):
    gf = GroupFile("x", G.degree, list(G.gens), provenance="test")
    text = emit_group_file(gf)
    back = parse_group_file(text)
    assert emit_group_file(back) == text
    assert back.group().order() == G.order()


@pytest.mark.parametrize(
    "gens, msg",
    [([[0, 0, 1]], "bijection"), ([[0, 1, 3]], "out of range"), ([[0, 1]], "images"), ([["a", 1, 2]], "integers")],
)
def test_invalid_generators(gens, msg):
    with pytest.raises(FormatError, match=msg):
        parse_group_file(_group_text(gens))


def test_malformed_json():
    with pytest.raises(FormatError, match="malformed"):
        parse_group_file("{not json")


def test_factor_domains_checked():
    ok = parse_group_file(_group_text([[1, 0, 2, 3]], degree=4, factors=[[0, 1], [2]]))
    assert ok.factor_ranges() == [(0, 2), (2, 1)]
    with pytest.raises(FormatError):
        parse_group_file(_group_text([[0, 1, 2, 3]], degree=4, factors=[[0, 2]]))
    with pytest.raises(FormatError):
        parse_group_file(_group_text([[0, 1, 2, 3]], degree=4, factors=[[0, 1, 2, 3, 4]]))


def test_decomposition_round_trip(ex2_inst):
    E = natural_decomposition(ex2_inst.setting)
    text = emit_decomposition(E)
    E2 = parse_decomposition(text)
    assert E2.same_as(E) and emit_decomposition(E2) == text


def test_decomposition_errors():
    with pytest.raises(FormatError):
        parse_decomposition(json.dumps({"omega_size": 4, "partitions": [[0, 1]]}))
    with pytest.raises(FormatError):
        parse_decomposition(json.dumps({"omega_size": 4}))


@pytest.mark.parametrize("name", ["ex2", "case-a", "simple-plinth", "ex3-toy"])
def test_instance_round_trip(name, materialized_instances):
    inst = materialized_instances[name]
    text = emit_instance(inst)
    back = parse_instance(text)
    assert emit_instance(back) == text
    S, T = inst.setting, back.setting
    assert T.G.order() == S.G.order()
    assert classify(natural_decomposition(T), T).label == classify(natural_decomposition(S), S).label


def test_report_is_canonical():
    r = Report(["x"], {"f": "00"}, {"b": 1, "a": [1, 2]}, {"blocks": 3})
    text = emit_report(r)
    assert text == canonical(json.loads(text))
    assert parse_report(text)["results"] == {"a": [1, 2], "b": 1}
    assert "timing_seconds" not in text
    r.timing = 1.23456
    assert parse_report(emit_report(r))["timing_seconds"] == 1.235


def test_budget_from_env():
    assert Budget.from_env({}) == Budget()
    assert Budget.from_env({"CARTDEC_BUDGET": "50"}).blocks == 50
    b = Budget.from_env({"CARTDEC_BUDGET": "orbit=7, materialize=9"})
    assert (b.orbit, b.materialize, b.blocks) == (7, 9, 10_000)
    with pytest.raises(ValueError):
        Budget.from_env({"CARTDEC_BUDGET": "speed=3"})
