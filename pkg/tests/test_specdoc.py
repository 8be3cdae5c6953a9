"""JSON spec parsing and report serialization."""

import json
from fractions import Fraction

import pytest

from pcurvkit import GF, QQ
from pcurvkit.exprs import ParseError, parse_expression
from pcurvkit.ratfunc import FunctionField
from pcurvkit.specdoc import (
    SpecError,
    companion_from_spec,
    conjugation_from_spec,
    connection_from_spec,
    dump_report,
    family_from_spec,
    frac_str,
    load_spec,
    make_report,
    number_field_from_spec,
    parse_base,
    parse_derivation,
    parse_field_expression,
    parse_frac,
    parse_nf_element,
    representation_from_spec,
    valuation_str,
)


def test_frac_literals_round_trip():
    assert frac_str(Fraction(3, 4)) == "3/4"
    assert frac_str(5) == "5/1"
    assert parse_frac("3/4") == Fraction(3, 4)
    assert parse_frac("-7") == Fraction(-7)
    assert parse_frac(12) == Fraction(12)
    for bad in ("x", "1/0", True, 1.5, None):
        with pytest.raises(SpecError):
            parse_frac(bad)


def test_valuation_str():
    import math
    assert valuation_str(math.inf) == "inf"
    assert valuation_str(-2) == "-2/1"
    assert valuation_str(Fraction(-1, 2)) == "-1/2"


def test_parse_base():
    assert parse_base("QQ") == QQ
    assert parse_base(None) == QQ
    assert parse_base({"p": 7}) == GF(7)
    for bad in ({"p": 6}, {"p": True}, "GF(7)", 7):
        with pytest.raises(SpecError):
            parse_base(bad)


def test_expression_parsing_on_tower():
    base = FunctionField(QQ, "q")
    K = FunctionField(base, "x")
    q = K(base.gen())
    x = K.gen()
    assert parse_field_expression("q*x^2 - 1/q", K) == q * x * x - K.one / q
    assert parse_field_expression(3, K) == K(3)
    assert parse_field_expression("(x+1)^2/(x-1)", K) == (x + K.one) ** 2 / (x - K.one)


def test_expression_errors_become_spec_errors():
    K = FunctionField(QQ, "x")
    for bad in ("x +", "y", "1/0", "x^x", 1.5):
        with pytest.raises(SpecError):
            parse_field_expression(bad, K)


def test_parse_expression_rejects_negative_power():
    K = FunctionField(QQ, "x")
    env = {"x": K.gen()}
    with pytest.raises(ParseError):
        parse_expression("x^-1", env, K.one)
    # while explicit division is the supported spelling
    assert parse_expression("1/x", env, K.one) == K.one / K.gen()


def test_parse_derivation_forms():
    K = FunctionField(QQ, "x")
    x = K.gen()
    assert parse_derivation(None, K).u == K.one
    assert parse_derivation("d/dx", K).u == K.one
    assert parse_derivation("x*d/dx", K).u == x
    assert parse_derivation({"multiplier": "x^2"}, K).u == x * x
    for bad in ("d/dt", "x*d/dt", {"multiplier": "0"}, 7, {"mult": "x"}):
        with pytest.raises(SpecError):
            parse_derivation(bad, K)


def test_connection_from_spec():
    doc = {
        "base": "QQ",
        "variable": "x",
        "derivation": "x*d/dx",
        "matrix": [["3", "0"], ["0", "x"]],
    }
    A = connection_from_spec(doc)
    assert A.rank == 2
    assert A.derivation.u == A.field.gen()
    with pytest.raises(SpecError):
        connection_from_spec({"base": "QQ", "matrix": [["x", "1"]]})
    with pytest.raises(SpecError):
        connection_from_spec({"base": "QQ"})


def test_companion_from_spec():
    doc = {"kind": "companion", "p": 5, "last_column": ["1/q", "0"]}
    c, p = companion_from_spec(doc)
    assert p == 5 and c.rank == 2
    assert c.derivation.u == c.matrix().field.gen()
    for bad in (
        {"kind": "companion", "p": 4, "last_column": ["0"]},
        {"kind": "companion", "p": 5, "last_column": []},
        {"kind": "matrix", "p": 5, "last_column": ["0"]},
    ):
        with pytest.raises(SpecError):
            companion_from_spec(bad)


def test_family_from_spec():
    doc = {
        "base": "QQ",
        "derivation": "d/dx",
        "layers": [[["0"]], [["x"]]],
        "ansatz_degree": 4,
    }
    fam, ansatz = family_from_spec(doc)
    assert fam.order == 2 and fam.rank == 1 and ansatz == 4
    with pytest.raises(SpecError):
        family_from_spec({"base": "QQ", "layers": []})
    with pytest.raises(SpecError):
        family_from_spec({"base": "QQ", "layers": [[["0"]]], "ansatz_degree": -1})


def test_number_field_from_spec():
    K = number_field_from_spec({"min_poly": ["1", "0", "1"], "name": "i"})
    assert K.degree == 2
    assert K.gen * K.gen == K(-1)
    assert number_field_from_spec("QQ").degree == 1
    assert number_field_from_spec(None).degree == 1
    with pytest.raises(SpecError):
        number_field_from_spec({"min_poly": ["-1", "0", "1"]})  # reducible
    with pytest.raises(SpecError):
        number_field_from_spec({"name": "w"})


def test_parse_nf_element_forms():
    K = number_field_from_spec({"min_poly": ["1", "0", "1"], "name": "i"})
    assert parse_nf_element("1/2", K) == K(Fraction(1, 2))
    assert parse_nf_element(3, K) == K(3)
    assert parse_nf_element(["0", "1"], K) == K.gen
    with pytest.raises(SpecError):
        parse_nf_element(["1"], K)  # wrong coordinate count
    with pytest.raises(SpecError):
        parse_nf_element(1.5, K)


def test_representation_from_spec_quaternion():
    doc = {
        "field": {"min_poly": ["1", "0", "1"], "name": "i"},
        "surface": {"genus": 1, "punctures": 1},
        "generators": {
            "a1": [[["0", "1"], ["0", "0"]], [["0", "0"], ["0", "-1"]]],
            "b1": [[["0", "0"], ["1", "0"]], [["-1", "0"], ["0", "0"]]],
        },
        "max_elements": 500,
    }
    rho, caps, projective = representation_from_spec(doc)
    assert rho.target == "SL2"
    assert caps == {"max_elements": 500, "max_order": 10000}
    assert projective is False
    i = rho.field.gen
    assert rho.generator_matrix("a1").trace() == i - i  # i + (-i)


def test_representation_spec_errors():
    base = {
        "field": "QQ",
        "surface": {"genus": 1, "punctures": 1},
        "generators": {"a1": [[1, 0], [0, 1]], "b1": [[1, 0], [0, 1]]},
    }
    bad_det = dict(base, generators={"a1": [[2, 0], [0, 1]],
                                     "b1": [[1, 0], [0, 1]]})
    with pytest.raises(SpecError, match="determinant"):
        representation_from_spec(bad_det)
    with pytest.raises(SpecError):
        representation_from_spec(dict(base, surface={"genus": 0, "punctures": 0}))
    with pytest.raises(SpecError):
        representation_from_spec(dict(base, max_order=0))
    with pytest.raises(SpecError):
        representation_from_spec(dict(base, projective="yes"))


def test_conjugation_from_spec():
    doc = {
        "field": "QQ",
        "m": 1,
        "sigma": [[[1, 2], [0, 1]]],
        "tau": [[[[1, 2], [0, 1]], [[0, 4], [0, 0]]]],
    }
    sigma, tau, m = conjugation_from_spec(doc)
    assert m == 1 and len(sigma) == 1 and len(tau[0]) == 2
    with pytest.raises(SpecError):
        conjugation_from_spec(dict(doc, m=0))
    with pytest.raises(SpecError):
        conjugation_from_spec(dict(doc, tau=[]))


def test_load_spec_errors(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(SpecError, match="cannot read"):
        load_spec(str(missing))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpecError, match="line 1"):
        load_spec(str(bad))
    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2]")
    with pytest.raises(SpecError, match="object"):
        load_spec(str(arr))


def test_report_assembly_and_round_trip():
    import time
    started = time.monotonic()
    rep = make_report(["pcurv", "scan", "spec.json"], {"kind": "scan"}, started)
    assert rep["schema_version"] == 1
    assert rep["tool"] == "pcurvkit"
    assert rep["command"] == ["pcurv", "scan", "spec.json"]
    assert isinstance(rep["timing_ms"], int)
    text = dump_report(rep)
    assert json.loads(text) == rep
    # keys are sorted at every level for stable diffs
    orders = []
    json.loads(text, object_pairs_hook=lambda pairs: orders.append(
        [k for k, _ in pairs]) or dict(pairs))
    for keys in orders:
        assert keys == sorted(keys)
