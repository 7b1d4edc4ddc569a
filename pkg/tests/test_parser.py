from importlib import resources

import pytest

from operadgb import builtin, parse_presentation, render_presentation
from operadgb.errors import (
    ArityError,
    NonHomogeneousRelation,
    PresentationSyntaxError,
    UnknownGenerator,
)
from operadgb.presentations import BUILTIN_NAMES


def shipped(name):
    return resources.files("operadgb").joinpath("data", name).read_text()


def test_shipped_ass_equals_builtin():
    assert parse_presentation(shipped("ass.op")) == builtin("ass")


def test_shipped_ii0_equals_builtin():
    p = parse_presentation(shipped("hom_ass_II0.op"))
    assert p == builtin("hom_ass_II0")


def test_shipped_lie_matches_builtin_relations():
    p = parse_presentation(shipped("lie.op"))
    assert p.relations == builtin("lie").relations


def test_reversed_relation_is_equal_up_to_sign():
    text = shipped("ass.op").replace("rel m(m(1,2),3) - m(1,m(2,3))", "rel m(1,m(2,3)) - m(m(1,2),3)")
    (r,) = parse_presentation(text).relations
    assert r == -builtin("ass").relations[0]


def test_coefficients_and_comments():
    text = """operad t   # trailing comment
mode shuffle
symbols m
gen m 2
rel 1/2*m(m(1,2),3) - 2*m(m(1,3),2)
"""
    (r,) = parse_presentation(text).relations
    assert sorted(r.terms.values()) == [-2, 0.5]


BASE = "operad x\nmode nonsymmetric\nsymbols m\ngen m 2\n"


@pytest.mark.parametrize("rel, err, line, col", [
    ("rel m(1,q(2,3))", UnknownGenerator, 5, 9),
    ("rel m(1,2,3)", ArityError, 5, 5),
    ("rel m(m(1,2),3) - m(1,2)", NonHomogeneousRelation, 5, 19),
    ("rel m(m(1,2),3) m(1,m(2,3))", PresentationSyntaxError, 5, 17),
    ("rel m(1,m(2,3)", PresentationSyntaxError, 5, 15),
    ("rel m(1;2)", PresentationSyntaxError, 5, 8),
    ("rel m(2,1)", ArityError, 5, 5),
])
def test_errors_carry_locations(rel, err, line, col):
    with pytest.raises(err) as info:
        parse_presentation(BASE + rel + "\n", source="x.op")
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"x.op:{line}:{col}:")


def test_nonsymmetric_mode_rejects_shuffled_leaves():
    text = "operad x\nmode nonsymmetric\nsymbols m\ngen m 2\nrel m(m(1,3),2) - m(m(1,2),3)\n"
    with pytest.raises(ArityError):
        parse_presentation(text)


def test_directive_errors():
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("operad x\nmode weird\n")
    assert info.value.line == 2
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("operad x\nfoo bar\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("operad x\ngen m 2\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("operad x\nmode shuffle\ngen m 2\ngen m 2\n")
    with pytest.raises(ArityError):
        parse_presentation("operad x\nmode shuffle\ngen m 0\n")


def test_variable_relations_need_shuffle_mode():
    text = "operad x\nmode nonsymmetric\ngen br 2 antisymmetric\nrel br(a,b) + br(b,a)\n"
    with pytest.raises(PresentationSyntaxError):
        parse_presentation(text)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_render_parse_round_trip(name):
    kw = dict(k=1, N=2, J=2) if name == "clie" else {}
    p = builtin(name, **kw)
    text = render_presentation(p)
    q = parse_presentation(text)
    assert q == p
    assert render_presentation(q) == text


def test_order_options_round_trip():
    text = "operad x\nmode shuffle\norder path-lex perm=lex word=right-to-left\nsymbols m\ngen m 2\n" \
           "rel m(m(1,2),3) - m(1,m(2,3))\n"
    p = parse_presentation(text)
    assert p.order_spec.permutation_rule == "lex" and p.order_spec.word_direction == "right-to-left"
    assert parse_presentation(render_presentation(p)) == p
