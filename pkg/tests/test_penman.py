import pytest

from amrplus.constraints import Cond, ConstraintSet, Eq, Neg, Presup, ShCond, ShNeg
from amrplus.errors import ParseError
from amrplus.penman import (
    AmrPlusNode,
    Constant,
    VarRef,
    format_document,
    iter_nodes,
    main_variable,
    parse,
    parse_many,
    subamrs,
    variables,
)
from docgen import random_document


def test_parse_nodes_and_constraints():
    doc = parse('(e /1/ smile-01 :ARG0 (x /2/ person :Name "Mary")) {2<3,3:~1}')
    assert doc.root.variable == "e" and doc.root.index == 1
    x = doc.root.roles[0][1]
    assert x == AmrPlusNode("x", 2, "person", (("Name", Constant('"Mary"')),))
    assert set(doc.constraints) == {Presup(2, 3), Neg(3, 1)}


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1=2", Eq(1, 2)),
        ("2<1", Presup(2, 1)),
        ("3:~1", Neg(3, 1)),
        ("4:2=>1", Cond(4, 2, 1)),
        ("~1", ShNeg(1)),
        ("2=>1", ShCond(2, 1)),
    ],
)
def test_constraint_forms(text, expected):
    doc = parse(f"(e /1/ smile-01) {{{text}}}")
    assert list(doc.constraints) == [expected]
    assert str(expected) == text


def test_reentrancy_and_constants():
    doc = parse("(b /1/ bite-01 :ARG0 (s /2/ snake) :ARG1 s :quant 2 :polarity -) {3:2=>1}")
    rels = dict(doc.root.roles)
    assert rels["ARG1"] == VarRef("s")
    assert rels["quant"] == Constant("2")
    assert rels["polarity"] == Constant("-")
    assert main_variable(rels["ARG1"]) == "s"
    assert main_variable(rels["ARG0"]) == "s"
    assert main_variable(Constant('"Rex"')) == Constant('"Rex"')


def test_plain_amr_has_no_indices():
    doc = parse("(e / scare-01 :ARG0 (x / dog))")
    assert doc.is_plain
    assert [n.index for n in iter_nodes(doc.root)] == [None, None]
    assert format_document(doc) == "(e / scare-01 :ARG0 (x / dog))"


def test_empty_constraint_block_round_trips():
    doc = parse("(e /1/ scare-01 :ARG0 (x /1/ dog)) {}")
    assert len(doc.constraints) == 0
    assert parse(format_document(doc)) == doc


def test_parse_many_ids_and_numbering():
    docs = parse_many("# ::id a\n(x /1/ dog)\n\n(y /1/ cat)\n\n# ::id c\n(z /1/ cow)\n")
    assert [d.id for d in docs] == ["a", "2", "c"]
    assert parse_many("") == []


def test_subamrs_and_variables():
    doc = parse("(e /1/ scare-01 :ARG0 (x /2/ dog) :ARG1 (y /3/ cat)) {1=2,1=3}")
    assert [(i, n.variable) for i, n in subamrs(doc)] == [(1, "e"), (2, "x"), (3, "y")]
    assert variables(doc) == ["e", "x", "y"]


@pytest.mark.parametrize(
    "text, code",
    [
        ("(e /1/ smile-01", "SYNTAX"),
        ("(e /1/ smile-01 :ARG0 z)", "UNBOUND_VAR"),
        ("(e /1/ smile-01 :ARG0 (e /1/ dog))", "DUPLICATE_VAR"),
        ("(e /1/ smile-01) {1:~}", "BAD_CONSTRAINT"),
        ("(e /0/ smile-01)", "BAD_CONSTRAINT"),
        ('(e /1/ smile-01 :name "Rex)', "LEX"),
        ("(e /1/ smile-01) (x /1/ dog)", "SYNTAX"),
    ],
)
def test_parse_errors(text, code):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.code == code
    assert info.value.line >= 1 and info.value.column >= 1


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse("(e /1/ smile-01\n  :ARG0 q)")
    assert (info.value.line, info.value.column) == (2, 9)


def test_golden_round_trip(golden):
    assert len(golden) == 15
    for doc in golden.values():
        again = parse(format_document(doc))
        assert again == doc
        assert format_document(again) == format_document(doc)


def test_random_round_trip():
    for seed in range(300):
        doc = random_document(seed)
        assert parse(format_document(doc)) == doc


def test_constraint_set_canonical():
    a = ConstraintSet.of([Neg(3, 1), Presup(2, 3), Neg(3, 1)])
    b = ConstraintSet.of([Presup(2, 3), Neg(3, 1)])
    assert a == b and len(a) == 2
    assert str(a) == "{2<3,3:~1}"
