import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mincsp.errors import MalformedRelation, ParseError
from mincsp.relations import (B2, B3, CLOSURE_OPS, Language, clause_relation, closed_under,
                              conjunction_table, even, ihs_decomposition, implication, is_irredundant,
                              make_relation, min_ihs_width, nae, nand, odd, or_, parse_language,
                              property_vector, relation_properties, serialize_language, unit, xor)


def all_relations(arity):
    codes = range(1, 1 << (1 << arity))
    for c in codes:
        table = [(c >> i) & 1 for i in range(1 << arity)]
        tuples = [format(i, f"0{arity}b") for i, bit in enumerate(table) if bit]
        yield make_relation(arity, tuples, f"r{c}")


def test_leftmost_coordinate_is_most_significant():
    r = make_relation(3, ["011"])
    assert r.codes.tolist() == [3]
    assert (0, 1, 1) in r and (1, 1, 0) not in r


def test_empty_relation_rejected():
    with pytest.raises(MalformedRelation):
        make_relation(2, [])


def test_named_builders():
    assert unit(1).tuples() == [(1,)]
    assert unit(0).name == "nx"
    assert set(implication().tuples()) == {(0, 0), (0, 1), (1, 1)}
    assert set(xor().tuples()) == {(0, 1), (1, 0)}
    assert len(even(4)) == 8 and len(odd(3)) == 4
    assert (0, 0, 0) not in or_(3) and (1, 1, 1) not in nand(3)
    assert len(nae()) == 6
    assert clause_relation((1, 1, 0)).name == "cl_ppn"
    assert (0, 0, 1) not in clause_relation((1, 1, 0))


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_closure_matches_direct_polymorphism_check(arity):
    for r in all_relations(arity):
        for op in CLOSURE_OPS:
            assert closed_under(r, op) == oracles.polymorphism(r, op), (r.tuples(), op)


def test_properties_cross_checks_hold_on_every_ternary_relation():
    # relation_properties raises if the two deciding mechanisms disagree
    for r in all_relations(3):
        relation_properties(r)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 5).flatmap(
    lambda a: st.tuples(st.just(a), st.sets(st.integers(0, (1 << a) - 1), min_size=1))))
def test_properties_on_random_wider_relations(data):
    arity, codes = data
    r = make_relation(arity, [format(c, f"0{arity}b") for c in sorted(codes)], "r")
    props = relation_properties(r)
    assert props["affine"] == oracles.polymorphism(r, "xor3")
    assert props["bijunctive"] == oracles.polymorphism(r, "maj3")


@pytest.mark.parametrize("rel,polarity,width", [
    (or_(3), "plus", 3), (nand(3), "minus", 3), (implication(), "plus", 1), (or_(2), "plus", 2),
])
def test_ihs_decomposition_rebuilds_relation(rel, polarity, width):
    clauses = ihs_decomposition(rel, width, polarity)
    assert clauses is not None
    assert np.array_equal(conjunction_table(clauses, rel.arity), rel.mask)
    if width > 1:
        assert ihs_decomposition(rel, width - 1, polarity) is None


def test_ihs_widths():
    lang = Language((or_(3), unit(1), unit(0), implication()))
    assert min_ihs_width(lang, "plus") == 3
    assert min_ihs_width(lang, "minus") is None
    assert min_ihs_width(Language((nae(),)), "plus") is None


def test_known_property_vectors():
    b2 = property_vector(B2())
    assert b2.affine and not b2.self_dual and not b2.bijunctive
    b3 = property_vector(B3())
    assert b3.affine and b3.self_dual
    n = property_vector(Language((nae(),)))
    assert n.self_dual and not n.affine and not n.horn and not n.dual_horn
    assert property_vector(Language((or_(3),))).one_valid


def test_irredundance():
    assert is_irredundant(nae())
    assert not is_irredundant(make_relation(2, ["00", "11"]))


def test_language_parse_roundtrip():
    lang = Language((even(4), xor(), nae()))
    text = serialize_language(lang)
    again = parse_language(text)
    assert again.names == lang.names
    assert all(a.same_tuples(b) for a, b in zip(again, lang))
    assert serialize_language(again) == text


@pytest.mark.parametrize("text,line", [
    ("relation a 2\n01\n", 1),
    ("relation a 2\n01\nend\nrelation b 1\n2\nend\n", 4),
    ("# comment\n\nbogus\n", 3),
    ("relation a x\nend\n", 1),
])
def test_language_parse_errors_carry_lines(text, line):
    with pytest.raises(ParseError) as info:
        parse_language(text)
    assert info.value.lineno == line


def test_duplicate_names_rejected():
    with pytest.raises(ParseError):
        parse_language("relation a 1\n1\nend\nrelation a 1\n0\nend\n")


def test_complement():
    r = make_relation(3, ["001", "110", "111"])
    c = r.complemented("c")
    assert set(c.tuples()) == {tuple(1 - b for b in t) for t in r.tuples()}
    assert c.complemented().same_tuples(r)
    assert all(closed_under(x, "not1") for x in (even(4), xor(), nae()))
    assert not closed_under(odd(3), "not1")


def test_decomposed_clauses_are_implied():
    rel = make_relation(3, ["000", "011", "111"])
    for clause in ihs_decomposition(rel, 2, "plus") or []:
        assert all(clause.satisfied_by(t) for t in rel.tuples())
