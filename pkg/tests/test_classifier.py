from types import SimpleNamespace

import pytest

from mincsp.classifier import (APPROX_IHSB, FPT_BIJUNCTIVE, HARD_NP, HARD_WP, ODDSET_EQUIVALENT,
                               POLY_VALID, _pick_ihs, classify, flat_report, human_report)
from mincsp.relations import (B2, B3, Language, clause_relation, even, implication, make_relation, nae,
                              nand, or_, unit, xor)

ROSTER = [
    ((unit(0),), "POLY_VALID"),
    ((unit(1),), "POLY_VALID"),
    ((implication(),), "POLY_VALID"),
    ((xor(), implication()), "FPT_BIJUNCTIVE"),
    ((or_(3), unit(1), unit(0), implication()), "APPROX_IHSB(3,+)"),
    ((nand(3), unit(1), unit(0), implication()), "APPROX_IHSB(3,-)"),
    (tuple(B2()), "ODDSET_EQUIVALENT"),
    (tuple(B3()), "ODDSET_EQUIVALENT"),
    ((clause_relation((1, 1, 0)), unit(1), unit(0)), "HARD_WP"),
    ((clause_relation((0, 0, 1)), unit(1), unit(0)), "HARD_WP"),
    ((nae(),), "HARD_NP"),
]


@pytest.mark.parametrize("relations,label", ROSTER)
def test_roster(relations, label):
    assert classify(Language(relations)).label == label


def test_first_match_wins():
    # 0-valid beats bijunctive
    assert classify(Language((implication(), make_relation(2, ["00", "11"], "eq")))).kind == POLY_VALID
    # bijunctive beats IHS
    assert classify(Language((xor(), unit(1), unit(0)))).kind == FPT_BIJUNCTIVE
    # mixed polarities of wide clauses are neither IHS kind
    assert classify(Language((or_(2), nand(3), unit(1), unit(0)))).kind == HARD_WP


@pytest.mark.parametrize("plus,minus,expected", [
    (3, 3, (3, "plus")), (4, 3, (3, "minus")), (2, None, (2, "plus")), (None, 5, (5, "minus")),
    (None, None, None),
])
def test_ihs_tie_break(plus, minus, expected):
    props = SimpleNamespace(ihs_plus_width=plus, ihs_minus_width=minus)
    assert _pick_ihs(props) == expected


def test_affine_not_easy():
    r = classify(Language((even(3), unit(1), unit(0))))
    assert r.kind == ODDSET_EQUIVALENT and r.tier == "odd-set-equivalent"


def test_reports():
    r = classify(Language((nae(),)))
    assert r.kind == HARD_NP
    flat = flat_report(r).splitlines()
    assert flat[0] == "class=HARD_NP"
    assert "self_dual=1" in flat and "affine=0" in flat
    human = human_report(r)
    assert human.startswith("class: HARD_NP\n")
    assert "self-dual" in human
    assert classify(Language((clause_relation((1, 1, 0)), unit(1), unit(0)))).kind == HARD_WP
