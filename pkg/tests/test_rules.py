import json

import pytest

from zxcalc import ring
from zxcalc.rules import (
    EllipsisGroup,
    Pattern,
    PSpider,
    RewriteRule,
    catalogue_json,
    empty_side_census,
    fig1_rules,
    fig1_starfree_iv_rules,
    fig3_rules,
    pconst,
    psum,
    pvar,
    validate_rule,
    variants,
)
from zxcalc.semantics import interpret


def test_set_sizes():
    assert len(fig1_rules()) == 12
    assert len(fig3_rules()) == 8
    assert len(fig1_starfree_iv_rules()) == 12


def test_rule_names():
    assert [r.name for r in fig1_rules()] == [
        "S1", "S1'", "S3", "SR", "B1", "B2", "K1", "K2", "EU", "H", "ZO", "ZS",
    ]
    assert [r.name for r in fig3_rules()] == [
        "S1", "S3'", "B1", "B2'", "EU'", "H", "IV'", "ZO'",
    ]


def test_zs_shape():
    zs = next(r for r in fig1_rules() if r.name == "ZS")
    lhs = zs.lhs.instantiate({}, {"a": 1})
    kinds = sorted(str(k) for k in lhs.nodes.values())
    assert len(lhs.nodes) == 2 and lhs.arity() == (0, 0)
    rhs = zs.rhs.instantiate({}, {"a": 1})
    assert len(rhs.nodes) == 1
    assert interpret(rhs).data[0][0] == ring.ZERO


def test_ivprime_rhs_empty():
    iv = next(r for r in fig3_rules() if r.name == "IV'")
    rhs = iv.rhs.instantiate({}, {})
    assert not rhs.nodes and rhs.arity() == (0, 0)
    assert interpret(iv.lhs.instantiate({}, {})).data[0][0] == ring.ONE


def test_all_rules_sound():
    for rules in (fig1_rules(), fig3_rules(), fig1_starfree_iv_rules()):
        for r in rules:
            rep = validate_rule(r, max_arity=2)
            assert rep.passed, (r.name, rep.failure)


def test_all_variants_sound():
    for r in fig1_rules() + fig3_rules():
        for v in variants(r):
            rep = validate_rule(v, max_arity=2)
            assert rep.passed, (v.full_name, rep.failure)


def test_variants_counts():
    by_name = {r.name: variants(r) for r in fig1_rules()}
    # colour swap of (H) is a genuinely new rule
    assert [v.variant for v in by_name["H"]] == ["plain", "cs"]
    # swapping colours in (B2) has the same effect as flipping it
    assert len(by_name["B2"]) <= 2
    # the spider rule is symmetric upside-down (renaming its variables)
    assert len(by_name["S1"]) == 2


def test_corrupted_s1_fails():
    lhs = Pattern()
    a = lhs.add(PSpider("Z", pvar("a"), (EllipsisGroup("A", is_output=False),)))
    b = lhs.add(PSpider("Z", pvar("b"), (EllipsisGroup("B"),)))
    lhs.edge(("n", a), ("n", b))
    rhs = Pattern()
    rhs.add(
        PSpider(
            "Z",
            pvar("a"),  # wrong: drops beta
            (EllipsisGroup("A", is_output=False), EllipsisGroup("B")),
        )
    )
    bad = RewriteRule("S1bad", lhs, rhs)
    rep = validate_rule(bad, max_arity=1)
    assert not rep.passed
    assert rep.failure["phases"] in ({"a": 0, "b": 1}, {"a": 0, "b": 2}, {"a": 0, "b": 3})


def test_census():
    assert empty_side_census(fig3_rules()) == ["IV'"]
    assert empty_side_census(fig1_rules()) == ["SR"]
    assert empty_side_census([r for r in fig1_rules() if r.name != "SR"]) == []
    assert empty_side_census(fig1_starfree_iv_rules()) == ["IV"]


def test_zo_both_sides_zero():
    zo = next(r for r in fig1_rules() if r.name == "ZO")
    lhs = interpret(zo.lhs.instantiate({}, {}))
    rhs = interpret(zo.rhs.instantiate({}, {}))
    assert lhs == rhs
    assert all(e == ring.ZERO for row in lhs.data for e in row)


def test_catalogue_json():
    cat = catalogue_json(fig3_rules())
    assert len(cat) == 8
    json.dumps(cat)
    s1 = next(c for c in cat if c["name"] == "S1")
    assert s1["phase_variables"] == ["a", "b"]
    assert s1["arity_variables"] == ["A", "B"]


def test_phase_expr_solver():
    e = psum("a", "b")
    assert e.solve(3, {"a": 1}) == {"a": 1, "b": 2}
    assert e.solve(3, {"a": 1, "b": 2}) == {"a": 1, "b": 2}
    assert e.solve(3, {"a": 1, "b": 1}) is None
    assert e.solve(3, {}) is None  # two unknowns
    m = pvar("a", sign=-1, offset=1)
    assert m.solve(0, {}) == {"a": 1}
    assert pconst(2).solve(2, {}) == {}
