"""The clone-collapsing transform and two-level composition."""

import pytest

from clonelab.clones import clone_structure
from clonelab.profiles import add_voter, load_fixture, remove_candidates
from clonelab.pqtree import build_pqtree, internal_nodes
from clonelab.scf import pv, rp_i, stv, uc_gillies
from clonelab.transform import (
    RULE_IDS,
    cc_transform,
    composition_product,
    resolve_rule,
    rule_label,
)


def K(*blocks):
    return [frozenset(b) for b in blocks]


def test_resolve_rule_ids(fixtures):
    assert set(RULE_IDS) == {
        "pv", "stv", "rp", "rp_n", "bp", "sc",
        "smith", "schwartz", "as", "ucg", "ucf",
        "rp_i:<i>", "stv_i:<i>",
    }
    p = fixtures["P8"]
    assert resolve_rule("rp_i:1")(p) == {"a"}
    assert resolve_rule("rp_i:2")(p) == {"c"}
    assert resolve_rule(pv) is pv  # callables pass through
    assert rule_label("stv^cc") == "stv^cc"
    assert rule_label(pv) == "pv"


@pytest.mark.parametrize("bad", ["", "plurality", "rp_i", "rp_i:x", "rp_i:0", "stv_i:-1", "xx^cc"])
def test_resolve_rule_rejects(bad):
    with pytest.raises(ValueError):
        resolve_rule(bad)


def test_composition_product_stv(fixtures):
    p2 = fixtures["P2"]
    dec = K({"a1", "a2"}, {"b"}, {"c"})
    # across blocks the pair keeps its majority, and head-to-head a2 beats a1
    assert composition_product("stv", p2, dec) == {"a2"}
    assert composition_product("as", p2, dec) == {"a2"}
    # but plain STV on the full profile elects a1
    assert stv(p2) == {"a1"}


def test_composition_product_more(fixtures):
    assert composition_product("bp", fixtures["P3"], K({"a1", "a2"}, {"b"}, {"c"})) == {"a1"}
    assert composition_product("sc", fixtures["P3"], K({"a1", "a2"}, {"b"}, {"c"})) == {"a1"}
    assert composition_product("bp", fixtures["P1"], K({"a"}, {"b", "c"}, {"d"})) == {"b"}
    assert composition_product("rp_n", fixtures["P5"], K({"a", "b"}, {"c"})) == {"a", "b", "c"}


def test_composition_with_trivial_decomposition_is_identity(fixtures):
    for name in ("P1", "P3", "P5"):
        p = fixtures[name]
        singletons = K(*({c} for c in p.candidates))
        for rid in ("pv", "stv", "bp", "ucg"):
            f = resolve_rule(rid)
            assert composition_product(rid, p, singletons) == f(p)


def test_composition_rejects_non_clone_blocks(fixtures):
    with pytest.raises(ValueError):
        composition_product("pv", fixtures["P1"], K({"a", "b"}, {"c"}, {"d"}))


def test_cc_transform_stv_clone_pair(fixtures):
    # the transform repairs STV's spoiler: collapsing the pair first makes
    # the head-to-head between the twins decide, electing a2
    assert cc_transform("stv", fixtures["P2"]) == {"a2"}


def test_cc_transform_pv(fixtures):
    p6 = fixtures["P6"]
    assert pv(p6) == {"a3"}
    assert cc_transform("pv", p6) == {"a1"}
    joined = add_voter(p6, ("a1", "b", "a2", "a3"))
    assert cc_transform("pv", joined) == {"a3"}


def test_cc_transform_bp(fixtures):
    p7 = fixtures["P7"]
    assert cc_transform("bp", p7) == {"a1", "a2"}
    assert cc_transform("bp", remove_candidates(p7, {"z"})) == {"a1"}


def test_trace_one_rule_call_per_visited_node(fixtures):
    for name in ("P1", "P2", "P6", "P7"):
        p = fixtures[name]
        trace = []
        cc_transform("stv", p, trace=trace)
        assert all(rec["rule_calls"] == 1 for rec in trace)
        assert all(rec["kind"] in ("P", "Q") for rec in trace)
        assert len(trace) <= len(internal_nodes(build_pqtree(p)))


def test_trace_p2(fixtures):
    trace = []
    assert cc_transform("stv", fixtures["P2"], trace=trace) == {"a2"}
    assert [rec["kind"] for rec in trace] == ["P", "Q"]
    assert trace[0]["node"] == ["a1", "a2", "b", "c"]
    assert trace[0]["selected"] == ["a1+a2"]  # winning block, by name
    assert trace[1]["node"] == ["a1", "a2"]
    assert trace[1]["selected"] == ["a2"]


def test_clone_independent_rules_are_fixed_points(corpus):
    """Rules that already ignore cloning are untouched by the transform."""
    f1, f1cc = resolve_rule("rp_i:1"), resolve_rule("rp_i:1^cc")
    g, gcc = resolve_rule("ucg"), resolve_rule("ucg^cc")
    for p in corpus:
        assert f1cc(p) == f1(p), p
        assert gcc(p) == g(p), p


def test_transform_is_idempotent(corpus):
    for rid in ("pv", "stv", "bp"):
        once = resolve_rule(rid + "^cc")
        twice = resolve_rule(rid + "^cc^cc")
        for p in corpus[:150]:
            assert once(p) == twice(p), (rid, p)


def test_transform_is_identity_without_clones(corpus):
    rules = [resolve_rule(r) for r in ("pv", "stv", "bp", "sc", "smith", "ucg")]
    checked = 0
    for p in corpus:
        nontrivial = [
            k for k in clone_structure(p) if 1 < len(k) < p.m
        ]
        if nontrivial:
            continue
        checked += 1
        for f in rules:
            assert cc_transform(f, p) == f(p), (f, p)
    assert checked >= 100


def test_transform_winners_are_candidates(corpus):
    for p in corpus[:150]:
        w = cc_transform("stv", p)
        assert w and w <= frozenset(p.candidates)
