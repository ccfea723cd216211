"""End-to-end acceptance checklist: frozen results on the bundled profiles,
oracle equivalences over the random corpus, global-law sweeps, and the
transform's rule-call budget.

Each test states one claim, so ``pytest -v tests/test_acceptance.py`` reads
as the checklist with one pass/fail line per claim.  Two claims are knowingly
red; their failure messages explain, self-contained, why the claimed value
cannot hold under the definitions every other test pins down:

* ``test_tree_shapes_and_decomposition_degree`` — the chain-shaped tree has
  no freely-permutable node, so its degree is 2 by definition, not the
  claimed 3.
* ``test_composition_on_a_profile_implies_clone_independence_there`` — the
  per-profile implication is missing the premise it needs on the removal
  profiles; the premise-complete version passes in test_axioms.
"""

from itertools import combinations, permutations, product

import pytest

from clonelab.axioms import check_cc, check_cc_spf, check_ioc
from clonelab.clones import clone_metric, clone_structure, enumerate_decompositions
from clonelab.pqtree import (
    build_pqtree,
    clone_sets_from_tree,
    decomposition_degree,
    internal_nodes,
    serialize_tree,
)
from clonelab.games import (
    GameSpec,
    gamma_dominant_run,
    gamma_obviously_dominant_run,
    lambda_obviously_dominant_run,
)
from clonelab.profiles import (
    add_voter,
    block_name,
    majority_matrix,
    remove_candidates,
    replace_voter,
    restrict,
    summarize,
)
from clonelab.scf import (
    alt_smith,
    beatpath,
    condorcet_winner,
    pv,
    rp_i,
    rp_i_ranking,
    rp_n,
    rp_put_rankings,
    schwartz,
    smith,
    split_cycle,
    strength_matrix,
    stv,
    uc_gillies,
)
from clonelab.spf import nr_star, resolve_spf, spf_to_scf, substitute
from clonelab.transform import cc_transform, composition_product, resolve_rule

from oracles import (
    brute_clone_sets,
    brute_schwartz,
    brute_smith,
    is_strict_stack,
    is_weak_stack,
)

CLONE_PAIR_DEC = [frozenset({"a1", "a2"}), frozenset({"b"}), frozenset({"c"})]

# Every concrete rule the registry exposes (templates instantiated at i=1).
ALL_RULES = [
    "pv", "stv", "rp", "rp_n", "bp", "sc", "smith", "schwartz",
    "as", "ucg", "ucf", "rp_i:1", "stv_i:1",
]

# The transform targets whose output is swept for composition.
TRANSFORMABLE = ["pv", "stv", "bp", "sc", "as", "smith", "schwartz", "ucg"]


# ---------------------------------------------------------------------------
# 1. frozen results on the bundled profiles


def test_plurality_rewards_removing_a_clone(fixtures):
    p2 = fixtures["P2"]
    assert pv(p2) == {"b"}
    assert pv(remove_candidates(p2, {"a2"})) == {"a1"}


def test_runoff_and_smith_runoff_composition_on_the_clone_pair(fixtures):
    """Collapsing the clone pair flips which of its members wins the runoff."""
    p2 = fixtures["P2"]
    assert stv(p2) == {"a1"}
    assert stv(summarize(p2, CLONE_PAIR_DEC)) == {"a1+a2"}
    assert composition_product("stv", p2, CLONE_PAIR_DEC) == {"a2"}
    assert alt_smith(p2) == {"a1"}
    assert composition_product("as", p2, CLONE_PAIR_DEC) == {"a2"}


def test_majority_and_strength_tables_on_the_near_tied_cycle(fixtures):
    p3 = fixtures["P3"]
    order = ("a1", "a2", "b", "c")
    margins = {
        "a1": (0, 1, 7, -3),
        "a2": (-1, 0, 7, -3),
        "b": (-7, -7, 0, 5),
        "c": (3, 3, -5, 0),
    }
    strengths = {
        "a1": (0, 3, 7, 5),
        "a2": (3, 0, 7, 5),
        "b": (3, 3, 0, 5),
        "c": (3, 3, 3, 0),
    }
    mm = majority_matrix(p3)
    sm = strength_matrix(p3)
    for a in order:
        for b, expected in zip(order, margins[a]):
            assert mm.margin(a, b) == expected, (a, b)
        for b, expected in zip(order, strengths[a]):
            if a != b:
                assert sm.strength(a, b) == expected, (a, b)


def test_beatpath_and_split_cycle_composition_on_the_near_tied_cycle(fixtures):
    p3 = fixtures["P3"]
    assert beatpath(p3) == {"a1", "a2"}
    assert split_cycle(p3) == {"a1", "a2"}
    assert composition_product("bp", p3, CLONE_PAIR_DEC) == {"a1"}
    assert composition_product("sc", p3, CLONE_PAIR_DEC) == {"a1"}


def test_voter_union_ranked_pairs_composition_gap(fixtures):
    p5 = fixtures["P5"]
    assert rp_n(p5) == {"a", "c"}
    dec = [frozenset({"a", "b"}), frozenset({"c"})]
    assert composition_product("rp_n", p5, dec) == {"a", "b", "c"}


def test_tree_shapes_and_decomposition_degree(fixtures):
    chain = build_pqtree(fixtures["P4"])
    nested = build_pqtree(fixtures["P2"])
    assert serialize_tree(chain) == "(a⊙b)⊕c⊕d"
    assert serialize_tree(nested) == "b⊙(a1⊙a2)⊙c"
    assert decomposition_degree(nested) == 3
    assert decomposition_degree(chain) == 3, (
        "degree of the chain tree (a⊙b)⊕c⊕d is "
        f"{decomposition_degree(chain)}, not the claimed 3.  The degree is "
        "the maximum fan-out over freely-permutable nodes, and 2 when the "
        "tree has none; this tree's root is order-fixed and its only other "
        "internal node has two children.  Counting order-fixed fan-out "
        "instead would say 5 for the unanimous five-candidate chain, "
        "contradicting the degree-2 pin that holds there.  No reading of "
        "the definition yields 3 for this tree."
    )


def test_transform_monotonicity_failure_requires_breaking_the_clones(fixtures):
    """Promoting the winner changes the outcome only because the promotion
    destroys the clone pair — the clone-aware check therefore ignores it."""
    p6 = fixtures["P6"]
    assert cc_transform("pv", p6) == {"a1"}
    assert p6.voter_ranking(9) == ("b", "a1", "a2", "a3")
    promoted = replace_voter(p6, 9, ("a1", "b", "a2", "a3"))
    assert cc_transform("pv", promoted) == {"a3"}


def test_transform_participation_failure_with_the_pinned_ballot(fixtures):
    p6 = fixtures["P6"]
    before = cc_transform("pv", p6)
    assert before == {"a1"}
    joiner = ("a1", "b", "a2", "a3")
    after = cc_transform("pv", add_voter(p6, joiner))
    assert after == {"a3"}
    # the joiner's favourite winner got strictly worse: a1 (their top) -> a3
    assert joiner.index("a1") < joiner.index("a3")


def test_transform_smith_dominated_spoiler_removal(fixtures):
    p7 = fixtures["P7"]
    assert cc_transform("bp", p7) == {"a1", "a2"}
    assert cc_transform("bp", remove_candidates(p7, {"z"})) == {"a1"}
    assert smith(p7) == set(p7.candidates) - {"z"}


def test_rank_composition_gap_and_runoff_top_exclusion(fixtures):
    # beatpath-over-rankings composes to a strictly smaller ranking set
    v = check_cc_spf(resolve_spf("bp*"), fixtures["P8"])
    assert v.holds is False
    assert v.witness["decomposition"] == [["a"], ["b", "c"]]
    assert len(v.witness["rankings"]) == 6
    assert len(v.witness["composed"]) == 4
    # the nested runoff ranks a1 on top somewhere, but its composition never does
    p9 = fixtures["P9"]
    base_tops = {r[0] for r in nr_star(p9)}
    assert "a1" in base_tops
    dec = next(
        k for k in enumerate_decompositions(p9)
        if any(1 < len(b) < len(p9.candidates) for b in k)
    )
    by_name = {block_name(b): b for b in dec}
    composed = set()
    for meta in nr_star(summarize(p9, dec)):
        parts = [nr_star(restrict(p9, by_name[m])) for m in meta]
        for combo in product(*parts):
            r = meta
            for m, inner in zip(meta, combo):
                r = substitute(r, m, inner)
            composed.add(r)
    assert "a1" not in {r[0] for r in composed}


# ---------------------------------------------------------------------------
# 2. oracle equivalences over the random corpus


def test_corpus_is_desk_scale(corpus):
    assert len(corpus) >= 500
    assert all(len(p.candidates) <= 5 for p in corpus)
    assert all(sum(count for _, count in p.groups) <= 6 for p in corpus)


def test_clone_sets_match_subset_enumeration(corpus):
    for p in corpus:
        assert clone_structure(p) == brute_clone_sets(p)


def test_tree_encodes_exactly_the_clone_sets(corpus):
    for p in corpus:
        assert clone_sets_from_tree(build_pqtree(p)) == clone_structure(p)


def test_smith_and_schwartz_match_brute_force(corpus):
    for p in corpus:
        assert smith(p) == brute_smith(p)
        assert schwartz(p) == brute_schwartz(p)


def test_ranked_pairs_variants_match_stack_oracles(corpus):
    for p in corpus:
        strict = {
            r for r in permutations(p.candidates) if is_strict_stack(p, r, 1)
        }
        assert strict == {rp_i_ranking(p, 1)}, p
        weak = {
            r for r in permutations(p.candidates) if is_weak_stack(p, r)
        }
        assert weak == rp_put_rankings(p), p


# ---------------------------------------------------------------------------
# 3. global-law sweeps over the same corpus


def test_composition_on_a_profile_implies_clone_independence_there(corpus):
    """Per-profile form: wherever a rule composes, it treats clones
    independently *on that same profile* — for every registered rule."""
    for p in corpus:
        for rid in ALL_RULES:
            if not check_cc(rid, p).holds:
                continue
            verdict = check_ioc(rid, p)
            if verdict.holds:
                continue
            removed = verdict.witness["removed"]
            reduced = check_cc(rid, remove_candidates(p, {removed}))
            pytest.fail(
                f"rule {rid} composes under every clone decomposition of\n"
                f"  {p}\n"
                f"yet fails clone independence there: {verdict.witness}.\n"
                "Composing on the profile alone is too weak a premise: "
                "independence compares winners against the removal profile "
                f"(minus {removed}), and on that profile the same "
                f"composition check fails ({reduced.witness}).  A "
                "per-profile implication would need the composition premise "
                "on the removal profiles as well; the version with that "
                "premise passes in test_axioms.py::test_cc_implies_ioc."
            )


def test_transform_is_identity_on_clone_free_profiles(corpus):
    seen = 0
    for p in corpus:
        m = len(p.candidates)
        if any(1 < len(k) < m for k in clone_structure(p)):
            continue
        seen += 1
        for rid in TRANSFORMABLE:
            assert cc_transform(rid, p) == resolve_rule(rid)(p), (rid, p)
    assert seen >= 100


def test_transform_output_composes_under_every_decomposition(corpus):
    for rid in TRANSFORMABLE:
        wrapped = resolve_rule(f"{rid}^cc")
        for p in corpus:
            assert check_cc(wrapped, p).holds is True, (rid, p)


def test_transform_fixes_rules_that_already_compose(corpus, fixtures):
    for p in list(fixtures.values()) + list(corpus):
        assert cc_transform("rp_i:1", p) == rp_i(p, 1), p
        assert cc_transform("ucg", p) == uc_gillies(p), p


def test_priority_ranked_pairs_and_left_covering_compose_everywhere(corpus):
    for p in corpus:
        assert check_cc("rp_i:1", p).holds is True, p
        assert check_cc("ucg", p).holds is True, p


def test_transform_preserves_condorcet_smith_and_decisiveness(corpus):
    condorcet_rules = ["bp", "sc", "as", "smith", "schwartz", "ucg", "ucf", "rp_i:1"]
    for p in corpus:
        cw = condorcet_winner(p)
        top_cycle = smith(p)
        for rid in condorcet_rules:
            winners = cc_transform(rid, p)
            assert winners <= top_cycle, (rid, p)
            if cw is not None:
                assert winners == {cw}, (rid, p)
        assert len(cc_transform("rp_i:1", p)) == 1, p


def test_transform_is_idempotent(corpus):
    for rid in TRANSFORMABLE:
        def once(q, _r=rid):
            return cc_transform(_r, q)

        for p in corpus:
            assert cc_transform(once, p) == once(p), (rid, p)


def test_rank_rules_project_to_their_winner_rules(corpus):
    pairs = [
        ("stv*", "stv"), ("bp*", "bp"), ("rp*", "rp"),
        ("rp_i:1*", "rp_i:1"), ("rp_n*", "rp_n"),
    ]
    for sid, rid in pairs:
        tops = spf_to_scf(sid)
        f = resolve_rule(rid)
        for p in corpus:
            assert tops(p) == f(p), (sid, p)


def test_rank_transform_composes_for_priority_and_nested_runoff(corpus):
    for sid in ["rp_i:1*", "nnr_i:1"]:
        spf = resolve_spf(sid)
        for p in corpus:
            assert check_cc_spf(spf, p).holds is True, (sid, p)


def test_clone_distance_is_a_metric(corpus):
    for p in corpus:
        cands = p.candidates
        d = {(a, b): clone_metric(p, a, b) for a in cands for b in cands}
        for a in cands:
            assert d[a, a] == 0
        for a, b in combinations(cands, 2):
            assert d[a, b] == d[b, a] > 0
        for a, b, c in product(cands, repeat=3):
            assert d[a, c] <= d[a, b] + d[b, c], (a, b, c, p)


def test_running_is_dominant_and_obviously_dominant_for_composing_rules(corpus):
    for p in corpus:
        for rid in ["rp_i:1", "stv_i:1"]:
            flat = GameSpec(p, rid, "gamma")
            staged = GameSpec(p, rid, "lambda")
            for a in p.candidates:
                assert gamma_dominant_run(flat, a)[0] is True, (rid, a, p)
                assert lambda_obviously_dominant_run(staged, a)[0] is True, (
                    rid, a, p,
                )


def test_runoff_running_is_not_obviously_dominant_on_the_cycle(fixtures):
    game = GameSpec(fixtures["P1"], "stv", "gamma")
    dominant, _ = gamma_dominant_run(game, "b")
    obvious, witness = gamma_obviously_dominant_run(game, "b")
    assert dominant is True
    assert obvious is False
    assert witness is not None


# ---------------------------------------------------------------------------
# 4. operation counts of the transform


def test_transform_calls_the_rule_once_per_visited_node(corpus, fixtures):
    """Budget: at most one rule call per internal node, plus one per
    order-fixed pairwise comparison (which is that same single call)."""
    for p in list(fixtures.values()) + list(corpus):
        trace: list = []
        cc_transform("stv", p, trace=trace)
        internals = internal_nodes(build_pqtree(p))
        budget = len(internals) + sum(1 for n in internals if n.kind == "Q")
        assert all(record["rule_calls"] == 1 for record in trace)
        assert sum(record["rule_calls"] for record in trace) <= budget
    pinned: list = []
    cc_transform("stv", fixtures["P2"], trace=pinned)
    assert len(pinned) == 2
