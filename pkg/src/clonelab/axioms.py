"""Axiom checks by exhaustive search at desk scale.

Each check runs a rule over every instance the axiom quantifies on one
profile (clone sets, removals, ballot promotions, joining voters, block
partitions) and returns an :class:`AxiomVerdict`: ``holds`` is True, False
with a re-checkable witness, or None when an enumeration cap fired — a
capped search is *inconclusive*, never a pass.

The clone-aware axiom variants (``clone_aware=True``, the default) quantify
only over changes that leave the profile's clone structure intact; the plain
variants drop that restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, permutations, product

from .clones import EnumerationCapExceeded, clone_structure, enumerate_decompositions
from .profiles import (
    Profile,
    add_voter,
    block_name,
    remove_candidates,
    replace_voter,
    restrict,
    summarize,
)
from .scf import condorcet_winner, smith
from .spf import neg, resolve_spf
from .transform import composition_product, resolve_rule

__all__ = [
    "AxiomVerdict",
    "check_ioc",
    "check_cc",
    "check_condorcet",
    "check_smith",
    "check_monotonicity_ca",
    "check_participation_ca",
    "check_isda_ca",
    "check_ioc_spf",
    "check_cc_spf",
]


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of one axiom check on one profile.

    ``holds`` is ``None`` when the search was cut off by a cap and nothing
    can be concluded.  ``witness`` contains plain lists/strings/ints so it
    can be re-run or serialised as is.
    """

    axiom: str
    holds: bool | None
    witness: dict | None = None
    detail: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.holds is None


def _sorted_sets(sets) -> list[list[str]]:
    return sorted(sorted(s) for s in sets)


def _nontrivial_clone_sets(profile: Profile):
    m = profile.m
    return sorted(
        (k for k in clone_structure(profile) if 2 <= len(k) <= m - 1),
        key=lambda k: tuple(sorted(k)),
    )


# ---------------------------------------------------------------------------
# winner-set axioms


def check_ioc(rule, profile: Profile) -> AxiomVerdict:
    """Independence of clones: deleting one clone never changes whether its
    clone set wins, nor any outsider's fate."""
    f = resolve_rule(rule)
    winners = f(profile)
    for k in _nontrivial_clone_sets(profile):
        for a in sorted(k):
            reduced = remove_candidates(profile, {a})
            reduced_winners = f(reduced)
            base = {
                "clone_set": sorted(k),
                "removed": a,
                "winners": sorted(winners),
                "winners_without": sorted(reduced_winners),
            }
            if bool(k & winners) != bool((k - {a}) & reduced_winners):
                return AxiomVerdict("ioc", False, base | {"violation": "clone set"})
            for b in sorted(set(profile.candidates) - k):
                if (b in winners) != (b in reduced_winners):
                    return AxiomVerdict(
                        "ioc", False, base | {"violation": "outsider", "outsider": b}
                    )
    return AxiomVerdict("ioc", True)


def check_cc(rule, profile: Profile, cap: int = 10**6) -> AxiomVerdict:
    """Composition consistency: every two-level election over a partition
    into clone sets reproduces the rule's winners."""
    f = resolve_rule(rule)
    winners = f(profile)
    try:
        decompositions = enumerate_decompositions(profile, cap)
    except EnumerationCapExceeded as exc:
        return AxiomVerdict("cc", None, detail=str(exc))
    for blocks in decompositions:
        composed = composition_product(f, profile, blocks)
        if composed != winners:
            return AxiomVerdict(
                "cc",
                False,
                {
                    "decomposition": _sorted_sets(blocks),
                    "winners": sorted(winners),
                    "composed": sorted(composed),
                },
            )
    return AxiomVerdict("cc", True)


def check_condorcet(rule, profile: Profile) -> AxiomVerdict:
    """If somebody beats everyone head-to-head, the rule elects exactly them."""
    f = resolve_rule(rule)
    cw = condorcet_winner(profile)
    if cw is None:
        return AxiomVerdict("condorcet", True, detail="no pairwise-unbeaten candidate")
    winners = f(profile)
    if winners == frozenset({cw}):
        return AxiomVerdict("condorcet", True)
    return AxiomVerdict(
        "condorcet", False, {"condorcet_winner": cw, "winners": sorted(winners)}
    )


def check_smith(rule, profile: Profile) -> AxiomVerdict:
    """All winners come from the Smith set."""
    f = resolve_rule(rule)
    winners = f(profile)
    top = smith(profile)
    if winners <= top:
        return AxiomVerdict("smith", True)
    return AxiomVerdict(
        "smith",
        False,
        {"winners": sorted(winners), "smith_set": sorted(top), "outside": sorted(winners - top)},
    )


def check_monotonicity_ca(rule, profile: Profile, *, clone_aware: bool = True) -> AxiomVerdict:
    """Promoting a winner one seat on one ballot never dethrones them.

    The clone-aware variant only considers promotions that leave the clone
    structure unchanged.
    """
    axiom = "mono_ca" if clone_aware else "mono"
    f = resolve_rule(rule)
    winners = f(profile)
    structure = clone_structure(profile)
    for a in sorted(winners):
        for i in range(1, profile.n + 1):
            ranking = profile.voter_ranking(i)
            k = ranking.index(a)
            if k == 0:
                continue
            promoted = list(ranking)
            promoted[k - 1], promoted[k] = promoted[k], promoted[k - 1]
            changed = replace_voter(profile, i, promoted)
            if clone_aware and clone_structure(changed) != structure:
                continue
            new_winners = f(changed)
            if a not in new_winners:
                return AxiomVerdict(
                    axiom,
                    False,
                    {
                        "winner": a,
                        "voter": i,
                        "ballot": list(ranking),
                        "promoted_ballot": promoted,
                        "winners": sorted(winners),
                        "new_winners": sorted(new_winners),
                    },
                )
    return AxiomVerdict(axiom, True)


def check_participation_ca(rule, profile: Profile, *, clone_aware: bool = True) -> AxiomVerdict:
    """Joining the electorate never leaves the joiner worse off.

    For every possible new ballot r, the r-favourite among the winners after
    joining must be at least as good (by r) as the r-favourite before.  The
    clone-aware variant only considers ballots preserving the clone
    structure.
    """
    axiom = "part_ca" if clone_aware else "part"
    f = resolve_rule(rule)
    winners = f(profile)
    structure = clone_structure(profile)
    for ranking in permutations(profile.candidates):
        bigger = add_voter(profile, ranking)
        if clone_aware and clone_structure(bigger) != structure:
            continue
        new_winners = f(bigger)
        pos = {c: k for k, c in enumerate(ranking)}
        favourite_before = min(winners, key=pos.__getitem__)
        favourite_after = min(new_winners, key=pos.__getitem__)
        if pos[favourite_before] < pos[favourite_after]:
            return AxiomVerdict(
                axiom,
                False,
                {
                    "ballot": list(ranking),
                    "favourite_before": favourite_before,
                    "favourite_after": favourite_after,
                    "winners": sorted(winners),
                    "new_winners": sorted(new_winners),
                },
            )
    return AxiomVerdict(axiom, True)


def _structure_minus(structure, a: str):
    out = {k - {a} for k in structure}
    out.discard(frozenset())
    return frozenset(out)


def check_isda_ca(rule, profile: Profile, *, clone_aware: bool = True) -> AxiomVerdict:
    """Deleting a candidate outside the Smith set never changes the winners.

    The clone-aware variant only considers deletions under which the clone
    structure shrinks exactly by the deleted candidate.
    """
    axiom = "isda_ca" if clone_aware else "isda"
    f = resolve_rule(rule)
    winners = f(profile)
    top = smith(profile)
    structure = clone_structure(profile)
    for a in sorted(set(profile.candidates) - top):
        reduced = remove_candidates(profile, {a})
        if clone_aware and clone_structure(reduced) != _structure_minus(structure, a):
            continue
        reduced_winners = f(reduced)
        if reduced_winners != winners:
            return AxiomVerdict(
                axiom,
                False,
                {
                    "removed": a,
                    "smith_set": sorted(top),
                    "winners": sorted(winners),
                    "winners_without": sorted(reduced_winners),
                },
            )
    return AxiomVerdict(axiom, True)


# ---------------------------------------------------------------------------
# ranking-set axioms


def _fresh_name(profile: Profile) -> str:
    if "z" not in profile.candidates:
        return "z"
    k = 0
    while f"z{k}" in profile.candidates:
        k += 1
    return f"z{k}"


def check_ioc_spf(spf, profile: Profile) -> AxiomVerdict:
    """Ranking-level independence of clones: collapsing a clone set to a
    fresh name commutes with deleting one of its members."""
    fn = resolve_spf(spf)
    z = _fresh_name(profile)
    try:
        base = fn(profile)
        for k in _nontrivial_clone_sets(profile):
            collapsed = frozenset(neg(r, k, z) for r in base)
            for a in sorted(k):
                reduced = fn(remove_candidates(profile, {a}))
                collapsed_reduced = frozenset(neg(r, k - {a}, z) for r in reduced)
                if collapsed != collapsed_reduced:
                    return AxiomVerdict(
                        "ioc_spf",
                        False,
                        {
                            "clone_set": sorted(k),
                            "removed": a,
                            "collapsed": sorted(">".join(r) for r in collapsed),
                            "collapsed_without": sorted(
                                ">".join(r) for r in collapsed_reduced
                            ),
                        },
                    )
    except EnumerationCapExceeded as exc:
        return AxiomVerdict("ioc_spf", None, detail=str(exc))
    return AxiomVerdict("ioc_spf", True)


def check_cc_spf(spf, profile: Profile, cap: int = 10**6) -> AxiomVerdict:
    """Ranking-level composition consistency: rank the blocks, rank inside
    each block, and splice — the result must be exactly the rule's rankings."""
    fn = resolve_spf(spf)
    try:
        base = fn(profile)
        decompositions = enumerate_decompositions(profile, cap)
        for blocks in decompositions:
            packed = summarize(profile, blocks)
            inner = {block_name(b): fn(restrict(profile, b)) for b in blocks}
            composed: set = set()
            for meta_ranking in fn(packed):
                for combo in product(*(inner[meta] for meta in meta_ranking)):
                    composed.add(tuple(chain.from_iterable(combo)))
            if frozenset(composed) != base:
                return AxiomVerdict(
                    "cc_spf",
                    False,
                    {
                        "decomposition": _sorted_sets(blocks),
                        "rankings": sorted(">".join(r) for r in base),
                        "composed": sorted(">".join(r) for r in composed),
                    },
                )
    except EnumerationCapExceeded as exc:
        return AxiomVerdict("cc_spf", None, detail=str(exc))
    return AxiomVerdict("cc_spf", True)
