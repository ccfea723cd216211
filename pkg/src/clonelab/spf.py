"""Ranking-valued voting rules (social preference functions).

These return a non-empty frozenset of complete rankings rather than a winner
set.  Ties in the underlying procedure produce several rankings; the
voter-indexed variants are always single-valued.

The two ballot surgeries used by the composition and independence checks
live here too: ``neg`` collapses a candidate block to a fresh name placed
where the block's best member sat, and ``substitute`` splices a ranking of
clones into the seat of their meta-candidate.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .clones import EnumerationCapExceeded
from .profiles import Profile, Ranking, restrict, reverse_profile
from .scf import (
    WinnerSet,
    first_place_counts,
    rp_i_ranking,
    rp_put_rankings,
    strength_matrix,
    stv,
    stv_i,
    stv_i_ranking,
)

__all__ = [
    "RankingSet",
    "SPF_IDS",
    "neg",
    "substitute",
    "stv_star",
    "bp_star",
    "rp_star",
    "rp_i_star",
    "rp_n_star",
    "stv_i_star",
    "nr_star",
    "nr_i_star",
    "nnr_i_star",
    "resolve_spf",
    "spf_to_scf",
]

RankingSet = frozenset[Ranking]
Spf = Callable[[Profile], RankingSet]


# ---------------------------------------------------------------------------
# ballot surgery


def neg(ranking: Ranking, block: Iterable[str], z: str) -> Ranking:
    """Collapse ``block`` to the fresh candidate ``z`` on one ballot.

    ``z`` takes the seat of the block's highest-ranked member; the other
    members disappear.  ``z`` must not already be on the ballot.
    """
    members = frozenset(block)
    if not members:
        raise ValueError("block must be non-empty")
    if z in ranking:
        raise ValueError(f"{z!r} already appears on the ballot")
    stray = members - set(ranking)
    if stray:
        raise ValueError(f"block members {sorted(stray)} missing from ballot")
    out: list[str] = []
    seen_block = False
    for c in ranking:
        if c in members:
            if not seen_block:
                out.append(z)
                seen_block = True
        else:
            out.append(c)
    return tuple(out)


def substitute(ranking: Ranking, a: str, inner: Ranking) -> Ranking:
    """Replace candidate ``a`` on one ballot by the ranking ``inner``."""
    if a not in ranking:
        raise ValueError(f"{a!r} does not appear on the ballot")
    if not inner:
        raise ValueError("substituted ranking must be non-empty")
    clash = (set(ranking) - {a}) & set(inner)
    if clash:
        raise ValueError(f"substituted names {sorted(clash)} already on the ballot")
    out: list[str] = []
    for c in ranking:
        if c == a:
            out.extend(inner)
        else:
            out.append(c)
    return tuple(out)


# ---------------------------------------------------------------------------
# elimination-order rules


def stv_star(profile: Profile) -> RankingSet:
    """All STV rankings: candidates ordered by reverse elimination, every
    plurality tie branched."""
    memo: dict[frozenset[str], RankingSet] = {}

    def orders(remaining: frozenset[str]) -> RankingSet:
        if len(remaining) == 1:
            (c,) = remaining
            return frozenset({(c,)})
        if remaining in memo:
            return memo[remaining]
        counts = first_place_counts(profile, remaining)
        fewest = min(counts.values())
        out: set[Ranking] = set()
        for loser in sorted(c for c, v in counts.items() if v == fewest):
            for head in orders(remaining - {loser}):
                out.add(head + (loser,))
        memo[remaining] = frozenset(out)
        return memo[remaining]

    return orders(frozenset(profile.candidates))


def stv_i_star(profile: Profile, i: int) -> RankingSet:
    """The single STV ranking with voter i breaking elimination ties."""
    return frozenset({stv_i_ranking(profile, i)})


def nr_star(profile: Profile) -> RankingSet:
    """Nested runoff: each round eliminates an STV winner of the reversed
    profile (the consensually worst candidate), branching on ties."""

    def orders(remaining: frozenset[str]) -> RankingSet:
        if len(remaining) == 1:
            (c,) = remaining
            return frozenset({(c,)})
        current = restrict(profile, remaining)
        out: set[Ranking] = set()
        for loser in sorted(stv(reverse_profile(current))):
            for head in orders(remaining - {loser}):
                out.add(head + (loser,))
        return frozenset(out)

    return orders(frozenset(profile.candidates))


def nr_i_star(profile: Profile, i: int) -> RankingSet:
    """Nested runoff where the reversed-profile STV uses voter i's reversed
    ballot for ties; single-valued."""

    def order(remaining: frozenset[str]) -> Ranking:
        if len(remaining) == 1:
            (c,) = remaining
            return (c,)
        current = restrict(profile, remaining)
        (loser,) = stv_i(reverse_profile(current), i)
        return order(remaining - {loser}) + (loser,)

    return frozenset({order(frozenset(profile.candidates))})


def nnr_i_star(profile: Profile, i: int) -> RankingSet:
    """Doubly nested runoff: the reversed profile's *nested-runoff* winner is
    eliminated each round; single-valued."""

    def order(remaining: frozenset[str]) -> Ranking:
        if len(remaining) == 1:
            (c,) = remaining
            return (c,)
        current = restrict(profile, remaining)
        (anti,) = nr_i_star(reverse_profile(current), i)
        loser = anti[0]
        return order(remaining - {loser}) + (loser,)

    return frozenset({order(frozenset(profile.candidates))})


# ---------------------------------------------------------------------------
# pairwise and locked-graph rules


def bp_star(profile: Profile, cap: int = 10_000) -> RankingSet:
    """All linearisations of the strict widest-path relation.

    Raises:
        EnumerationCapExceeded: when more than ``cap`` rankings exist.
    """
    s = strength_matrix(profile)
    cands = profile.candidates
    above = {
        c: {d for d in cands if d != c and s.strength(d, c) > s.strength(c, d)}
        for c in cands
    }
    results: list[Ranking] = []

    def extend(remaining: list[str], acc: list[str]) -> None:
        if not remaining:
            if len(results) >= cap:
                raise EnumerationCapExceeded(
                    f"more than {cap} rankings; raise the cap to enumerate"
                )
            results.append(tuple(acc))
            return
        for c in list(remaining):
            if not (above[c] & set(remaining)):
                rest = [d for d in remaining if d != c]
                acc.append(c)
                extend(rest, acc)
                acc.pop()

    extend(sorted(cands), [])
    return frozenset(results)


def rp_star(profile: Profile) -> RankingSet:
    """Every ranked-pairs order over all tie-processing orders."""
    return rp_put_rankings(profile)


def rp_i_star(profile: Profile, i: int) -> RankingSet:
    """The single ranked-pairs order under voter i's priority order."""
    return frozenset({rp_i_ranking(profile, i)})


def rp_n_star(profile: Profile) -> RankingSet:
    """Union of ``rp_i_star`` over every voter."""
    out: set[Ranking] = set()
    seen: set[Ranking] = set()
    i = 0
    for ranking, mult in profile.groups:
        i += mult
        if ranking in seen:
            continue
        seen.add(ranking)
        out |= rp_i_star(profile, i)
    return frozenset(out)


# ---------------------------------------------------------------------------
# registry


SPF_IDS = (
    "bp*",
    "nr",
    "nnr_i:<i>",
    "nr_i:<i>",
    "rp*",
    "rp_i:<i>*",
    "rp_n*",
    "stv*",
    "stv_i:<i>",
)
"""Accepted ranking-rule identifiers."""

_PLAIN_SPFS: dict[str, Spf] = {
    "stv*": stv_star,
    "bp*": bp_star,
    "rp*": rp_star,
    "rp_n*": rp_n_star,
    "nr": nr_star,
}

_INDEXED_SPFS = {
    "rp_i": (rp_i_star, "*"),
    "stv_i": (stv_i_star, ""),
    "nr_i": (nr_i_star, ""),
    "nnr_i": (nnr_i_star, ""),
}


def resolve_spf(spf: str | Spf) -> Spf:
    """Turn a ranking-rule id into a callable; callables pass through."""
    if callable(spf):
        return spf
    name = spf.strip()
    if name in _PLAIN_SPFS:
        return _PLAIN_SPFS[name]
    head, sep, tail = name.partition(":")
    if sep and head in _INDEXED_SPFS:
        fn, suffix = _INDEXED_SPFS[head]
        if suffix and not tail.endswith("*"):
            raise ValueError(f"unknown ranking rule id {spf!r} (did you mean {name}*?)")
        digits = tail[: len(tail) - len(suffix)] if suffix else tail
        try:
            i = int(digits)
        except ValueError:
            raise ValueError(f"bad voter index {digits!r} in ranking rule id {spf!r}") from None
        if i < 1:
            raise ValueError(f"voter index must be >= 1 in ranking rule id {spf!r}")
        def indexed(profile: Profile, _f=fn, _i=i) -> RankingSet:
            return _f(profile, _i)
        indexed.__name__ = name.replace(":", "_").replace("*", "_star")
        return indexed
    raise ValueError(f"unknown ranking rule id {spf!r} (known: {', '.join(SPF_IDS)})")


def spf_to_scf(spf: str | Spf) -> Callable[[Profile], WinnerSet]:
    """Project a ranking rule to the winner rule taking each ranking's top."""
    fn = resolve_spf(spf)

    def tops(profile: Profile) -> WinnerSet:
        return frozenset(r[0] for r in fn(profile))

    tops.__name__ = f"tops_of_{getattr(fn, '__name__', 'spf')}"
    return tops
