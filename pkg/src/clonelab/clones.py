"""Clone sets, clone structures, decompositions, and the clone distance.

A set of candidates is a *clone set* when every ballot ranks its members
consecutively (no outsider wedged between two members).  Singletons and the
full candidate set always qualify.  Because each clone set must in particular
be an interval of voter 1's ranking, the whole structure is found by checking
the m(m+1)/2 intervals of that ranking against everyone else, and partitions
of the candidates into clone sets are exactly the tilings of voter 1's
ranking by such intervals.
"""

from __future__ import annotations

from functools import lru_cache

from .profiles import Profile

CloneSet = frozenset[str]
CloneStructure = frozenset[CloneSet]
CloneDecomposition = tuple[CloneSet, ...]

__all__ = [
    "CloneSet",
    "CloneStructure",
    "CloneDecomposition",
    "EnumerationCapExceeded",
    "is_clone_set",
    "clone_structure",
    "enumerate_decompositions",
    "clone_metric",
    "canonical_decomposition",
]


class EnumerationCapExceeded(RuntimeError):
    """An enumeration grew past its configured cap; results were discarded."""


def is_clone_set(profile: Profile, members: frozenset[str] | set[str]) -> bool:
    """True when ``members`` is non-empty and consecutive on every ballot."""
    k = len(members)
    if k == 0:
        return False
    unknown = set(members) - set(profile.candidates)
    if unknown:
        raise ValueError(f"unknown candidate(s) {sorted(unknown)}")
    for ranking, _ in profile.groups:
        positions = [i for i, c in enumerate(ranking) if c in members]
        if positions[-1] - positions[0] + 1 != k:
            return False
    return True


@lru_cache(maxsize=None)
def clone_structure(profile: Profile) -> CloneStructure:
    """All clone sets of the profile."""
    first = profile.groups[0][0]
    m = len(first)
    found: set[CloneSet] = set()
    for i in range(m):
        for j in range(i + 1, m + 1):
            members = frozenset(first[i:j])
            if is_clone_set(profile, members):
                found.add(members)
    return frozenset(found)


def canonical_decomposition(blocks) -> CloneDecomposition:
    """Blocks as a tuple sorted by their sorted member names."""
    return tuple(sorted((frozenset(b) for b in blocks), key=lambda b: tuple(sorted(b))))


def enumerate_decompositions(profile: Profile, cap: int = 10**6) -> list[CloneDecomposition]:
    """Every partition of the candidates into clone sets, canonically ordered.

    The list always contains the all-singletons partition and the one-block
    partition.  Partitions are returned with blocks sorted by least member
    and the list sorted lexicographically by that block signature.

    Raises:
        EnumerationCapExceeded: if more than ``cap`` partitions exist.
    """
    structure = clone_structure(profile)
    first = profile.groups[0][0]
    m = len(first)
    tilings: list[tuple[CloneSet, ...]] = []

    def tile(start: int, acc: list[CloneSet]) -> None:
        if start == m:
            if len(tilings) >= cap:
                raise EnumerationCapExceeded(
                    f"more than {cap} decompositions; raise the cap to enumerate"
                )
            tilings.append(tuple(acc))
            return
        for end in range(start + 1, m + 1):
            segment = frozenset(first[start:end])
            if segment in structure:
                acc.append(segment)
                tile(end, acc)
                acc.pop()

    tile(0, [])
    ordered = sorted(
        (canonical_decomposition(blocks) for blocks in tilings),
        key=lambda blocks: tuple(tuple(sorted(b)) for b in blocks),
    )
    return ordered


def clone_metric(profile: Profile, a: str, b: str) -> int:
    """Clone distance: size of the smallest clone set containing both, minus one.

    Zero exactly when ``a == b``; one when {a, b} itself is a clone set; at
    most m − 1 since the full candidate set always qualifies.
    """
    for c in (a, b):
        if c not in profile.candidates:
            raise ValueError(f"unknown candidate {c!r}")
    if a == b:
        return 0
    smallest = min(len(k) for k in clone_structure(profile) if a in k and b in k)
    return smallest - 1
