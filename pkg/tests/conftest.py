"""Shared test fixtures: the bundled example profiles and a deterministic
random corpus used by the oracle-equivalence and law suites."""

from __future__ import annotations

import random

import pytest

from clonelab.profiles import Profile, load_fixture

CORPUS_SEED = 271828
CORPUS_SIZE = 520

_NAMES = "abcdefgh"


def _group_up(rng: random.Random, rankings: list[tuple[str, ...]]):
    """Pack a ballot list into (ranking, multiplicity) groups; sometimes
    aggregates equal ballots so multiplicities > 1 get exercised too."""
    if rng.random() < 0.3:
        counts: dict[tuple[str, ...], int] = {}
        order = []
        for r in rankings:
            if r not in counts:
                order.append(r)
            counts[r] = counts.get(r, 0) + 1
        return tuple((r, counts[r]) for r in order)
    return tuple((r, 1) for r in rankings)


def _uniform_profile(rng: random.Random) -> Profile:
    m = rng.choice([1, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5])
    n = rng.randint(1, 6)
    cands = tuple(_NAMES[:m])
    rankings = []
    for _ in range(n):
        r = list(cands)
        rng.shuffle(r)
        rankings.append(tuple(r))
    return Profile(candidates=cands, groups=_group_up(rng, rankings))


def _planted_clone_profile(rng: random.Random) -> Profile:
    """Uniform base profile with one candidate expanded into a block that
    every voter keeps contiguous (in an independently shuffled inner order)."""
    m_base = rng.randint(2, 4)
    size = rng.randint(2, 6 - m_base)
    base = list(_NAMES[:m_base])
    target = rng.choice(base)
    block = [f"{target}{k}" for k in range(1, size + 1)]
    cands = tuple(c for c in base if c != target) + tuple(block)
    n = rng.randint(1, 6)
    rankings = []
    for _ in range(n):
        r = list(base)
        rng.shuffle(r)
        inner = list(block)
        rng.shuffle(inner)
        expanded = []
        for c in r:
            if c == target:
                expanded.extend(inner)
            else:
                expanded.append(c)
        rankings.append(tuple(expanded))
    return Profile(candidates=tuple(sorted(cands)), groups=_group_up(rng, rankings))


def _string_profile(rng: random.Random) -> Profile:
    """Copies of one ranking plus copies of its reversal: every interval of
    the ranking is a clone set, so the tree is a single maximal-arity node."""
    m = rng.randint(3, 5)
    cands = tuple(_NAMES[:m])
    r = list(cands)
    rng.shuffle(r)
    fwd = rng.randint(1, 4)
    rev = rng.randint(0, 6 - fwd)
    groups = [(tuple(r), fwd)]
    if rev:
        groups.append((tuple(reversed(r)), rev))
    return Profile(candidates=cands, groups=tuple(groups))


def build_corpus(seed: int = CORPUS_SEED, size: int = CORPUS_SIZE) -> list[Profile]:
    rng = random.Random(seed)
    out = []
    for k in range(size):
        roll = rng.random()
        if roll < 0.55:
            out.append(_uniform_profile(rng))
        elif roll < 0.85:
            out.append(_planted_clone_profile(rng))
        else:
            out.append(_string_profile(rng))
    return out


@pytest.fixture(scope="session")
def corpus() -> list[Profile]:
    return build_corpus()


@pytest.fixture(scope="session")
def fixtures() -> dict[str, Profile]:
    return {name: load_fixture(name) for name in
            ("P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9")}
