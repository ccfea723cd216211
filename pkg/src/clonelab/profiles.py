"""Ranked ballot profiles and the handful of operations everything else builds on.

A profile stores complete strict rankings in multiplicity groups, e.g. four
voters sharing ``b>c>a2>a1`` occupy one group with multiplicity 4.  Voter
indices are 1-based positions in the expanded list of ballots (group order,
then within-group repetition), so voter-indexed rules have a stable meaning
after any of the transformations here: none of them merge or reorder groups.

The text format accepted by :func:`parse_profile`::

    # comment
    candidates: a,b,c      (optional header; first-appearance order otherwise)
    2: a>b>c
    1: c>b>a
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Iterator, Sequence

Ranking = tuple[str, ...]

__all__ = [
    "Ranking",
    "Profile",
    "MajorityMatrix",
    "ProfileParseError",
    "parse_profile",
    "serialize_profile",
    "load_fixture",
    "fixture_names",
    "remove_candidates",
    "restrict",
    "summarize",
    "majority_matrix",
    "reverse_profile",
    "add_voter",
    "replace_voter",
]


class ProfileParseError(ValueError):
    """Raised when profile text (or a constructed profile) is malformed."""


@dataclass(frozen=True)
class Profile:
    """An anonymous-but-indexed preference profile.

    Attributes:
        candidates: Candidate names in presentation order.
        groups: ``(ranking, multiplicity)`` pairs; each ranking is a
            permutation of ``candidates`` and multiplicities are positive.
    """

    candidates: tuple[str, ...]
    groups: tuple[tuple[Ranking, int], ...]

    def __post_init__(self) -> None:
        if not self.candidates:
            raise ProfileParseError("profile has no candidates")
        if len(set(self.candidates)) != len(self.candidates):
            raise ProfileParseError("duplicate candidate in candidate list")
        if not self.groups:
            raise ProfileParseError("profile has no ballots")
        cset = set(self.candidates)
        for ranking, mult in self.groups:
            if mult <= 0:
                raise ProfileParseError(f"non-positive multiplicity {mult}")
            if len(ranking) != len(set(ranking)):
                raise ProfileParseError(f"duplicate candidate in ballot {ranking}")
            missing = cset - set(ranking)
            unknown = set(ranking) - cset
            if unknown:
                raise ProfileParseError(f"unknown candidate(s) {sorted(unknown)} in ballot")
            if missing:
                raise ProfileParseError(f"ballot is missing candidate(s) {sorted(missing)}")

    @property
    def m(self) -> int:
        """Number of candidates."""
        return len(self.candidates)

    @property
    def n(self) -> int:
        """Number of voters (sum of multiplicities)."""
        return sum(mult for _, mult in self.groups)

    def voters(self) -> Iterator[Ranking]:
        """Yield each voter's ranking, multiplicities expanded, in index order."""
        for ranking, mult in self.groups:
            for _ in range(mult):
                yield ranking

    def voter_ranking(self, i: int) -> Ranking:
        """Return voter ``i``'s ranking (1-based expanded index)."""
        if i < 1:
            raise IndexError(f"voter index {i} out of range 1..{self.n}")
        seen = 0
        for ranking, mult in self.groups:
            seen += mult
            if i <= seen:
                return ranking
        raise IndexError(f"voter index {i} out of range 1..{self.n}")


# ---------------------------------------------------------------------------
# text format


def parse_profile(text: str) -> Profile:
    """Parse profile text into a :class:`Profile`.

    Raises:
        ProfileParseError: on an empty file, malformed line, non-positive
            multiplicity, or any candidate mismatch between ballots and the
            declared (or inferred) candidate list.
    """
    header: tuple[str, ...] | None = None
    raw_groups: list[tuple[Ranking, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None and not raw_groups and line.lower().startswith("candidates:"):
            names = [c.strip() for c in line.split(":", 1)[1].split(",")]
            if any(not c for c in names):
                raise ProfileParseError(f"line {lineno}: empty candidate name in header")
            header = tuple(names)
            continue
        if ":" not in line:
            raise ProfileParseError(f"line {lineno}: expected '<count>: c1>c2>...'")
        count_part, ballot_part = line.split(":", 1)
        try:
            mult = int(count_part.strip())
        except ValueError:
            raise ProfileParseError(f"line {lineno}: bad multiplicity {count_part.strip()!r}") from None
        if mult <= 0:
            raise ProfileParseError(f"line {lineno}: multiplicity must be positive, got {mult}")
        ranking = tuple(c.strip() for c in ballot_part.split(">"))
        if any(not c for c in ranking):
            raise ProfileParseError(f"line {lineno}: empty candidate name in ballot")
        raw_groups.append((ranking, mult))

    if not raw_groups:
        raise ProfileParseError("no ballots found")
    candidates = header if header is not None else raw_groups[0][0]
    try:
        return Profile(candidates=candidates, groups=tuple(raw_groups))
    except ProfileParseError:
        raise
    except ValueError as exc:  # defensive: dataclass machinery
        raise ProfileParseError(str(exc)) from exc


def serialize_profile(profile: Profile) -> str:
    """Render a profile in the text format; ``parse_profile`` inverts this."""
    lines = ["candidates: " + ",".join(profile.candidates)]
    for ranking, mult in profile.groups:
        lines.append(f"{mult}: " + ">".join(ranking))
    return "\n".join(lines) + "\n"


def fixture_names() -> list[str]:
    """Names of the profiles shipped with the package (``P1`` .. ``P9``)."""
    pkg = resources.files("clonelab.fixtures")
    return sorted(p.name[: -len(".profile")] for p in pkg.iterdir() if p.name.endswith(".profile"))


def load_fixture(name: str) -> Profile:
    """Load a shipped example profile by name, e.g. ``load_fixture("P2")``."""
    path = resources.files("clonelab.fixtures").joinpath(f"{name}.profile")
    return parse_profile(path.read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# profile transformations


def remove_candidates(profile: Profile, to_remove: Iterable[str]) -> Profile:
    """Delete candidates from every ballot, keeping groups distinct.

    Identical post-deletion rankings are deliberately not merged so that
    voter indices keep pointing at the same people.
    """
    gone = frozenset(to_remove)
    unknown = gone - set(profile.candidates)
    if unknown:
        raise ValueError(f"cannot remove unknown candidate(s) {sorted(unknown)}")
    remaining = tuple(c for c in profile.candidates if c not in gone)
    if not remaining:
        raise ValueError("cannot remove every candidate")
    groups = tuple(
        (tuple(c for c in ranking if c not in gone), mult) for ranking, mult in profile.groups
    )
    return Profile(candidates=remaining, groups=groups)


def restrict(profile: Profile, keep: Iterable[str]) -> Profile:
    """Restrict every ballot to the candidates in ``keep``."""
    kept = frozenset(keep)
    return remove_candidates(profile, set(profile.candidates) - kept)


def block_name(members: Iterable[str]) -> str:
    """Canonical name of a candidate block: members sorted and '+'-joined."""
    return "+".join(sorted(members))


def summarize(profile: Profile, decomposition: Iterable[frozenset[str]]) -> Profile:
    """Collapse each block of a partition into one meta-candidate.

    Every block must occupy consecutive positions in every ballot; the block
    keeps each voter's position and is named by :func:`block_name`.  Meta
    candidates appear in the order voter 1 ranks the blocks.

    Raises:
        ValueError: if the blocks do not partition the candidates or some
            block is not consecutive on some ballot.
    """
    blocks = [frozenset(b) for b in decomposition]
    flat = [c for b in blocks for c in b]
    if len(flat) != len(set(flat)) or set(flat) != set(profile.candidates):
        raise ValueError("blocks must partition the candidate set")
    owner = {c: block_name(b) for b in blocks for c in b}
    size = {block_name(b): len(b) for b in blocks}

    groups: list[tuple[Ranking, int]] = []
    for ranking, mult in profile.groups:
        seq: list[str] = []
        run = 0  # positions left in the block currently being crossed
        for c in ranking:
            name = owner[c]
            if run == 0:
                seq.append(name)
                run = size[name]
            elif name != seq[-1]:
                raise ValueError(f"block {seq[-1]!r} is not consecutive in ballot {ranking}")
            run -= 1
        groups.append((tuple(seq), mult))
    order = groups[0][0] if groups else ()
    return Profile(candidates=order, groups=tuple(groups))


def reverse_profile(profile: Profile) -> Profile:
    """Reverse every ballot (last place becomes first)."""
    groups = tuple((tuple(reversed(ranking)), mult) for ranking, mult in profile.groups)
    return Profile(candidates=profile.candidates, groups=groups)


def add_voter(profile: Profile, ranking: Sequence[str]) -> Profile:
    """Append one voter with the given ranking; they become voter ``n + 1``."""
    return Profile(
        candidates=profile.candidates,
        groups=profile.groups + ((tuple(ranking), 1),),
    )


def replace_voter(profile: Profile, i: int, ranking: Sequence[str]) -> Profile:
    """Give voter ``i`` (1-based) a new ranking, leaving everyone else in place.

    The containing multiplicity group is split so all other voter indices
    keep their rankings.
    """
    new_ranking = tuple(ranking)
    if not 1 <= i <= profile.n:
        raise IndexError(f"voter index {i} out of range 1..{profile.n}")
    groups: list[tuple[Ranking, int]] = []
    seen = 0
    for old, mult in profile.groups:
        if seen + mult < i or seen >= i:
            groups.append((old, mult))
        else:
            before = i - 1 - seen
            after = mult - before - 1
            if before:
                groups.append((old, before))
            groups.append((new_ranking, 1))
            if after:
                groups.append((old, after))
        seen += mult
    return Profile(candidates=profile.candidates, groups=tuple(groups))


# ---------------------------------------------------------------------------
# pairwise comparisons


@dataclass(frozen=True)
class MajorityMatrix:
    """All pairwise majority margins of a profile.

    ``margin(a, b)`` is (# voters preferring a to b) − (# preferring b to a);
    the matrix is antisymmetric with a zero diagonal.
    """

    candidates: tuple[str, ...]
    _margins: dict[tuple[str, str], int]

    def margin(self, a: str, b: str) -> int:
        if a == b:
            return 0
        return self._margins[(a, b)]

    def defeats(self, a: str, b: str) -> bool:
        """True when a majority strictly prefers ``a`` to ``b``."""
        return self.margin(a, b) > 0

    def as_dict(self) -> dict[tuple[str, str], int]:
        return dict(self._margins)


def majority_matrix(profile: Profile) -> MajorityMatrix:
    """Compute every pairwise margin of the profile."""
    margins: dict[tuple[str, str], int] = {
        (a, b): 0 for a in profile.candidates for b in profile.candidates if a != b
    }
    for ranking, mult in profile.groups:
        pos = {c: k for k, c in enumerate(ranking)}
        for a in profile.candidates:
            for b in profile.candidates:
                if a != b and pos[a] < pos[b]:
                    margins[(a, b)] += mult
                    margins[(b, a)] -= mult
    return MajorityMatrix(candidates=profile.candidates, _margins=margins)
