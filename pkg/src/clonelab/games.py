"""Strategic candidacy games over a fixed voter profile.

Candidates choose to Run or Drop; voters are honest; a candidate's utility
is ``m − d(a, winner)`` where d is the clone distance on the *original*
profile (so a wants the winner as close to her clone-wise as possible, and
winning herself is worth m).  An empty election is worth 0 to everyone.

Two game forms share these utilities:

* the one-shot form: everyone decides simultaneously, and the rule runs on
  the profile restricted to the runners;
* the staged form: the rule's clone-collapsing transform walks the PQ-tree
  and a candidate is asked only when the walk reaches her parent node.  At a
  P node all leaf children are asked at once and the droppers are removed
  from the block summary before the rule picks a branch; at a Q node the
  rule compares the first two blocks in majority order, which designates an
  end of the string, and the walk proceeds from that end, asking each leaf
  (a Run answer wins on the spot) and descending into each internal block.
  A block whose members have all dropped is removed and its parent decides
  again among the remaining blocks.

Rules must be decisive (a single winner on every non-empty restriction);
this is enforced when the game is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations, product
from typing import Callable, Iterable, Mapping

from .clones import clone_metric
from .profiles import Profile, remove_candidates, restrict, summarize
from .pqtree import PQNode, build_pqtree
from .transform import resolve_rule, rule_label

__all__ = [
    "RUN",
    "DROP",
    "GameSpec",
    "IndecisiveRuleError",
    "PlayResult",
    "utility",
    "gamma_dominant_run",
    "gamma_obviously_dominant_run",
    "lambda_play",
    "lambda_obviously_dominant_run",
]

RUN = "R"
DROP = "D"


class IndecisiveRuleError(ValueError):
    """The rule tied somewhere a single winner was required."""


def _single_winner(f: Callable, profile: Profile, where: str) -> str:
    winners = f(profile)
    if len(winners) != 1:
        raise IndecisiveRuleError(
            f"rule ties on {where}: {sorted(winners)}; candidacy games need a decisive rule"
        )
    (w,) = winners
    return w


@dataclass(frozen=True)
class GameSpec:
    """A candidacy game: profile, decisive rule, and form ("gamma" = one-shot,
    "lambda" = staged on the PQ-tree)."""

    profile: Profile
    rule: str | Callable
    form: str = "gamma"

    def __post_init__(self) -> None:
        if self.form not in ("gamma", "lambda"):
            raise ValueError(f"unknown game form {self.form!r}")
        f = resolve_rule(self.rule)
        cands = self.profile.candidates
        for size in range(1, len(cands) + 1):
            for subset in combinations(cands, size):
                _single_winner(
                    f, restrict(self.profile, subset), f"candidates {list(subset)}"
                )

    @property
    def rule_name(self) -> str:
        return rule_label(self.rule)


def utility(game: GameSpec, a: str, field: Iterable[str]) -> int:
    """Candidate a's utility when exactly ``field`` stands for election."""
    standing = frozenset(field)
    if a not in game.profile.candidates:
        raise ValueError(f"unknown candidate {a!r}")
    if not standing:
        return 0
    f = resolve_rule(game.rule)
    winner = _single_winner(f, restrict(game.profile, standing), f"candidates {sorted(standing)}")
    return game.profile.m - clone_metric(game.profile, a, winner)


def _opponent_fields(game: GameSpec, a: str):
    """All sets of other candidates, smallest first, then lexicographic."""
    others = sorted(set(game.profile.candidates) - {a})
    return chain.from_iterable(combinations(others, k) for k in range(len(others) + 1))


def gamma_dominant_run(game: GameSpec, a: str) -> tuple[bool, dict | None]:
    """Is Run a (weakly) dominant strategy for ``a`` in the one-shot game?

    Checks every set of opposing runners; returns the first counterexample
    as a witness dict otherwise.
    """
    for field in _opponent_fields(game, a):
        u_run = utility(game, a, set(field) | {a})
        u_drop = utility(game, a, field)
        if u_run < u_drop:
            return False, {
                "candidate": a,
                "others_running": sorted(field),
                "run_utility": u_run,
                "drop_utility": u_drop,
            }
    return True, None


def gamma_obviously_dominant_run(game: GameSpec, a: str) -> tuple[bool, dict | None]:
    """Is Run obviously dominant in the one-shot game?

    All candidates act at once, so ``a`` knows nothing when deciding: the
    worst Run outcome over all opposing fields must be at least the best
    Drop outcome over all opposing fields.
    """
    worst_run: tuple[int, tuple] | None = None
    best_drop: tuple[int, tuple] | None = None
    for field in _opponent_fields(game, a):
        u_run = utility(game, a, set(field) | {a})
        u_drop = utility(game, a, field)
        if worst_run is None or u_run < worst_run[0]:
            worst_run = (u_run, field)
        if best_drop is None or u_drop > best_drop[0]:
            best_drop = (u_drop, field)
    assert worst_run is not None and best_drop is not None
    if worst_run[0] >= best_drop[0]:
        return True, None
    return False, {
        "candidate": a,
        "worst_run_utility": worst_run[0],
        "worst_run_others": sorted(worst_run[1]),
        "best_drop_utility": best_drop[0],
        "best_drop_others": sorted(best_drop[1]),
    }


# ---------------------------------------------------------------------------
# staged form


@dataclass(frozen=True)
class PlayResult:
    """Outcome of one staged play: the winner (None if everyone standing
    dropped) and exactly the candidates who were asked."""

    winner: str | None
    asked: frozenset[str]


def _oriented(node: PQNode, children: list[PQNode]) -> list[PQNode]:
    """Stored-order children reordered into the node's majority reading."""
    if node.orientation == "reverse" and not node.tie:
        return children[::-1]
    return children


def lambda_play(game: GameSpec, actions: Mapping[str, str]) -> PlayResult:
    """Play the staged game under a full action profile.

    ``actions`` maps every candidate to RUN or DROP.  Candidates are asked
    lazily, per the module docstring; the result records who was asked.
    """
    profile = game.profile
    missing = set(profile.candidates) - set(actions)
    if missing:
        raise ValueError(f"no action given for {sorted(missing)}")
    bad = {c: v for c, v in actions.items() if v not in (RUN, DROP)}
    if bad:
        raise ValueError(f"actions must be {RUN!r} or {DROP!r}, got {bad}")
    f = resolve_rule(game.rule)
    asked: set[str] = set()

    def ask(leaf: PQNode) -> bool:
        """Ask a leaf's candidate; True when they run."""
        (c,) = leaf.members
        asked.add(c)
        return actions[c] == RUN

    def node_summary(node: PQNode, gone: set[str]) -> Profile | None:
        packed = summarize(
            restrict(profile, node.members), [c.members for c in node.children]
        )
        alive = [name for name in packed.candidates if name not in gone]
        if not alive:
            return None
        return remove_candidates(packed, gone)

    def process(node: PQNode) -> str | None:
        if node.is_leaf:  # degenerate one-candidate game
            (c,) = node.members
            return c if ask(node) else None
        gone: set[str] = set()  # names of children with nobody left standing
        while True:
            alive = [ch for ch in node.children if ch.name not in gone]
            if not alive:
                return None
            if node.kind == "P":
                for ch in alive:
                    if ch.is_leaf and not ask(ch):
                        gone.add(ch.name)
                packed = node_summary(node, gone)
                if packed is None:
                    return None
                block = _single_winner(f, packed, f"blocks of {sorted(node.members)}")
                chosen = next(ch for ch in node.children if ch.name == block)
                if chosen.is_leaf:
                    return next(iter(chosen.members))
                sub = process(chosen)
                if sub is not None:
                    return sub
                gone.add(chosen.name)  # that branch emptied; decide again
                continue
            # Q node: compare the first two alive blocks in majority order,
            # then walk from the designated end.
            reading = _oriented(node, alive)
            if len(reading) == 1:
                walk = reading
            else:
                packed = node_summary(node, gone)
                assert packed is not None
                pair = restrict(packed, {reading[0].name, reading[1].name})
                block = _single_winner(f, pair, f"blocks of {sorted(node.members)}")
                walk = reading if block == reading[0].name else reading[::-1]
            restart = False
            for ch in walk:
                if ch.is_leaf:
                    if ask(ch):
                        return next(iter(ch.members))
                    gone.add(ch.name)
                else:
                    sub = process(ch)
                    if sub is not None:
                        return sub
                    gone.add(ch.name)
                    restart = True  # the string changed; compare afresh
                    break
            if restart:
                continue
            return None  # walked the whole string without a runner

    winner = process(build_pqtree(profile))
    return PlayResult(winner=winner, asked=frozenset(asked))


def lambda_obviously_dominant_run(game: GameSpec, a: str) -> tuple[bool, dict | None]:
    """Is Run obviously dominant for ``a`` in the staged game?

    Quantifies over every opposing action profile under which ``a`` is
    actually asked: the worst Run outcome must be at least the best Drop
    outcome.  Vacuously true if ``a`` is never asked.
    """
    if a not in game.profile.candidates:
        raise ValueError(f"unknown candidate {a!r}")
    m = game.profile.m
    others = sorted(set(game.profile.candidates) - {a})
    worst_run: tuple[int, dict] | None = None
    best_drop: tuple[int, dict] | None = None

    def pay(result: PlayResult) -> int:
        if result.winner is None:
            return 0
        return m - clone_metric(game.profile, a, result.winner)

    for choice in product((RUN, DROP), repeat=len(others)):
        opponents = dict(zip(others, choice))
        ran = lambda_play(game, {**opponents, a: RUN})
        if a not in ran.asked:
            continue
        dropped = lambda_play(game, {**opponents, a: DROP})
        u_run, u_drop = pay(ran), pay(dropped)
        if worst_run is None or u_run < worst_run[0]:
            worst_run = (u_run, {"opponents": opponents, "winner": ran.winner})
        if best_drop is None or u_drop > best_drop[0]:
            best_drop = (u_drop, {"opponents": opponents, "winner": dropped.winner})
    if worst_run is None:
        return True, None  # never asked under any opposing behaviour
    assert best_drop is not None
    if worst_run[0] >= best_drop[0]:
        return True, None
    return False, {
        "candidate": a,
        "worst_run_utility": worst_run[0],
        "worst_run": worst_run[1],
        "best_drop_utility": best_drop[0],
        "best_drop": best_drop[1],
    }
