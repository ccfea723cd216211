"""Composition products and the clone-collapsing transform of a voting rule.

``composition_product(f, p, blocks)`` runs f twice over a two-level election:
once on the profile with each block collapsed to a meta-candidate, then once
inside every winning block, unioning the inner winners.  A rule is
composition-consistent when this never changes its outcome, whatever the
block structure; the transform below forces that property onto any rule by
walking the profile's PQ-tree:

* at a P node, f picks among the child blocks (collapsed to meta-candidates
  on the profile restricted to the node) and every winning child is expanded;
* at a Q node, f only ever sees the *first two* blocks in majority reading
  order — picking the first keeps it, picking the second jumps to the far
  end of the string, and a tie keeps every child in play.

Each visited internal node costs exactly one call of f, on a profile with as
many candidates as the node has children (two for Q nodes).
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from . import scf
from .profiles import Profile, block_name, restrict, summarize
from .pqtree import build_pqtree, ordered_child
from .scf import WinnerSet

__all__ = [
    "RULE_IDS",
    "resolve_rule",
    "rule_label",
    "composition_product",
    "cc_transform",
]

Rule = Callable[[Profile], WinnerSet]

_BASE_RULES: dict[str, Rule] = {
    "pv": scf.pv,
    "stv": scf.stv,
    "rp": scf.rp_put,
    "rp_n": scf.rp_n,
    "bp": scf.beatpath,
    "sc": scf.split_cycle,
    "smith": scf.smith,
    "schwartz": scf.schwartz,
    "as": scf.alt_smith,
    "ucg": scf.uc_gillies,
    "ucf": scf.uc_fishburn,
}

RULE_IDS = tuple(sorted(_BASE_RULES)) + ("rp_i:<i>", "stv_i:<i>")
"""Accepted rule identifiers; any id also takes a ``^cc`` suffix."""


def resolve_rule(rule: str | Rule) -> Rule:
    """Turn a rule id into a callable; callables pass through unchanged.

    Ids are the keys of the base table, optionally voter-indexed
    (``rp_i:2``, ``stv_i:1``) and optionally wrapped by the transform with a
    ``^cc`` suffix (``stv^cc``, ``rp_i:1^cc``).
    """
    if callable(rule):
        return rule
    name = rule.strip()
    if name.endswith("^cc"):
        inner = resolve_rule(name[: -len("^cc")])
        def transformed(profile: Profile, _inner: Rule = inner) -> WinnerSet:
            return cc_transform(_inner, profile)
        transformed.__name__ = f"{name.replace(':', '_').replace('^', '_')}"
        return transformed
    if name in _BASE_RULES:
        return _BASE_RULES[name]
    head, sep, tail = name.partition(":")
    if sep and head in ("rp_i", "stv_i"):
        try:
            i = int(tail)
        except ValueError:
            raise ValueError(f"bad voter index {tail!r} in rule id {rule!r}") from None
        if i < 1:
            raise ValueError(f"voter index must be >= 1 in rule id {rule!r}")
        base = scf.rp_i if head == "rp_i" else scf.stv_i
        def indexed(profile: Profile, _f=base, _i=i) -> WinnerSet:
            return _f(profile, _i)
        indexed.__name__ = name.replace(":", "_")
        return indexed
    raise ValueError(f"unknown rule id {rule!r} (known: {', '.join(RULE_IDS)})")


def rule_label(rule: str | Rule) -> str:
    """Printable name for a rule id or callable."""
    return rule if isinstance(rule, str) else getattr(rule, "__name__", repr(rule))


def composition_product(rule: str | Rule, profile: Profile, decomposition) -> WinnerSet:
    """Two-level election: f across collapsed blocks, then f inside winners."""
    f = resolve_rule(rule)
    blocks = [frozenset(b) for b in decomposition]
    packed = summarize(profile, blocks)
    by_name = {block_name(b): b for b in blocks}
    winners: set[str] = set()
    for meta in f(packed):
        winners |= f(restrict(profile, by_name[meta]))
    return frozenset(winners)


def cc_transform(
    rule: str | Rule, profile: Profile, trace: list | None = None
) -> WinnerSet:
    """Winners of the clone-collapsing transform of ``rule`` on ``profile``.

    Walks the PQ-tree breadth-first from the root, keeping a frontier of
    candidate blocks still in contention; see the module docstring for the
    P/Q branching.  ``trace``, when given a list, receives one record per
    visited internal node: the node's members, its kind, the block summary
    the rule was shown (for a Q node, just the designated first two blocks),
    the meta-candidates it selected, and the (always 1) number of rule
    invocations there.
    """
    f = resolve_rule(rule)
    winners: set[str] = set()
    queue: deque = deque([build_pqtree(profile)])
    while queue:
        node = queue.popleft()
        if node.is_leaf:
            winners |= node.members
            continue
        packed = summarize(
            restrict(profile, node.members), [c.members for c in node.children]
        )
        if node.kind == "P":
            seen = packed
            chosen = f(seen)
            for child in node.children:
                if child.name in chosen:
                    queue.append(child)
        else:
            first = ordered_child(node, 1)
            second = ordered_child(node, 2)
            seen = restrict(packed, {first.name, second.name})
            chosen = f(seen)
            if chosen == frozenset({first.name}):
                queue.append(first)
            elif chosen == frozenset({second.name}):
                queue.append(ordered_child(node, len(node.children)))
            else:
                queue.extend(node.children)
        if trace is not None:
            trace.append(
                {
                    "node": sorted(node.members),
                    "kind": node.kind,
                    "blocks": list(seen.candidates),
                    "selected": sorted(chosen),
                    "rule_calls": 1,
                }
            )
    return frozenset(winners)
