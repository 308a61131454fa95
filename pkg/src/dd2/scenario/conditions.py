"""Boolean condition language gating event eligibility and upgrade prerequisites.

The language is a closed predicate set over the world the teams shape while
playing: upgrades purchased, events that have occurred, choices made, and the
round number, combined with ``all`` / ``any`` / ``not``.

Wire encoding is a single-key JSON object per node:

    {"true": {}}                      always true
    {"all": [<expr>, ...]}            conjunction (empty list is true)
    {"any": [<expr>, ...]}            disjunction (empty list is false)
    {"not": <expr>}                   negation
    {"upgrade": "<upgrade-id>"}       upgrade has been purchased
    {"event": "<event-id>"}           event has occurred
    {"choice_made": ["<event-id>", "<choice-id>"]}
    {"round_at_least": <n>}           current round number is >= n
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from dd2.errors import SchemaError, UnknownIdentifier


@dataclass(frozen=True)
class Always:
    pass


@dataclass(frozen=True)
class All:
    items: tuple["Condition", ...]


@dataclass(frozen=True)
class AnyOf:
    items: tuple["Condition", ...]


@dataclass(frozen=True)
class Not:
    item: "Condition"


@dataclass(frozen=True)
class UpgradePurchased:
    upgrade_id: str


@dataclass(frozen=True)
class EventOccurred:
    event_id: str


@dataclass(frozen=True)
class ChoiceMade:
    event_id: str
    choice_id: str


@dataclass(frozen=True)
class RoundAtLeast:
    round_number: int


Condition = (
    Always | All | AnyOf | Not | UpgradePurchased | EventOccurred | ChoiceMade | RoundAtLeast
)

ALWAYS = Always()


@dataclass(frozen=True)
class WorldView:
    """Evaluation context: what the team has done so far.

    ``made_choices`` keys must be a subset of ``occurred_events`` (a choice can
    only be made on a presented event).
    """

    round_index: int = 0
    purchased_upgrades: frozenset[str] = field(default_factory=frozenset)
    occurred_events: frozenset[str] = field(default_factory=frozenset)
    made_choices: frozenset[tuple[str, str]] = field(default_factory=frozenset)


EMPTY_WORLD = WorldView(round_index=1)


@dataclass(frozen=True)
class IdUniverse:
    """Identifier sets a condition may legally reference."""

    upgrades: frozenset[str]
    events: frozenset[str]
    choices: frozenset[tuple[str, str]]


def evaluate(cond: Condition, world: WorldView, universe: IdUniverse | None = None) -> bool:
    """Evaluate ``cond`` against ``world``. Pure function of its arguments.

    When ``universe`` is given, predicates naming identifiers outside it raise
    :class:`UnknownIdentifier`; validated scenarios never trip this.
    """
    if isinstance(cond, Always):
        return True
    if isinstance(cond, All):
        return all(evaluate(c, world, universe) for c in cond.items)
    if isinstance(cond, AnyOf):
        return any(evaluate(c, world, universe) for c in cond.items)
    if isinstance(cond, Not):
        return not evaluate(cond.item, world, universe)
    if isinstance(cond, UpgradePurchased):
        if universe is not None and cond.upgrade_id not in universe.upgrades:
            raise UnknownIdentifier(cond.upgrade_id)
        return cond.upgrade_id in world.purchased_upgrades
    if isinstance(cond, EventOccurred):
        if universe is not None and cond.event_id not in universe.events:
            raise UnknownIdentifier(cond.event_id)
        return cond.event_id in world.occurred_events
    if isinstance(cond, ChoiceMade):
        key = (cond.event_id, cond.choice_id)
        if universe is not None and key not in universe.choices:
            raise UnknownIdentifier(f"{cond.event_id}/{cond.choice_id}")
        return key in world.made_choices
    if isinstance(cond, RoundAtLeast):
        return world.round_index >= cond.round_number
    raise TypeError(f"not a condition: {cond!r}")


def parse_condition(obj: object, path: str = "condition") -> Condition:
    """Decode the single-key JSON object form. Strict: unknown keys are errors."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SchemaError("condition must be a single-key object", path)
    key, value = next(iter(obj.items()))
    if key == "true":
        if value not in ({}, True):
            raise SchemaError('"true" takes {} as its value', path)
        return ALWAYS
    if key in ("all", "any"):
        if not isinstance(value, list):
            raise SchemaError(f'"{key}" takes a list', path)
        items = tuple(parse_condition(v, f"{path}.{key}[{i}]") for i, v in enumerate(value))
        return All(items) if key == "all" else AnyOf(items)
    if key == "not":
        return Not(parse_condition(value, f"{path}.not"))
    if key == "upgrade":
        if not isinstance(value, str):
            raise SchemaError('"upgrade" takes an id string', path)
        return UpgradePurchased(value)
    if key == "event":
        if not isinstance(value, str):
            raise SchemaError('"event" takes an id string', path)
        return EventOccurred(value)
    if key == "choice_made":
        if not (isinstance(value, list) and len(value) == 2 and all(isinstance(v, str) for v in value)):
            raise SchemaError('"choice_made" takes [event-id, choice-id]', path)
        return ChoiceMade(value[0], value[1])
    if key == "round_at_least":
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise SchemaError('"round_at_least" takes a non-negative integer', path)
        return RoundAtLeast(value)
    raise SchemaError(f"unknown condition kind {key!r}", path)


def condition_to_json(cond: Condition) -> dict:
    """Inverse of :func:`parse_condition`."""
    if isinstance(cond, Always):
        return {"true": {}}
    if isinstance(cond, All):
        return {"all": [condition_to_json(c) for c in cond.items]}
    if isinstance(cond, AnyOf):
        return {"any": [condition_to_json(c) for c in cond.items]}
    if isinstance(cond, Not):
        return {"not": condition_to_json(cond.item)}
    if isinstance(cond, UpgradePurchased):
        return {"upgrade": cond.upgrade_id}
    if isinstance(cond, EventOccurred):
        return {"event": cond.event_id}
    if isinstance(cond, ChoiceMade):
        return {"choice_made": [cond.event_id, cond.choice_id]}
    if isinstance(cond, RoundAtLeast):
        return {"round_at_least": cond.round_number}
    raise TypeError(f"not a condition: {cond!r}")


@dataclass(frozen=True)
class ReferencedIds:
    upgrades: frozenset[str]
    events: frozenset[str]
    choices: frozenset[tuple[str, str]]
    uses_round: bool


def referenced_ids(cond: Condition) -> ReferencedIds:
    """Collect every identifier and feature the expression mentions."""
    upgrades: set[str] = set()
    events: set[str] = set()
    choices: set[tuple[str, str]] = set()
    uses_round = False

    def walk(c: Condition) -> None:
        nonlocal uses_round
        if isinstance(c, (All, AnyOf)):
            for item in c.items:
                walk(item)
        elif isinstance(c, Not):
            walk(c.item)
        elif isinstance(c, UpgradePurchased):
            upgrades.add(c.upgrade_id)
        elif isinstance(c, EventOccurred):
            events.add(c.event_id)
        elif isinstance(c, ChoiceMade):
            events.add(c.event_id)
            choices.add((c.event_id, c.choice_id))
        elif isinstance(c, RoundAtLeast):
            uses_round = True

    walk(cond)
    return ReferencedIds(frozenset(upgrades), frozenset(events), frozenset(choices), uses_round)


def satisfiable(cond: Condition, max_round: int) -> bool:
    """Exact satisfiability over consistent world views.

    Enumerates assignments of only the identifiers the expression references
    (unreferenced ids cannot change its value), honouring the consistency rule
    that a made choice implies its event occurred, with the round ranging over
    0..max_round. Exponential in referenced ids, which authored conditions keep
    tiny.
    """
    refs = referenced_ids(cond)
    upgrades = sorted(refs.upgrades)
    events = sorted(refs.events)
    choices = sorted(refs.choices)
    rounds = range(0, max_round + 1) if refs.uses_round else (1,)

    for up_bits in itertools.product((False, True), repeat=len(upgrades)):
        purchased = frozenset(u for u, bit in zip(upgrades, up_bits) if bit)
        for ev_bits in itertools.product((False, True), repeat=len(events)):
            occurred = frozenset(e for e, bit in zip(events, ev_bits) if bit)
            eligible_choices = [c for c in choices if c[0] in occurred]
            for ch_bits in itertools.product((False, True), repeat=len(eligible_choices)):
                made = frozenset(c for c, bit in zip(eligible_choices, ch_bits) if bit)
                for rnd in rounds:
                    world = WorldView(rnd, purchased, occurred, made)
                    if evaluate(cond, world):
                        return True
    return False
