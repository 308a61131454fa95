"""Session state, outcome types and the canonical snapshot/checksum scheme."""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field

from dd2.scenario.conditions import WorldView
from dd2.scenario.model import Scenario, ScenarioConfig


class OutcomeReason(enum.Enum):
    PROFIT_DEPLETED = "profit_depleted"
    SHARE_PRICE_DEPLETED = "share_price_depleted"
    EVENT_SATURATION = "event_saturation"
    ROUND_LIMIT_SURVIVED = "round_limit_survived"


@dataclass(frozen=True)
class Outcome:
    status: str  # "ongoing" | "failed" | "survived"
    reason: OutcomeReason | None = None

    @property
    def terminal(self) -> bool:
        return self.status != "ongoing"

    def to_json(self) -> dict:
        return {"status": self.status,
                "reason": self.reason.value if self.reason else None}


ONGOING = Outcome("ongoing")
SURVIVED = Outcome("survived", OutcomeReason.ROUND_LIMIT_SURVIVED)


def failed(reason: OutcomeReason) -> Outcome:
    return Outcome("failed", reason)


class EventSource(enum.Enum):
    DRAWN = "drawn"
    TRIGGERED = "triggered"
    TRIGGERED_BYPASS = "triggered_bypass"


@dataclass
class OpenEvent:
    event_id: str
    drawn_round: int
    source: EventSource
    ignored_count: int = 0

    def to_json(self) -> dict:
        return {"event_id": self.event_id, "drawn_round": self.drawn_round,
                "source": self.source.value, "ignored_count": self.ignored_count}


@dataclass
class PendingTrigger:
    event_id: str
    due_round: int
    bypass: bool
    scheduled_by: str  # "<event>/<choice>" or "<event>/ignore"

    def to_json(self) -> dict:
        return {"event_id": self.event_id, "due_round": self.due_round,
                "bypass": self.bypass, "scheduled_by": self.scheduled_by}


@dataclass
class DrawReport:
    """What the round-start pipeline did, for feedback and audit."""

    round_index: int
    newly_drawn: list[str] = field(default_factory=list)
    triggered_in: list[str] = field(default_factory=list)
    blocked_by_resistance: list[tuple[str, str]] = field(default_factory=list)
    suppressed_triggers: list[str] = field(default_factory=list)
    on_draw_applied: list[dict] = field(default_factory=list)
    auto_closed: list[str] = field(default_factory=list)
    eligible_pool_size: int = 0
    rng_draws: int = 0

    def to_json(self) -> dict:
        return {
            "round_index": self.round_index,
            "newly_drawn": list(self.newly_drawn),
            "triggered_in": list(self.triggered_in),
            "blocked_by_resistance": [list(pair) for pair in self.blocked_by_resistance],
            "suppressed_triggers": list(self.suppressed_triggers),
            "on_draw_applied": [dict(d) for d in self.on_draw_applied],
            "auto_closed": list(self.auto_closed),
            "eligible_pool_size": self.eligible_pool_size,
            "rng_draws": self.rng_draws,
        }


@dataclass
class Feedback:
    """Immediate result of a team action, deltas matching the state change."""

    text: str = ""
    hours_delta: int = 0
    profit_delta: int = 0
    share_delta: int = 0
    scheduled_triggers: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"text": self.text, "hours_delta": self.hours_delta,
                "profit_delta": self.profit_delta, "share_delta": self.share_delta,
                "scheduled_triggers": list(self.scheduled_triggers)}


@dataclass
class GameState:
    """Full mutable session state. Engine operations copy-on-write: they never
    mutate their input, so snapshots are free to keep."""

    scenario: Scenario
    config: ScenarioConfig
    seed: int
    content_digest: str = ""
    round_index: int = 0
    round_active: bool = False
    hours_remaining: int = 0
    projected_profit: int = 0
    share_price: int = 0
    open_events: list[OpenEvent] = field(default_factory=list)
    pending_triggers: list[PendingTrigger] = field(default_factory=list)
    purchased_upgrades: list[str] = field(default_factory=list)
    occurred_events: set[str] = field(default_factory=set)
    made_choices: set[tuple[str, str]] = field(default_factory=set)
    resistance_levels: dict[str, float] = field(default_factory=dict)
    active_flags: set[str] = field(default_factory=set)
    staged_flags: set[str] = field(default_factory=set)
    staged_resistance_deltas: dict[str, float] = field(default_factory=dict)
    maintained_resistances: set[str] = field(default_factory=set)
    ignore_scheduled_this_round: set[str] = field(default_factory=set)
    ignored_this_round: set[str] = field(default_factory=set)
    rng_cursor: int = 0
    outcome: Outcome = ONGOING

    def clone(self) -> "GameState":
        return GameState(
            scenario=self.scenario,  # immutable, shared
            config=self.config,
            seed=self.seed,
            round_index=self.round_index,
            round_active=self.round_active,
            hours_remaining=self.hours_remaining,
            projected_profit=self.projected_profit,
            share_price=self.share_price,
            open_events=[OpenEvent(o.event_id, o.drawn_round, o.source, o.ignored_count)
                         for o in self.open_events],
            pending_triggers=[PendingTrigger(t.event_id, t.due_round, t.bypass, t.scheduled_by)
                              for t in self.pending_triggers],
            purchased_upgrades=list(self.purchased_upgrades),
            occurred_events=set(self.occurred_events),
            made_choices=set(self.made_choices),
            resistance_levels=dict(self.resistance_levels),
            active_flags=set(self.active_flags),
            staged_flags=set(self.staged_flags),
            staged_resistance_deltas=dict(self.staged_resistance_deltas),
            maintained_resistances=set(self.maintained_resistances),
            ignore_scheduled_this_round=set(self.ignore_scheduled_this_round),
            ignored_this_round=set(self.ignored_this_round),
            rng_cursor=self.rng_cursor,
            outcome=self.outcome,
        )

    def open_event(self, event_id: str) -> OpenEvent | None:
        for o in self.open_events:
            if o.event_id == event_id:
                return o
        return None

    def world_view(self) -> WorldView:
        return WorldView(
            round_index=self.round_index,
            purchased_upgrades=frozenset(self.purchased_upgrades),
            occurred_events=frozenset(self.occurred_events),
            made_choices=frozenset(self.made_choices),
        )


@dataclass(frozen=True)
class AttackSurface:
    """Derived view: which hardening flags are live and how strong defences are."""

    flags: frozenset[str]
    resistance_levels: dict[str, float]


def scenario_digest(scenario: Scenario) -> str:
    from dd2.scenario.loader import scenario_to_json

    return hashlib.sha256(canonical_json(scenario_to_json(scenario)).encode("utf-8")).hexdigest()


def canonical_json(value: object) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def state_snapshot(state: GameState) -> dict:
    """Canonical JSON-able snapshot of everything gameplay-relevant."""
    return {
        "scenario_digest": scenario_digest(state.scenario),
        "config": {
            "rounds_limit": state.config.rounds_limit,
            "round_seconds": state.config.round_seconds,
            "staff_count": state.config.staff_count,
            "hours_per_staff": state.config.hours_per_staff,
            "starting_hours": state.config.starting_hours,
            "starting_profit": state.config.starting_profit,
            "starting_share_price": state.config.starting_share_price,
            "draw_count": state.config.draw_count,
            "open_event_cap": state.config.open_event_cap,
        },
        "seed": state.seed,
        "round_index": state.round_index,
        "round_active": state.round_active,
        "hours_remaining": state.hours_remaining,
        "projected_profit": state.projected_profit,
        "share_price": state.share_price,
        "open_events": [o.to_json() for o in state.open_events],
        "pending_triggers": [t.to_json() for t in state.pending_triggers],
        "purchased_upgrades": list(state.purchased_upgrades),
        "occurred_events": sorted(state.occurred_events),
        "made_choices": sorted(list(pair) for pair in state.made_choices),
        "resistance_levels": {k: round(v, 9) for k, v in sorted(state.resistance_levels.items())},
        "active_flags": sorted(state.active_flags),
        "staged_flags": sorted(state.staged_flags),
        "staged_resistance_deltas": {k: round(v, 9) for k, v in
                                     sorted(state.staged_resistance_deltas.items())},
        "maintained_resistances": sorted(state.maintained_resistances),
        "ignore_scheduled_this_round": sorted(state.ignore_scheduled_this_round),
        "ignored_this_round": sorted(state.ignored_this_round),
        "rng_cursor": state.rng_cursor,
        "outcome": state.outcome.to_json(),
    }


def state_checksum(state: GameState) -> str:
    return hashlib.sha256(canonical_json(state_snapshot(state)).encode("utf-8")).hexdigest()
