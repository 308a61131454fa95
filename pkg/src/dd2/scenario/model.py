"""Immutable scenario content pack: config, assets, upgrades, resistances, events.

A loaded :class:`Scenario` is never mutated; the engine, analysis tools and
server all share one instance freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from dd2.scenario.conditions import ALWAYS, Condition, IdUniverse

SCENARIO_FORMAT = "dd2/1"

# Pseudo-choice id reserved for the ever-present "ignore this round" action.
IGNORE_CHOICE_ID = "__ignore__"


@dataclass(frozen=True)
class ScenarioConfig:
    """Session constants. Defaults model one very bad week at a financial org."""

    rounds_limit: int = 7
    round_seconds: int = 1200
    staff_count: int = 10
    hours_per_staff: int = 8
    starting_hours: int = 80
    starting_profit: int = 500_000
    starting_share_price: int = 100
    draw_count: int = 5
    open_event_cap: int = 10

    def check(self) -> None:
        for name in ("rounds_limit", "round_seconds", "staff_count", "hours_per_staff",
                     "starting_hours", "starting_profit", "starting_share_price",
                     "draw_count", "open_event_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"config.{name} must be >= 1")
        if self.starting_hours != self.staff_count * self.hours_per_staff:
            raise ValueError("config.starting_hours must equal staff_count * hours_per_staff")
        if self.open_event_cap <= self.draw_count:
            raise ValueError("config.open_event_cap must exceed draw_count")


@dataclass(frozen=True)
class Asset:
    id: str
    name: str
    description: str = ""
    tags: frozenset[str] = field(default_factory=frozenset)


@dataclass(frozen=True)
class Upgrade:
    id: str
    name: str
    asset_id: str
    hours_cost: int = 0
    profit_cost: int = 0
    surface_flags_set: frozenset[str] = field(default_factory=frozenset)
    resistance_deltas: dict[str, float] = field(default_factory=dict)
    prerequisites: Condition = ALWAYS
    repeatable: bool = False
    description: str = ""


@dataclass(frozen=True)
class Resistance:
    """A probabilistic defence: blocks matching events with probability = level."""

    id: str
    name: str
    base_effectiveness: float
    decay_per_round: float = 0.0
    floor: float = 0.0
    cap: float = 1.0


@dataclass(frozen=True)
class TriggerSpec:
    event_id: str
    delay_rounds: int = 1
    bypass_criteria: bool = False


@dataclass(frozen=True)
class Choice:
    id: str
    label: str
    hours_cost: int = 0
    profit_delta: int = 0
    share_delta: int = 0
    feedback_text: str = ""
    triggers: tuple[TriggerSpec, ...] = ()


@dataclass(frozen=True)
class OnDrawEffects:
    """Applied the moment the event enters play, before any team action."""

    hours_delta: int = 0
    profit_delta: int = 0
    share_delta: int = 0
    forced_upgrades: tuple[str, ...] = ()


@dataclass(frozen=True)
class EventSpec:
    id: str
    title: str
    description: str = ""
    category: str = ""
    on_draw: bool = False
    eligibility: Condition = ALWAYS
    blocked_by: tuple[str, ...] = ()
    draw_weight: float = 1.0
    repeatable: bool = False
    choices: tuple[Choice, ...] = ()
    ignore_trigger: TriggerSpec | None = None
    on_draw_effects: OnDrawEffects | None = None

    def choice(self, choice_id: str) -> Choice | None:
        for c in self.choices:
            if c.id == choice_id:
                return c
        return None


@dataclass(frozen=True)
class ScenarioMeta:
    format: str = SCENARIO_FORMAT
    id: str = ""
    title: str = ""
    description: str = ""


@dataclass(frozen=True, eq=False)
class Scenario:
    meta: ScenarioMeta
    config: ScenarioConfig
    assets: tuple[Asset, ...]
    upgrades: tuple[Upgrade, ...]
    resistances: tuple[Resistance, ...]
    events: tuple[EventSpec, ...]

    def __post_init__(self) -> None:
        # Frozen dataclass: stash lookup indexes via object.__setattr__.
        object.__setattr__(self, "_events_by_id", {e.id: e for e in self.events})
        object.__setattr__(self, "_upgrades_by_id", {u.id: u for u in self.upgrades})
        object.__setattr__(self, "_resistances_by_id", {r.id: r for r in self.resistances})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scenario):
            return NotImplemented
        return (self.meta, self.config, self.assets, self.upgrades,
                self.resistances, self.events) == (
                    other.meta, other.config, other.assets, other.upgrades,
                    other.resistances, other.events)

    def event(self, event_id: str) -> EventSpec:
        return self._events_by_id[event_id]

    def upgrade(self, upgrade_id: str) -> Upgrade:
        return self._upgrades_by_id[upgrade_id]

    def resistance(self, resistance_id: str) -> Resistance:
        return self._resistances_by_id[resistance_id]

    def has_event(self, event_id: str) -> bool:
        return event_id in self._events_by_id

    def has_upgrade(self, upgrade_id: str) -> bool:
        return upgrade_id in self._upgrades_by_id

    def universe(self) -> IdUniverse:
        return IdUniverse(
            upgrades=frozenset(u.id for u in self.upgrades),
            events=frozenset(e.id for e in self.events),
            choices=frozenset((e.id, c.id) for e in self.events for c in e.choices),
        )
