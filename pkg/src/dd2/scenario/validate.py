"""Authoring-time scenario validation.

Errors are defects the engine would reject at runtime (dangling ids, duplicate
ids, non-positive weights, events with no way to act on them). Warnings are
authoring smells: too few events drawable on day one to honour the per-day
minimum, events that can never occur, and trigger cycles (legal, but worth
knowing about).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from dd2.scenario.conditions import EMPTY_WORLD, evaluate, satisfiable
from dd2.scenario.loader import reference_problems
from dd2.scenario.model import Scenario


@dataclass(frozen=True)
class Finding:
    kind: str
    message: str
    subject: str = ""


@dataclass
class ValidationReport:
    errors: list[Finding] = field(default_factory=list)
    warnings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "errors": [vars(f) for f in self.errors],
            "warnings": [vars(f) for f in self.warnings],
        }


def validate_scenario(scenario: Scenario) -> ValidationReport:
    report = ValidationReport()

    for kind, items in (("asset", scenario.assets), ("upgrade", scenario.upgrades),
                        ("resistance", scenario.resistances), ("event", scenario.events)):
        seen: set[str] = set()
        for item in items:
            if item.id in seen:
                report.errors.append(Finding("duplicate_id", f"duplicate {kind} id", item.id))
            seen.add(item.id)

    for problem in reference_problems(scenario):
        report.errors.append(
            Finding("dangling_reference", f"{problem.referrer} references unknown id",
                    problem.ref_id)
        )

    for event in scenario.events:
        if event.draw_weight <= 0:
            report.errors.append(
                Finding("non_positive_weight", "draw_weight must be > 0", event.id))
        if not event.on_draw and not any(c for c in event.choices):
            report.errors.append(
                Finding("missing_choices", "event without on_draw needs a choice", event.id))

    _pool_sufficiency(scenario, report)
    _reachability(scenario, report)
    for cycle in find_trigger_cycles(scenario):
        report.warnings.append(
            Finding("trigger_cycle", "events trigger each other in a cycle", " -> ".join(cycle)))
    return report


def _pool_sufficiency(scenario: Scenario, report: ValidationReport) -> None:
    # Day-one guarantee: at the empty world (round 1) at least draw_count events
    # must be drawable, otherwise the first round cannot present the minimum.
    eligible = [e for e in scenario.events if evaluate(e.eligibility, EMPTY_WORLD)]
    if len(eligible) < scenario.config.draw_count:
        report.warnings.append(Finding(
            "pool_insufficiency",
            f"only {len(eligible)} events eligible at the empty state; "
            f"draw_count is {scenario.config.draw_count}",
        ))


def _reachability(scenario: Scenario, report: ValidationReport) -> None:
    targeted = trigger_targets(scenario)
    max_round = scenario.config.rounds_limit
    for event in scenario.events:
        if event.id in targeted:
            continue
        if not satisfiable(event.eligibility, max_round):
            report.warnings.append(
                Finding("unreachable_event",
                        "eligibility is unsatisfiable and no trigger targets this event",
                        event.id))


def trigger_targets(scenario: Scenario) -> set[str]:
    """Event ids targeted by any trigger (choice or ignore)."""
    targets: set[str] = set()
    for event in scenario.events:
        if event.ignore_trigger is not None:
            targets.add(event.ignore_trigger.event_id)
        for choice in event.choices:
            for t in choice.triggers:
                targets.add(t.event_id)
    return targets


def trigger_adjacency(scenario: Scenario) -> dict[str, list[str]]:
    """source event id -> target event ids, over choice and ignore triggers."""
    adj: dict[str, list[str]] = {e.id: [] for e in scenario.events}
    for event in scenario.events:
        targets: list[str] = []
        if event.ignore_trigger is not None:
            targets.append(event.ignore_trigger.event_id)
        for choice in event.choices:
            targets.extend(t.event_id for t in choice.triggers)
        adj[event.id] = [t for t in targets if t in adj]
    return adj


def find_trigger_cycles(scenario: Scenario) -> list[list[str]]:
    """Elementary cycles in the trigger graph, one per strongly-connected loop.

    DFS-based: reports each cycle once, rooted at its first-visited node.
    """
    adj = trigger_adjacency(scenario)
    cycles: list[list[str]] = []
    seen_cycles: set[frozenset[str]] = set()
    color: dict[str, int] = {}  # 0 unvisited, 1 on stack, 2 done
    stack: list[str] = []

    def dfs(node: str) -> None:
        color[node] = 1
        stack.append(node)
        for nxt in adj[node]:
            state = color.get(nxt, 0)
            if state == 0:
                dfs(nxt)
            elif state == 1:
                cycle = stack[stack.index(nxt):]
                key = frozenset(cycle)
                if key not in seen_cycles:
                    seen_cycles.add(key)
                    cycles.append(list(cycle))
        stack.pop()
        color[node] = 2

    for event in scenario.events:
        if color.get(event.id, 0) == 0:
            dfs(event.id)
    return cycles
