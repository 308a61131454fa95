"""Scenario content packs: format, loading, condition language, validation."""

from dd2.scenario.conditions import (
    ALWAYS,
    All,
    AnyOf,
    ChoiceMade,
    Condition,
    EventOccurred,
    Not,
    RoundAtLeast,
    UpgradePurchased,
    WorldView,
    evaluate,
    parse_condition,
    satisfiable,
)
from dd2.scenario.loader import (
    load_scenario,
    load_scenario_path,
    scenario_to_json,
    serialize_scenario,
)
from dd2.scenario.model import (
    IGNORE_CHOICE_ID,
    SCENARIO_FORMAT,
    Asset,
    Choice,
    EventSpec,
    OnDrawEffects,
    Resistance,
    Scenario,
    ScenarioConfig,
    ScenarioMeta,
    TriggerSpec,
    Upgrade,
)
from dd2.scenario.validate import ValidationReport, validate_scenario

__all__ = [
    "ALWAYS", "All", "AnyOf", "ChoiceMade", "Condition", "EventOccurred", "Not",
    "RoundAtLeast", "UpgradePurchased", "WorldView", "evaluate", "parse_condition",
    "satisfiable", "load_scenario", "load_scenario_path", "scenario_to_json",
    "serialize_scenario", "IGNORE_CHOICE_ID", "SCENARIO_FORMAT", "Asset", "Choice",
    "EventSpec", "OnDrawEffects", "Resistance", "Scenario", "ScenarioConfig",
    "ScenarioMeta", "TriggerSpec", "Upgrade", "ValidationReport", "validate_scenario",
]
