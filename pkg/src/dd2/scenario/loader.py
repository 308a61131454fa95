"""Load, link and serialize scenario documents.

Documents are UTF-8 JSON with exactly the top-level keys ``meta``, ``config``,
``assets``, ``upgrades``, ``resistances`` and ``events``. Decoding is strict:
an unrecognised key anywhere is a :class:`SchemaError` naming the field path.
Loading fails fast on the first unresolved identifier (``DanglingReference``);
:mod:`dd2.scenario.validate` re-checks references exhaustively for tooling that
wants the full list of findings.
"""

from __future__ import annotations

import json
from pathlib import Path

from dd2.errors import DanglingReference, ParseError, SchemaError
from dd2.scenario.conditions import ALWAYS, condition_to_json, parse_condition, referenced_ids
from dd2.scenario.model import (
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

_CONFIG_KEYS = (
    "rounds_limit", "round_seconds", "staff_count", "hours_per_staff", "starting_hours",
    "starting_profit", "starting_share_price", "draw_count", "open_event_cap",
)


def load_scenario(document: bytes | str) -> Scenario:
    """Parse, decode and link a scenario document.

    Raises ParseError for malformed JSON, SchemaError for structural problems
    and DanglingReference for the first unresolved identifier.
    """
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not UTF-8: {exc}", exc.start) from exc
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}", exc.pos) from exc
    return decode_scenario(raw)


def load_scenario_path(path: str | Path) -> Scenario:
    return load_scenario(Path(path).read_bytes())


def decode_scenario(raw: object) -> Scenario:
    """Decode an already-parsed JSON value into a linked Scenario."""
    top = _obj(raw, "$")
    _reject_unknown(top, {"meta", "config", "assets", "upgrades", "resistances", "events"}, "$")

    meta = _decode_meta(top.get("meta"), "meta")
    config = _decode_config(top.get("config", {}), "config")
    assets = tuple(
        _decode_asset(a, f"assets[{i}]") for i, a in enumerate(_arr(top.get("assets", []), "assets"))
    )
    resistances = tuple(
        _decode_resistance(r, f"resistances[{i}]")
        for i, r in enumerate(_arr(top.get("resistances", []), "resistances"))
    )
    upgrades = tuple(
        _decode_upgrade(u, f"upgrades[{i}]")
        for i, u in enumerate(_arr(top.get("upgrades", []), "upgrades"))
    )
    events = tuple(
        _decode_event(e, f"events[{i}]") for i, e in enumerate(_arr(top.get("events", []), "events"))
    )

    scenario = Scenario(meta=meta, config=config, assets=assets, upgrades=upgrades,
                        resistances=resistances, events=events)
    _check_duplicates(scenario)
    first = next(iter(reference_problems(scenario)), None)
    if first is not None:
        raise first
    return scenario


def serialize_scenario(scenario: Scenario) -> str:
    """Emit the document form, defaults included, so round-trips are lossless."""
    return json.dumps(scenario_to_json(scenario), indent=2, ensure_ascii=False) + "\n"


def scenario_to_json(scenario: Scenario) -> dict:
    return {
        "meta": {
            "format": scenario.meta.format,
            "id": scenario.meta.id,
            "title": scenario.meta.title,
            "description": scenario.meta.description,
        },
        "config": {k: getattr(scenario.config, k) for k in _CONFIG_KEYS},
        "assets": [
            {"id": a.id, "name": a.name, "description": a.description, "tags": sorted(a.tags)}
            for a in scenario.assets
        ],
        "upgrades": [
            {
                "id": u.id,
                "name": u.name,
                "description": u.description,
                "asset_id": u.asset_id,
                "hours_cost": u.hours_cost,
                "profit_cost": u.profit_cost,
                "surface_flags_set": sorted(u.surface_flags_set),
                "resistance_deltas": dict(sorted(u.resistance_deltas.items())),
                "prerequisites": condition_to_json(u.prerequisites),
                "repeatable": u.repeatable,
            }
            for u in scenario.upgrades
        ],
        "resistances": [
            {
                "id": r.id,
                "name": r.name,
                "base_effectiveness": r.base_effectiveness,
                "decay_per_round": r.decay_per_round,
                "floor": r.floor,
                "cap": r.cap,
            }
            for r in scenario.resistances
        ],
        "events": [_event_to_json(e) for e in scenario.events],
    }


def _event_to_json(e: EventSpec) -> dict:
    out: dict = {
        "id": e.id,
        "title": e.title,
        "description": e.description,
        "category": e.category,
        "on_draw": e.on_draw,
        "eligibility": condition_to_json(e.eligibility),
        "blocked_by": list(e.blocked_by),
        "draw_weight": e.draw_weight,
        "repeatable": e.repeatable,
        "choices": [
            {
                "id": c.id,
                "label": c.label,
                "hours_cost": c.hours_cost,
                "profit_delta": c.profit_delta,
                "share_delta": c.share_delta,
                "feedback_text": c.feedback_text,
                "triggers": [_trigger_to_json(t) for t in c.triggers],
            }
            for c in e.choices
        ],
    }
    if e.ignore_trigger is not None:
        out["ignore_trigger"] = _trigger_to_json(e.ignore_trigger)
    if e.on_draw_effects is not None:
        d = e.on_draw_effects
        out["on_draw_effects"] = {
            "hours_delta": d.hours_delta,
            "profit_delta": d.profit_delta,
            "share_delta": d.share_delta,
            "forced_upgrades": list(d.forced_upgrades),
        }
    return out


def _trigger_to_json(t: TriggerSpec) -> dict:
    return {"event_id": t.event_id, "delay_rounds": t.delay_rounds,
            "bypass_criteria": t.bypass_criteria}


# --- decoding helpers ---------------------------------------------------------

def _obj(value: object, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError("expected an object", path)
    return value


def _arr(value: object, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError("expected a list", path)
    return value


def _reject_unknown(obj: dict, allowed: set[str], path: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"unknown key {sorted(unknown)[0]!r}", path)


def _string(obj: dict, key: str, path: str, default: str | None = None) -> str:
    if key not in obj:
        if default is None:
            raise SchemaError(f"missing required key {key!r}", path)
        return default
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError(f"{key} must be a string", path)
    return value


def _integer(obj: dict, key: str, path: str, default: int | None = None,
             minimum: int | None = None) -> int:
    if key not in obj:
        if default is None:
            raise SchemaError(f"missing required key {key!r}", path)
        return default
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{key} must be an integer", path)
    if minimum is not None and value < minimum:
        raise SchemaError(f"{key} must be >= {minimum}", path)
    return value


def _number(obj: dict, key: str, path: str, default: float | None = None) -> float:
    if key not in obj:
        if default is None:
            raise SchemaError(f"missing required key {key!r}", path)
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{key} must be a number", path)
    return float(value)


def _boolean(obj: dict, key: str, path: str, default: bool) -> bool:
    value = obj.get(key, default)
    if not isinstance(value, bool):
        raise SchemaError(f"{key} must be a boolean", path)
    return value


def _string_list(obj: dict, key: str, path: str) -> list[str]:
    value = obj.get(key, [])
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"{key} must be a list of strings", path)
    return value


def _decode_meta(raw: object, path: str) -> ScenarioMeta:
    if raw is None:
        raise SchemaError("missing required key 'meta'", "$")
    obj = _obj(raw, path)
    _reject_unknown(obj, {"format", "id", "title", "description"}, path)
    fmt = _string(obj, "format", path)
    if fmt != SCENARIO_FORMAT:
        raise SchemaError(f"unsupported format {fmt!r} (expected {SCENARIO_FORMAT!r})", f"{path}.format")
    return ScenarioMeta(
        format=fmt,
        id=_string(obj, "id", path, default=""),
        title=_string(obj, "title", path, default=""),
        description=_string(obj, "description", path, default=""),
    )


def _decode_config(raw: object, path: str) -> ScenarioConfig:
    obj = _obj(raw, path)
    _reject_unknown(obj, set(_CONFIG_KEYS), path)
    defaults = ScenarioConfig()
    values = {k: _integer(obj, k, path, default=getattr(defaults, k)) for k in _CONFIG_KEYS}
    config = ScenarioConfig(**values)
    try:
        config.check()
    except ValueError as exc:
        raise SchemaError(str(exc), path) from exc
    return config


def _decode_asset(raw: object, path: str) -> Asset:
    obj = _obj(raw, path)
    _reject_unknown(obj, {"id", "name", "description", "tags"}, path)
    return Asset(
        id=_string(obj, "id", path),
        name=_string(obj, "name", path),
        description=_string(obj, "description", path, default=""),
        tags=frozenset(_string_list(obj, "tags", path)),
    )


def _decode_resistance(raw: object, path: str) -> Resistance:
    obj = _obj(raw, path)
    _reject_unknown(obj, {"id", "name", "base_effectiveness", "decay_per_round", "floor", "cap"}, path)
    res = Resistance(
        id=_string(obj, "id", path),
        name=_string(obj, "name", path),
        base_effectiveness=_number(obj, "base_effectiveness", path),
        decay_per_round=_number(obj, "decay_per_round", path, default=0.0),
        floor=_number(obj, "floor", path, default=0.0),
        cap=_number(obj, "cap", path, default=1.0),
    )
    if not (0.0 <= res.floor <= res.base_effectiveness <= res.cap <= 1.0):
        raise SchemaError("requires 0 <= floor <= base_effectiveness <= cap <= 1", path)
    if res.decay_per_round < 0:
        raise SchemaError("decay_per_round must be >= 0", path)
    return res


def _decode_upgrade(raw: object, path: str) -> Upgrade:
    obj = _obj(raw, path)
    _reject_unknown(obj, {"id", "name", "description", "asset_id", "hours_cost", "profit_cost",
                          "surface_flags_set", "resistance_deltas", "prerequisites", "repeatable"},
                    path)
    deltas_raw = obj.get("resistance_deltas", {})
    if not isinstance(deltas_raw, dict):
        raise SchemaError("resistance_deltas must be an object", path)
    deltas: dict[str, float] = {}
    for rid, dv in deltas_raw.items():
        if isinstance(dv, bool) or not isinstance(dv, (int, float)):
            raise SchemaError(f"resistance_deltas[{rid!r}] must be a number", path)
        if not -1.0 <= float(dv) <= 1.0:
            raise SchemaError(f"resistance_deltas[{rid!r}] must be within [-1, 1]", path)
        deltas[rid] = float(dv)
    prereq = ALWAYS
    if "prerequisites" in obj:
        prereq = parse_condition(obj["prerequisites"], f"{path}.prerequisites")
    return Upgrade(
        id=_string(obj, "id", path),
        name=_string(obj, "name", path),
        description=_string(obj, "description", path, default=""),
        asset_id=_string(obj, "asset_id", path),
        hours_cost=_integer(obj, "hours_cost", path, default=0, minimum=0),
        profit_cost=_integer(obj, "profit_cost", path, default=0, minimum=0),
        surface_flags_set=frozenset(_string_list(obj, "surface_flags_set", path)),
        resistance_deltas=deltas,
        prerequisites=prereq,
        repeatable=_boolean(obj, "repeatable", path, default=False),
    )


def _decode_trigger(raw: object, path: str) -> TriggerSpec:
    obj = _obj(raw, path)
    _reject_unknown(obj, {"event_id", "delay_rounds", "bypass_criteria"}, path)
    return TriggerSpec(
        event_id=_string(obj, "event_id", path),
        delay_rounds=_integer(obj, "delay_rounds", path, default=1, minimum=1),
        bypass_criteria=_boolean(obj, "bypass_criteria", path, default=False),
    )


def _decode_choice(raw: object, path: str) -> Choice:
    obj = _obj(raw, path)
    _reject_unknown(obj, {"id", "label", "hours_cost", "profit_delta", "share_delta",
                          "feedback_text", "triggers"}, path)
    return Choice(
        id=_string(obj, "id", path),
        label=_string(obj, "label", path),
        hours_cost=_integer(obj, "hours_cost", path, default=0, minimum=0),
        profit_delta=_integer(obj, "profit_delta", path, default=0),
        share_delta=_integer(obj, "share_delta", path, default=0),
        feedback_text=_string(obj, "feedback_text", path, default=""),
        triggers=tuple(
            _decode_trigger(t, f"{path}.triggers[{i}]")
            for i, t in enumerate(_arr(obj.get("triggers", []), f"{path}.triggers"))
        ),
    )


def _decode_event(raw: object, path: str) -> EventSpec:
    obj = _obj(raw, path)
    _reject_unknown(obj, {"id", "title", "description", "category", "on_draw", "eligibility",
                          "blocked_by", "draw_weight", "repeatable", "choices", "ignore_trigger",
                          "on_draw_effects"}, path)
    eligibility = ALWAYS
    if "eligibility" in obj:
        eligibility = parse_condition(obj["eligibility"], f"{path}.eligibility")
    weight = _number(obj, "draw_weight", path, default=1.0)
    if weight <= 0:
        raise SchemaError("draw_weight must be > 0", path)
    ignore_trigger = None
    if "ignore_trigger" in obj:
        ignore_trigger = _decode_trigger(obj["ignore_trigger"], f"{path}.ignore_trigger")
    on_draw_effects = None
    if "on_draw_effects" in obj:
        fx = _obj(obj["on_draw_effects"], f"{path}.on_draw_effects")
        _reject_unknown(fx, {"hours_delta", "profit_delta", "share_delta", "forced_upgrades"},
                        f"{path}.on_draw_effects")
        on_draw_effects = OnDrawEffects(
            hours_delta=_integer(fx, "hours_delta", f"{path}.on_draw_effects", default=0),
            profit_delta=_integer(fx, "profit_delta", f"{path}.on_draw_effects", default=0),
            share_delta=_integer(fx, "share_delta", f"{path}.on_draw_effects", default=0),
            forced_upgrades=tuple(_string_list(fx, "forced_upgrades", f"{path}.on_draw_effects")),
        )
    event = EventSpec(
        id=_string(obj, "id", path),
        title=_string(obj, "title", path),
        description=_string(obj, "description", path, default=""),
        category=_string(obj, "category", path, default=""),
        on_draw=_boolean(obj, "on_draw", path, default=False),
        eligibility=eligibility,
        blocked_by=tuple(_string_list(obj, "blocked_by", path)),
        draw_weight=weight,
        repeatable=_boolean(obj, "repeatable", path, default=False),
        choices=tuple(
            _decode_choice(c, f"{path}.choices[{i}]")
            for i, c in enumerate(_arr(obj.get("choices", []), f"{path}.choices"))
        ),
        ignore_trigger=ignore_trigger,
        on_draw_effects=on_draw_effects,
    )
    if not event.on_draw and not event.choices:
        raise SchemaError("event without on_draw requires at least one choice", path)
    seen: set[str] = set()
    for c in event.choices:
        if c.id in seen:
            raise SchemaError(f"duplicate choice id {c.id!r}", path)
        seen.add(c.id)
    return event


def _check_duplicates(scenario: Scenario) -> None:
    for kind, items in (("asset", scenario.assets), ("upgrade", scenario.upgrades),
                        ("resistance", scenario.resistances), ("event", scenario.events)):
        seen: set[str] = set()
        for item in items:
            if item.id in seen:
                raise SchemaError(f"duplicate {kind} id {item.id!r}", kind + "s")
            seen.add(item.id)


def reference_problems(scenario: Scenario):
    """Yield a DanglingReference for every identifier that fails to resolve."""
    universe = scenario.universe()
    resistance_ids = {r.id for r in scenario.resistances}
    asset_ids = {a.id for a in scenario.assets}

    def check_condition(cond, referrer: str):
        refs = referenced_ids(cond)
        for uid in sorted(refs.upgrades - universe.upgrades):
            yield DanglingReference(uid, referrer)
        for eid in sorted(refs.events - universe.events):
            yield DanglingReference(eid, referrer)
        for pair in sorted(refs.choices):
            if pair not in universe.choices and pair[0] in universe.events:
                yield DanglingReference(f"{pair[0]}/{pair[1]}", referrer)

    for u in scenario.upgrades:
        if u.asset_id not in asset_ids:
            yield DanglingReference(u.asset_id, f"upgrade {u.id}")
        for rid in sorted(u.resistance_deltas):
            if rid not in resistance_ids:
                yield DanglingReference(rid, f"upgrade {u.id} resistance_deltas")
        yield from check_condition(u.prerequisites, f"upgrade {u.id} prerequisites")

    for e in scenario.events:
        for rid in e.blocked_by:
            if rid not in resistance_ids:
                yield DanglingReference(rid, f"event {e.id} blocked_by")
        yield from check_condition(e.eligibility, f"event {e.id} eligibility")
        if e.ignore_trigger is not None and not scenario.has_event(e.ignore_trigger.event_id):
            yield DanglingReference(e.ignore_trigger.event_id, f"event {e.id} ignore_trigger")
        if e.on_draw_effects is not None:
            for uid in e.on_draw_effects.forced_upgrades:
                if uid not in universe.upgrades:
                    yield DanglingReference(uid, f"event {e.id} forced_upgrades")
        for c in e.choices:
            for t in c.triggers:
                if not scenario.has_event(t.event_id):
                    yield DanglingReference(t.event_id, f"event {e.id} choice {c.id}")
