"""Exception hierarchy shared across the scenario model, engine and service.

Every error carries a stable ``code`` (its class name) so the HTTP layer and
the CLI can surface machine-readable failures without string matching.
"""

from __future__ import annotations


class DD2Error(Exception):
    """Base class for all package errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- scenario loading -------------------------------------------------------

class ParseError(DD2Error):
    """Document is not well-formed JSON."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class SchemaError(DD2Error):
    """Document violates the scenario schema (strict mode: unknown keys too)."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class DanglingReference(DD2Error):
    """An identifier does not resolve within the scenario."""

    def __init__(self, ref_id: str, referrer: str):
        super().__init__(f"{referrer} references unknown id {ref_id!r}")
        self.ref_id = ref_id
        self.referrer = referrer


class UnknownIdentifier(DD2Error):
    """A condition predicate names an identifier outside the scenario universe."""

    def __init__(self, ref_id: str):
        super().__init__(f"unknown identifier {ref_id!r}")
        self.ref_id = ref_id


# --- engine -----------------------------------------------------------------

class EngineError(DD2Error):
    """Base class for rejected engine operations. State is never mutated."""


class SessionTerminal(EngineError):
    pass


class RoundAlreadyActive(EngineError):
    pass


class NoActiveRound(EngineError):
    pass


class EventNotOpen(EngineError):
    pass


class UnknownChoice(EngineError):
    pass


class ChoiceAlreadyFinal(EngineError):
    pass


class InsufficientHours(EngineError):
    pass


class InsufficientProfit(EngineError):
    pass


class PrerequisiteUnmet(EngineError):
    pass


class AlreadyPurchased(EngineError):
    pass


class InvalidOverride(EngineError):
    pass


# --- replay -----------------------------------------------------------------

class LogCorrupt(DD2Error):
    """A decision-log record failed checksum or structural verification."""

    def __init__(self, revision: int, message: str):
        super().__init__(f"record {revision}: {message}")
        self.revision = revision


class VersionMismatch(DD2Error):
    """Log was produced by a different engine version or scenario."""


# --- simulation -------------------------------------------------------------

class PolicyIllegalAction(DD2Error):
    """A policy returned an action outside the permitted set."""


# --- service ----------------------------------------------------------------

class ServiceError(DD2Error):
    pass


class SessionNotFound(ServiceError):
    pass


class ConcurrentConflict(ServiceError):
    """Supplied expected_revision is stale."""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected revision {expected}, session is at {actual}")
        self.expected = expected
        self.actual = actual


class ScenarioInvalid(ServiceError):
    """Scenario failed load or validation; carries the findings."""

    def __init__(self, message: str, report: object | None = None):
        super().__init__(message)
        self.report = report
