"""Hierarchical evaluation-goal structures: parsing, validation, confirmation.

A structure is a two-level tree: key goals at the top, each owning at least
one sub goal. Reports and questionnaires preserve document order, so order
is significant everywhere. All values are immutable; operations return new
values instead of mutating.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Sequence

from . import _schema
from .errors import InvalidStructureError, SchemaError, Violation

STATUS_DRAFT = "draft"
STATUS_CONFIRMED = "confirmed"
_STATUSES = (STATUS_DRAFT, STATUS_CONFIRMED)


@dataclass(frozen=True)
class SubGoal:
    """A child target supporting one key goal. Labels may repeat; ids may not."""

    id: str
    label: str
    parent: str


@dataclass(frozen=True)
class KeyGoal:
    """A top-level evaluation target with its ordered sub goals."""

    id: str
    label: str
    sub_goals: tuple[SubGoal, ...]


@dataclass(frozen=True)
class Confirmation:
    approvers: tuple[str, ...]
    date: str


@dataclass(frozen=True)
class GoalStructure:
    title: str
    version: str
    key_goals: tuple[KeyGoal, ...]
    status: str = STATUS_DRAFT
    confirmation: Confirmation | None = None

    def sub_goals(self) -> Iterator[SubGoal]:
        """All sub goals in document order."""
        for key_goal in self.key_goals:
            yield from key_goal.sub_goals

    def sub_goal_ids(self) -> list[str]:
        return [sub.id for sub in self.sub_goals()]


def parse_structure(document: bytes | str) -> GoalStructure:
    """Parse a goal-structure JSON document, enforcing schema and invariants.

    Raises SchemaError for malformed documents (syntax, types, unknown
    fields) and InvalidStructureError, carrying the full violation list,
    when the document is well-formed but breaks an invariant.
    """
    data = _schema.as_object(_schema.load_json(document, "goal structure"), "$")
    _schema.check_keys(data, "$", ("title", "version", "status", "confirmation", "key_goals"))

    title = _schema.as_str(data["title"], "$.title")
    version = _schema.as_str(data["version"], "$.version")
    status = _schema.as_str(data["status"], "$.status")
    if status not in _STATUSES:
        raise SchemaError(f"$.status: must be one of {_STATUSES}, got {status!r}")

    confirmation = None
    if data["confirmation"] is not None:
        record = _schema.as_object(data["confirmation"], "$.confirmation")
        _schema.check_keys(record, "$.confirmation", ("approvers", "date"))
        approvers = tuple(
            _schema.as_str(name, f"$.confirmation.approvers[{i}]")
            for i, name in enumerate(_schema.as_array(record["approvers"], "$.confirmation.approvers"))
        )
        confirmation = Confirmation(approvers=approvers, date=_schema.as_str(record["date"], "$.confirmation.date"))

    key_goals = []
    for i, raw_key in enumerate(_schema.as_array(data["key_goals"], "$.key_goals")):
        key_path = f"$.key_goals[{i}]"
        raw_key = _schema.as_object(raw_key, key_path)
        _schema.check_keys(raw_key, key_path, ("id", "label", "sub_goals"))
        key_id = _schema.as_str(raw_key["id"], f"{key_path}.id")
        sub_goals = []
        for j, raw_sub in enumerate(_schema.as_array(raw_key["sub_goals"], f"{key_path}.sub_goals")):
            sub_path = f"{key_path}.sub_goals[{j}]"
            raw_sub = _schema.as_object(raw_sub, sub_path)
            _schema.check_keys(raw_sub, sub_path, ("id", "label"))
            sub_goals.append(
                SubGoal(
                    id=_schema.as_str(raw_sub["id"], f"{sub_path}.id"),
                    label=_schema.as_str(raw_sub["label"], f"{sub_path}.label"),
                    parent=key_id,
                )
            )
        key_goals.append(
            KeyGoal(id=key_id, label=_schema.as_str(raw_key["label"], f"{key_path}.label"), sub_goals=tuple(sub_goals))
        )

    structure = GoalStructure(
        title=title,
        version=version,
        key_goals=tuple(key_goals),
        status=status,
        confirmation=confirmation,
    )
    violations = validate_structure(structure)
    if violations:
        raise InvalidStructureError(violations)
    return structure


def serialize_structure(structure: GoalStructure) -> bytes:
    """Inverse of parse_structure; identical values yield identical bytes."""
    confirmation = None
    if structure.confirmation is not None:
        confirmation = {
            "approvers": list(structure.confirmation.approvers),
            "date": structure.confirmation.date,
        }
    return _schema.dumps(
        {
            "title": structure.title,
            "version": structure.version,
            "status": structure.status,
            "confirmation": confirmation,
            "key_goals": [
                {
                    "id": key_goal.id,
                    "label": key_goal.label,
                    "sub_goals": [{"id": sub.id, "label": sub.label} for sub in key_goal.sub_goals],
                }
                for key_goal in structure.key_goals
            ],
        }
    )


def validate_structure(structure: GoalStructure) -> list[Violation]:
    """Check every structure invariant; violations are data, not errors."""
    violations: list[Violation] = []
    if not structure.key_goals:
        violations.append(Violation("empty_structure", "$.key_goals", "structure has no key goals"))

    seen: set[str] = set()
    for i, key_goal in enumerate(structure.key_goals):
        key_path = f"$.key_goals[{i}]"
        if not key_goal.id:
            violations.append(Violation("empty_id", key_path, "key goal has an empty id"))
        elif key_goal.id in seen:
            violations.append(Violation("duplicate_id", key_path, f"id {key_goal.id!r} is already used"))
        else:
            seen.add(key_goal.id)
        if not key_goal.sub_goals:
            violations.append(
                Violation("no_sub_goals", key_path, f"key goal {key_goal.id!r} has zero sub goals")
            )
        for j, sub in enumerate(key_goal.sub_goals):
            sub_path = f"{key_path}.sub_goals[{j}]"
            if not sub.id:
                violations.append(Violation("empty_id", sub_path, "sub goal has an empty id"))
            elif sub.id in seen:
                violations.append(Violation("duplicate_id", sub_path, f"id {sub.id!r} is already used"))
            else:
                seen.add(sub.id)
            if sub.parent != key_goal.id:
                violations.append(
                    Violation(
                        "parent_mismatch",
                        sub_path,
                        f"sub goal {sub.id!r} names parent {sub.parent!r} but sits under {key_goal.id!r}",
                    )
                )

    if structure.status == STATUS_CONFIRMED and structure.confirmation is None:
        violations.append(
            Violation("missing_confirmation", "$.confirmation", "status is confirmed but no confirmation record")
        )
    if structure.confirmation is not None and not structure.confirmation.approvers:
        violations.append(
            Violation("empty_approvers", "$.confirmation.approvers", "confirmation record has no approvers")
        )
    return violations


def confirm_structure(structure: GoalStructure, approvers: Sequence[str], date: str) -> GoalStructure:
    """Return a confirmed copy of a valid structure; the input is unchanged.

    Confirmation is the sign-off gate: downstream steps (questionnaire
    generation) refuse draft structures.
    """
    violations = validate_structure(structure)
    if violations:
        raise InvalidStructureError(violations)
    if not approvers:
        raise ValueError("empty_approvers: confirmation needs at least one approver")
    return replace(
        structure,
        status=STATUS_CONFIRMED,
        confirmation=Confirmation(approvers=tuple(approvers), date=date),
    )
