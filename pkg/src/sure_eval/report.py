"""Report assembly and rendering (markdown, json, csv).

Markdown and csv are for humans: scores are rounded half-up to two
decimals in markdown, sections appear in a fixed order, and rendering the
same report twice yields identical bytes. The json format carries full
precision and round-trips losslessly through parse_report.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping, Sequence

from . import _schema
from .errors import ReportError, SchemaError
from .goal_structure import GoalStructure, KeyGoal, SubGoal
from .ingest import ResponseSet
from .scoring import AggregateScores, ParticipantScore, aggregate_scores

RENDER_FORMATS = ("markdown", "json", "csv")
HISTOGRAM_BINS = 10


@dataclass(frozen=True)
class Participation:
    respondents: int
    enrolled: int
    rate_percent: float


@dataclass(frozen=True)
class ScoreReport:
    """All four score levels plus distribution and participation context."""

    title: str
    version: str
    generated_at: str
    aggregates: AggregateScores
    key_goals: tuple[KeyGoal, ...]
    participants: tuple[ParticipantScore, ...]
    histogram: tuple[int, ...]
    participation: Participation | None
    groups: Mapping[str, Mapping[str, AggregateScores]] | None
    warnings: tuple[str, ...]


def participation_rate(respondents: int, enrolled: int) -> float:
    """Percentage respondents/enrolled, rounded half-up to two decimals."""
    if enrolled < 1:
        raise ReportError("enrolled count must be at least 1")
    if respondents < 0:
        raise ReportError("respondent count cannot be negative")
    if enrolled < respondents:
        raise ReportError(f"enrolled ({enrolled}) is smaller than respondents ({respondents})")
    exact = Decimal(respondents) * 100 / Decimal(enrolled)
    return float(exact.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def build_report(
    scores: Sequence[ParticipantScore],
    aggregates: AggregateScores,
    structure: GoalStructure,
    responses: ResponseSet,
    *,
    participation: tuple[int, int] | None = None,
    group_by: Sequence[str] | None = None,
    generated_at: str | None = None,
) -> ScoreReport:
    """Assemble a report from one scoring run.

    When group_by names demographic keys, the full aggregation is redone
    per group over that group's participants (means of means would mislead
    with unequal group sizes).
    """
    score_of = {score.participant_id: score for score in scores}

    participation_record = None
    if participation is not None:
        respondents, enrolled = participation
        participation_record = Participation(
            respondents=respondents,
            enrolled=enrolled,
            rate_percent=participation_rate(respondents, enrolled),
        )

    groups: dict[str, dict[str, AggregateScores]] | None = None
    if group_by:
        groups = {}
        for key in group_by:
            if key not in responses.demographics:
                raise ReportError(f"group_by key {key!r} is not a declared demographic {tuple(responses.demographics)}")
            members: dict[str, list[ParticipantScore]] = {}
            for record in responses.participants:
                if record.participant_id not in score_of:
                    raise ReportError(f"participant {record.participant_id!r} has no score; inputs are not from one run")
                members.setdefault(record.demographics[key], []).append(score_of[record.participant_id])
            groups[key] = {
                value: aggregate_scores(group_scores, structure)
                for value, group_scores in sorted(members.items())
            }

    histogram = [0] * HISTOGRAM_BINS
    for score in scores:
        histogram[min(int(score.overall * HISTOGRAM_BINS), HISTOGRAM_BINS - 1)] += 1

    if generated_at is None:
        generated_at = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")

    return ScoreReport(
        title=structure.title,
        version=structure.version,
        generated_at=generated_at,
        aggregates=aggregates,
        key_goals=structure.key_goals,
        participants=tuple(scores),
        histogram=tuple(histogram),
        participation=participation_record,
        groups=groups,
        warnings=tuple(responses.warnings),
    )


def render_report(report: ScoreReport, format: str) -> bytes:
    if format == "markdown":
        return _render_markdown(report).encode("utf-8")
    if format == "json":
        return _schema.dumps(_report_to_obj(report))
    if format == "csv":
        return _render_csv(report).encode("utf-8")
    raise ValueError(f"unknown format {format!r}; expected one of {RENDER_FORMATS}")


# --- markdown ---------------------------------------------------------------


def _round2(value: float) -> str:
    return str(Decimal(str(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _render_markdown(report: ScoreReport) -> str:
    agg = report.aggregates
    lines = [f"# Evaluation report: {report.title} (version {report.version})", ""]
    if report.generated_at:
        lines += [f"Generated: {report.generated_at}", ""]

    lines += [
        "## General",
        "",
        "| Metric | Value |",
        "|--------|-------|",
        f"| General evaluation score | {_round2(agg.general)} |",
        f"| Participants | {agg.n_participants} |",
        "",
    ]

    lines += ["## Key goals", "", "| Id | Key goal | Score |", "|----|----------|-------|"]
    for key_goal in report.key_goals:
        lines.append(f"| {key_goal.id} | {key_goal.label} | {_round2(agg.key_goal[key_goal.id])} |")
    lines.append("")

    lowest = min(agg.sub_goal.values())
    highest = max(agg.sub_goal.values())
    mark = lowest < highest  # nothing to highlight when all sub goals tie
    lines += ["## Sub goals", ""]
    for key_goal in report.key_goals:
        lines += [
            f"### {key_goal.id}: {key_goal.label} ({_round2(agg.key_goal[key_goal.id])})",
            "",
            "| Id | Sub goal | Score |",
            "|----|----------|-------|",
        ]
        for sub in key_goal.sub_goals:
            value = agg.sub_goal[sub.id]
            note = ""
            if mark and value == lowest:
                note = " (lowest)"
            elif mark and value == highest:
                note = " (highest)"
            lines.append(f"| {sub.id} | {sub.label} | {_round2(value)}{note} |")
        lines.append("")

    lines += [
        "## Distribution",
        "",
        "| Metric | Value |",
        "|--------|-------|",
        f"| Participants | {agg.n_participants} |",
        f"| Overall score exactly 1.0 | {agg.n_overall_max} |",
        f"| Overall score exactly 0.0 | {agg.n_overall_zero} |",
        "",
        "| Overall range | Count |",
        "|---------------|-------|",
    ]
    for i, count in enumerate(report.histogram):
        lines.append(f"| {i / 10:.1f}-{(i + 1) / 10:.1f} | {count} |")
    lines.append("")

    if report.participation is not None:
        p = report.participation
        lines += [
            "## Participation",
            "",
            "| Respondents | Enrolled | Rate |",
            "|-------------|----------|------|",
            f"| {p.respondents} | {p.enrolled} | {p.rate_percent:.2f}% |",
            "",
        ]

    if report.groups:
        lines += ["## Groups", ""]
        for key, by_value in report.groups.items():
            for value, group_agg in by_value.items():
                lines += [
                    f"### {key} = {value} ({group_agg.n_participants} respondents)",
                    "",
                    "| Metric | Value |",
                    "|--------|-------|",
                    f"| General evaluation score | {_round2(group_agg.general)} |",
                ]
                for key_goal in report.key_goals:
                    lines.append(f"| {key_goal.id}: {key_goal.label} | {_round2(group_agg.key_goal[key_goal.id])} |")
                lines.append("")

    if report.warnings:
        lines += ["## Warnings", ""]
        lines += [f"- {warning}" for warning in report.warnings]
        lines.append("")

    return "\n".join(lines)


# --- json -------------------------------------------------------------------


def _aggregates_to_obj(agg: AggregateScores) -> dict:
    return {
        "n": agg.n_participants,
        "n_max": agg.n_overall_max,
        "n_zero": agg.n_overall_zero,
        "general": agg.general,
        "key_goals": dict(agg.key_goal),
        "sub_goals": dict(agg.sub_goal),
    }


def _report_to_obj(report: ScoreReport) -> dict:
    agg = report.aggregates
    return {
        "title": report.title,
        "version": report.version,
        "generated_at": report.generated_at,
        "general": agg.general,
        "key_goals": [
            {
                "id": key_goal.id,
                "label": key_goal.label,
                "score": agg.key_goal[key_goal.id],
                "sub_goals": [
                    {"id": sub.id, "label": sub.label, "score": agg.sub_goal[sub.id]}
                    for sub in key_goal.sub_goals
                ],
            }
            for key_goal in report.key_goals
        ],
        "participants": [
            {
                "id": score.participant_id,
                "overall": score.overall,
                "key_goals": dict(score.key_goal_scores),
                "sub_goals": dict(score.sub_goal_scores),
            }
            for score in report.participants
        ],
        "distribution": {
            "n": agg.n_participants,
            "n_max": agg.n_overall_max,
            "n_zero": agg.n_overall_zero,
            "histogram": list(report.histogram),
        },
        "participation": (
            None
            if report.participation is None
            else {
                "respondents": report.participation.respondents,
                "enrolled": report.participation.enrolled,
                "rate_percent": report.participation.rate_percent,
            }
        ),
        "groups": (
            None
            if report.groups is None
            else {
                key: {value: _aggregates_to_obj(group_agg) for value, group_agg in by_value.items()}
                for key, by_value in report.groups.items()
            }
        ),
        "warnings": list(report.warnings),
    }


def _score_num(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number, got {type(value).__name__}")
    return float(value)


def _aggregates_from_obj(obj: dict, path: str) -> AggregateScores:
    _schema.check_keys(obj, path, ("n", "n_max", "n_zero", "general", "key_goals", "sub_goals"))
    return AggregateScores(
        general=_score_num(obj["general"], f"{path}.general"),
        key_goal={k: _score_num(v, f"{path}.key_goals.{k}") for k, v in _schema.as_object(obj["key_goals"], f"{path}.key_goals").items()},
        sub_goal={k: _score_num(v, f"{path}.sub_goals.{k}") for k, v in _schema.as_object(obj["sub_goals"], f"{path}.sub_goals").items()},
        n_participants=_schema.as_int(obj["n"], f"{path}.n"),
        n_overall_max=_schema.as_int(obj["n_max"], f"{path}.n_max"),
        n_overall_zero=_schema.as_int(obj["n_zero"], f"{path}.n_zero"),
    )


def parse_report(document: bytes | str) -> ScoreReport:
    """Rebuild a ScoreReport from its json rendering, field for field."""
    data = _schema.as_object(_schema.load_json(document, "report"), "$")
    _schema.check_keys(
        data,
        "$",
        (
            "title",
            "version",
            "generated_at",
            "general",
            "key_goals",
            "participants",
            "distribution",
            "participation",
            "groups",
            "warnings",
        ),
    )

    key_goals = []
    key_scores: dict[str, float] = {}
    sub_scores: dict[str, float] = {}
    for i, raw_key in enumerate(_schema.as_array(data["key_goals"], "$.key_goals")):
        path = f"$.key_goals[{i}]"
        raw_key = _schema.as_object(raw_key, path)
        _schema.check_keys(raw_key, path, ("id", "label", "score", "sub_goals"))
        key_id = _schema.as_str(raw_key["id"], f"{path}.id")
        key_scores[key_id] = _score_num(raw_key["score"], f"{path}.score")
        subs = []
        for j, raw_sub in enumerate(_schema.as_array(raw_key["sub_goals"], f"{path}.sub_goals")):
            sub_path = f"{path}.sub_goals[{j}]"
            raw_sub = _schema.as_object(raw_sub, sub_path)
            _schema.check_keys(raw_sub, sub_path, ("id", "label", "score"))
            sub_id = _schema.as_str(raw_sub["id"], f"{sub_path}.id")
            sub_scores[sub_id] = _score_num(raw_sub["score"], f"{sub_path}.score")
            subs.append(SubGoal(id=sub_id, label=_schema.as_str(raw_sub["label"], f"{sub_path}.label"), parent=key_id))
        key_goals.append(KeyGoal(id=key_id, label=_schema.as_str(raw_key["label"], f"{path}.label"), sub_goals=tuple(subs)))

    participants = []
    for i, raw_participant in enumerate(_schema.as_array(data["participants"], "$.participants")):
        path = f"$.participants[{i}]"
        raw_participant = _schema.as_object(raw_participant, path)
        _schema.check_keys(raw_participant, path, ("id", "overall", "key_goals", "sub_goals"))
        participants.append(
            ParticipantScore(
                participant_id=_schema.as_str(raw_participant["id"], f"{path}.id"),
                sub_goal_scores={k: _score_num(v, f"{path}.sub_goals.{k}") for k, v in _schema.as_object(raw_participant["sub_goals"], f"{path}.sub_goals").items()},
                key_goal_scores={k: _score_num(v, f"{path}.key_goals.{k}") for k, v in _schema.as_object(raw_participant["key_goals"], f"{path}.key_goals").items()},
                overall=_score_num(raw_participant["overall"], f"{path}.overall"),
            )
        )

    distribution = _schema.as_object(data["distribution"], "$.distribution")
    _schema.check_keys(distribution, "$.distribution", ("n", "n_max", "n_zero", "histogram"))
    histogram = tuple(
        _schema.as_int(count, f"$.distribution.histogram[{i}]")
        for i, count in enumerate(_schema.as_array(distribution["histogram"], "$.distribution.histogram"))
    )

    aggregates = AggregateScores(
        general=_score_num(data["general"], "$.general"),
        key_goal=key_scores,
        sub_goal=sub_scores,
        n_participants=_schema.as_int(distribution["n"], "$.distribution.n"),
        n_overall_max=_schema.as_int(distribution["n_max"], "$.distribution.n_max"),
        n_overall_zero=_schema.as_int(distribution["n_zero"], "$.distribution.n_zero"),
    )

    participation = None
    if data["participation"] is not None:
        raw = _schema.as_object(data["participation"], "$.participation")
        _schema.check_keys(raw, "$.participation", ("respondents", "enrolled", "rate_percent"))
        participation = Participation(
            respondents=_schema.as_int(raw["respondents"], "$.participation.respondents"),
            enrolled=_schema.as_int(raw["enrolled"], "$.participation.enrolled"),
            rate_percent=_score_num(raw["rate_percent"], "$.participation.rate_percent"),
        )

    groups = None
    if data["groups"] is not None:
        groups = {
            key: {
                value: _aggregates_from_obj(_schema.as_object(raw_agg, f"$.groups.{key}.{value}"), f"$.groups.{key}.{value}")
                for value, raw_agg in _schema.as_object(by_value, f"$.groups.{key}").items()
            }
            for key, by_value in _schema.as_object(data["groups"], "$.groups").items()
        }

    return ScoreReport(
        title=_schema.as_str(data["title"], "$.title"),
        version=_schema.as_str(data["version"], "$.version"),
        generated_at=_schema.as_str(data["generated_at"], "$.generated_at"),
        aggregates=aggregates,
        key_goals=tuple(key_goals),
        participants=tuple(participants),
        histogram=histogram,
        participation=participation,
        groups=groups,
        warnings=tuple(_schema.as_str(w, f"$.warnings[{i}]") for i, w in enumerate(_schema.as_array(data["warnings"], "$.warnings"))),
    )


# --- csv --------------------------------------------------------------------


def _render_csv(report: ScoreReport) -> str:
    agg = report.aggregates
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")

    out.write("# report\n")
    writer.writerow(["field", "value"])
    writer.writerow(["title", report.title])
    writer.writerow(["version", report.version])
    writer.writerow(["generated_at", report.generated_at])

    out.write("# general\n")
    writer.writerow(["field", "value"])
    writer.writerow(["general", repr(agg.general)])
    writer.writerow(["n_participants", agg.n_participants])
    writer.writerow(["n_overall_max", agg.n_overall_max])
    writer.writerow(["n_overall_zero", agg.n_overall_zero])

    out.write("# key_goals\n")
    writer.writerow(["id", "label", "score"])
    for key_goal in report.key_goals:
        writer.writerow([key_goal.id, key_goal.label, repr(agg.key_goal[key_goal.id])])

    out.write("# sub_goals\n")
    writer.writerow(["id", "label", "key_goal", "score"])
    for key_goal in report.key_goals:
        for sub in key_goal.sub_goals:
            writer.writerow([sub.id, sub.label, key_goal.id, repr(agg.sub_goal[sub.id])])

    out.write("# distribution\n")
    writer.writerow(["bin_low", "bin_high", "count"])
    for i, count in enumerate(report.histogram):
        writer.writerow([f"{i / 10:.1f}", f"{(i + 1) / 10:.1f}", count])

    if report.participation is not None:
        out.write("# participation\n")
        writer.writerow(["respondents", "enrolled", "rate_percent"])
        writer.writerow([report.participation.respondents, report.participation.enrolled, repr(report.participation.rate_percent)])

    if report.groups:
        out.write("# groups\n")
        writer.writerow(["demographic", "group", "n", "scope", "id", "score"])
        for key, by_value in report.groups.items():
            for value, group_agg in by_value.items():
                writer.writerow([key, value, group_agg.n_participants, "general", "", repr(group_agg.general)])
                for key_goal in report.key_goals:
                    writer.writerow([key, value, group_agg.n_participants, "key_goal", key_goal.id, repr(group_agg.key_goal[key_goal.id])])
                    for sub in key_goal.sub_goals:
                        writer.writerow([key, value, group_agg.n_participants, "sub_goal", sub.id, repr(group_agg.sub_goal[sub.id])])

    out.write("# participants\n")
    key_ids = [key_goal.id for key_goal in report.key_goals]
    sub_ids = [sub.id for key_goal in report.key_goals for sub in key_goal.sub_goals]
    writer.writerow(["participant_id", "overall", *key_ids, *sub_ids])
    for score in report.participants:
        writer.writerow(
            [
                score.participant_id,
                repr(score.overall),
                *(repr(score.key_goal_scores[key_id]) for key_id in key_ids),
                *(repr(score.sub_goal_scores[sub_id]) for sub_id in sub_ids),
            ]
        )

    if report.warnings:
        out.write("# warnings\n")
        writer.writerow(["warning"])
        for warning in report.warnings:
            writer.writerow([warning])

    return out.getvalue()
