"""Score computation on goal structures.

Sub goals combine into their key goal like a parallel system: one fully
reached sub goal is enough, so the key-goal score is one minus the product
of the sub-goal shortfalls. Key goals combine like a series system: all
must be reached, so the participant score is the plain product of key-goal
scores. Both rules keep every score inside [0, 1], are monotone in every
answer, and are exact at the extremes (all-top answers give exactly 1.0, a
fully failed key goal gives exactly 0.0).

Aggregates over participants are arithmetic means, summed in participant
order so repeated runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InvalidQuestionnaireError, NoDataError
from .goal_structure import GoalStructure, SubGoal
from .ingest import ParticipantRecord, ResponseSet, normalize
from .questionnaire import Questionnaire, validate_questionnaire


@dataclass(frozen=True)
class ParticipantScore:
    """One respondent's scores at the three per-participant levels."""

    participant_id: str
    sub_goal_scores: Mapping[str, float]
    key_goal_scores: Mapping[str, float]
    overall: float


@dataclass(frozen=True)
class AggregateScores:
    """Cross-participant means plus the exact 0/1 extreme counts."""

    general: float
    key_goal: Mapping[str, float]
    sub_goal: Mapping[str, float]
    n_participants: int
    n_overall_max: int
    n_overall_zero: int


def sub_goal_score(record: ParticipantRecord, sub_goal: SubGoal, questionnaire: Questionnaire) -> float:
    """Mean normalized answer over the questions mapped to one sub goal."""
    question_ids = [q.id for q in questionnaire.questions if q.sub_goal == sub_goal.id]
    if not question_ids:
        raise ValueError(f"sub goal {sub_goal.id!r} has no questions")
    total = 0.0
    for question_id in question_ids:
        if question_id not in record.answers:
            raise ValueError(f"participant {record.participant_id!r} has no answer for {question_id!r}")
        total += normalize(record.answers[question_id], questionnaire.scale)
    return total / len(question_ids)


def key_goal_score(sub_scores: Sequence[float]) -> float:
    """Parallel rule: 1 - prod(1 - q) over the child sub-goal scores."""
    if not sub_scores:
        raise ValueError("key goal needs at least one sub-goal score")
    shortfall = 1.0
    for score in sub_scores:
        shortfall *= 1.0 - score
    return 1.0 - shortfall


def participant_score(key_scores: Sequence[float]) -> float:
    """Series rule: product of the key-goal scores."""
    if not key_scores:
        raise ValueError("participant needs at least one key-goal score")
    overall = 1.0
    for score in key_scores:
        overall *= score
    return overall


def score_all(
    responses: ResponseSet,
    questionnaire: Questionnaire,
    structure: GoalStructure,
) -> tuple[list[ParticipantScore], AggregateScores]:
    """Score every retained participant and aggregate across them.

    Participant order is preserved and all reductions run in that order,
    so identical inputs produce bit-identical outputs.
    """
    violations = validate_questionnaire(questionnaire, structure)
    if violations:
        raise InvalidQuestionnaireError(violations)
    if not responses.participants:
        raise NoDataError("no_data: zero retained participants")

    # Precompute the per-code normalization and the question ids feeding
    # each sub goal (questionnaire order), shared by all participants.
    unit = [normalize(code, questionnaire.scale) for code in range(questionnaire.scale.size)]
    questions_of: dict[str, list[str]] = {sub.id: [] for sub in structure.sub_goals()}
    for question in questionnaire.questions:
        questions_of[question.sub_goal].append(question.id)

    scores: list[ParticipantScore] = []
    for record in responses.participants:
        answers = record.answers
        sub_scores: dict[str, float] = {}
        key_scores: dict[str, float] = {}
        overall = 1.0
        for key_goal in structure.key_goals:
            shortfall = 1.0
            for sub in key_goal.sub_goals:
                question_ids = questions_of[sub.id]
                total = 0.0
                for question_id in question_ids:
                    total += unit[answers[question_id]]
                value = total / len(question_ids)
                sub_scores[sub.id] = value
                shortfall *= 1.0 - value
            key_value = 1.0 - shortfall
            key_scores[key_goal.id] = key_value
            overall *= key_value
        scores.append(
            ParticipantScore(
                participant_id=record.participant_id,
                sub_goal_scores=sub_scores,
                key_goal_scores=key_scores,
                overall=overall,
            )
        )

    return scores, aggregate_scores(scores, structure)


def aggregate_scores(scores: Sequence[ParticipantScore], structure: GoalStructure) -> AggregateScores:
    """Arithmetic means over a score list, in list order.

    Extreme counts use exact comparison: the scoring rules produce exactly
    1.0 for all-top answers and exactly 0.0 for a fully failed key goal, so
    no tolerance is involved.
    """
    if not scores:
        raise NoDataError("no_data: zero retained participants")
    n = len(scores)

    general = 0.0
    n_max = 0
    n_zero = 0
    for score in scores:
        general += score.overall
        if score.overall == 1.0:
            n_max += 1
        if score.overall == 0.0:
            n_zero += 1

    key_goal: dict[str, float] = {}
    sub_goal: dict[str, float] = {}
    for kg in structure.key_goals:
        total = 0.0
        for score in scores:
            total += score.key_goal_scores[kg.id]
        key_goal[kg.id] = total / n
        for sub in kg.sub_goals:
            total = 0.0
            for score in scores:
                total += score.sub_goal_scores[sub.id]
            sub_goal[sub.id] = total / n

    return AggregateScores(
        general=general / n,
        key_goal=key_goal,
        sub_goal=sub_goal,
        n_participants=n,
        n_overall_max=n_max,
        n_overall_zero=n_zero,
    )
