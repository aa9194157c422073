"""Response CSV ingestion: header binding, missing-data policy, normalization.

Answers are bound to questions by the question id in the header, never by
column position, because survey exports reorder columns freely. Blank cells
are the only representation of a missing answer; anything else must be an
integer inside the scale range.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ResponseError
from .questionnaire import Questionnaire, Scale

# A raw answer cell is either a level code or missing (None) until the
# policy resolves it; retained participants carry ints only.
RawAnswer = int | None


class MissingPolicy(enum.Enum):
    """How unanswered questions are resolved after parsing."""

    EXCLUDE_PARTICIPANT = "exclude_participant"
    TREAT_AS_ZERO = "treat_as_zero"


@dataclass(frozen=True)
class ParticipantRecord:
    """One respondent after policy application: a complete answer map."""

    participant_id: str
    demographics: Mapping[str, str]
    answers: Mapping[str, int]


@dataclass(frozen=True)
class ResponseSet:
    questionnaire_version: str
    participants: tuple[ParticipantRecord, ...]
    policy_applied: MissingPolicy
    demographics: tuple[str, ...]
    warnings: tuple[str, ...]


def normalize(code: int, scale: Scale) -> float:
    """Map a level code 0..L-1 linearly onto [0, 1]."""
    if not 0 <= code <= scale.max_code:
        raise ValueError(f"level code {code} outside scale range 0..{scale.max_code}")
    return code / scale.max_code


def parse_responses(
    data: bytes | str,
    questionnaire: Questionnaire,
    demographics: Sequence[str] = (),
    policy: MissingPolicy = MissingPolicy.EXCLUDE_PARTICIPANT,
) -> ResponseSet:
    """Parse a response CSV into a policy-resolved ResponseSet.

    The header must contain exactly: participant_id first, then the declared
    demographic columns and one column per question id, in any order.
    Out-of-range or non-integer cells are errors with their row and column
    reported; blanks become missing answers and are resolved by the policy,
    each resolution producing one warning. Row order is preserved.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ResponseError(f"response file is not valid UTF-8: {exc}") from exc
    else:
        text = data

    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ResponseError("empty response file: no header row")

    rows = list(csv.reader(lines))
    header = rows[0]
    question_ids = questionnaire.question_ids()
    _check_header(header, question_ids, demographics)

    column_of = {name: i for i, name in enumerate(header)}
    max_code = questionnaire.scale.max_code

    participants: list[ParticipantRecord] = []
    warnings: list[str] = []
    seen_ids: set[str] = set()
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue  # ignore fully blank lines
        if len(row) != len(header):
            raise ResponseError(
                f"expected {len(header)} cells, found {len(row)}", row=line_no
            )
        participant_id = row[column_of["participant_id"]].strip()
        if not participant_id:
            raise ResponseError("empty participant_id", row=line_no, column="participant_id")
        if participant_id in seen_ids:
            raise ResponseError(
                f"duplicate participant_id {participant_id!r}", row=line_no, column="participant_id"
            )
        seen_ids.add(participant_id)

        demographic_values = {name: row[column_of[name]].strip() for name in demographics}

        answers: dict[str, RawAnswer] = {}
        missing: list[str] = []
        for question_id in question_ids:
            cell = row[column_of[question_id]].strip()
            if cell == "":
                answers[question_id] = None
                missing.append(question_id)
                continue
            try:
                code = int(cell)
            except ValueError:
                raise ResponseError(
                    f"answer {cell!r} is not an integer", row=line_no, column=question_id
                ) from None
            if not 0 <= code <= max_code:
                raise ResponseError(
                    f"answer {code} out of range 0..{max_code}", row=line_no, column=question_id
                )
            answers[question_id] = code

        if missing:
            if policy is MissingPolicy.EXCLUDE_PARTICIPANT:
                warnings.append(
                    f"participant {participant_id!r} excluded: missing answers for {', '.join(missing)}"
                )
                continue
            warnings.append(
                f"participant {participant_id!r}: missing answers treated as 0 for {', '.join(missing)}"
            )
            for question_id in missing:
                answers[question_id] = 0

        participants.append(
            ParticipantRecord(
                participant_id=participant_id,
                demographics=demographic_values,
                answers={qid: code for qid, code in answers.items()},  # all ints by now
            )
        )

    return ResponseSet(
        questionnaire_version=questionnaire.structure_version,
        participants=tuple(participants),
        policy_applied=policy,
        demographics=tuple(demographics),
        warnings=tuple(warnings),
    )


def _check_header(header: list[str], question_ids: list[str], demographics: Sequence[str]) -> None:
    if not header or header[0] != "participant_id":
        raise ResponseError(
            f"first header column must be 'participant_id', found {header[0]!r}" if header else "empty header",
            row=1,
        )
    duplicates = sorted({name for name in header if header.count(name) > 1})
    if duplicates:
        raise ResponseError(f"duplicate header column(s): {', '.join(duplicates)}", row=1)
    expected = {"participant_id", *demographics, *question_ids}
    found = set(header)
    missing = sorted(expected - found)
    unexpected = sorted(found - expected)
    if missing or unexpected:
        parts = []
        if missing:
            parts.append(f"missing column(s): {', '.join(missing)}")
        if unexpected:
            parts.append(f"undeclared column(s): {', '.join(unexpected)}")
        raise ResponseError(f"header mismatch: {'; '.join(parts)}", row=1)
