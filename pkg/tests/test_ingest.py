from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from sure_eval.errors import ResponseError
from sure_eval.ingest import MissingPolicy, normalize, parse_responses
from sure_eval.questionnaire import Scale, ScaleLevel, default_scale


def csv_for(questionnaire, rows, demographics=(), header=None):
    if header is None:
        header = ["participant_id", *demographics, *questionnaire.question_ids()]
    lines = [",".join(header)]
    lines += [",".join(str(cell) for cell in row) for row in rows]
    return ("\n".join(lines) + "\n").encode()


def full_row(pid, questionnaire, value, demographics=()):
    return [pid, *demographics, *([value] * len(questionnaire.questions))]


def test_normalize_endpoints_and_midpoint():
    scale = default_scale()
    assert normalize(0, scale) == 0.0
    assert normalize(2, scale) == 0.5
    assert normalize(3, scale) == 0.75
    assert normalize(4, scale) == 1.0


def test_normalize_rejects_out_of_range():
    with pytest.raises(ValueError):
        normalize(5, default_scale())
    with pytest.raises(ValueError):
        normalize(-1, default_scale())


@given(st.integers(2, 12))
def test_normalize_strictly_increasing(levels):
    scale = Scale(levels=tuple(ScaleLevel(code, f"L{code}") for code in range(levels)))
    values = [normalize(code, scale) for code in range(levels)]
    assert values[0] == 0.0
    assert values[-1] == 1.0
    assert all(a < b for a, b in zip(values, values[1:]))


def test_parse_happy_path(questionnaire):
    data = csv_for(questionnaire, [full_row(f"P{i}", questionnaire, i) for i in range(3)])
    rs = parse_responses(data, questionnaire)
    assert [p.participant_id for p in rs.participants] == ["P0", "P1", "P2"]
    assert rs.warnings == ()
    assert rs.participants[2].answers["Q_A11"] == 2


def test_parse_accepts_reordered_columns(questionnaire):
    header = ["participant_id", *reversed(questionnaire.question_ids())]
    row = ["P1", *[(i % 5) for i in range(20)]]
    rs = parse_responses(csv_for(questionnaire, [row], header=header), questionnaire)
    last_question = questionnaire.question_ids()[-1]
    assert rs.participants[0].answers[last_question] == 0  # first cell after id


def test_parse_accepts_crlf(questionnaire):
    data = csv_for(questionnaire, [full_row("P1", questionnaire, 4)]).replace(b"\n", b"\r\n")
    rs = parse_responses(data, questionnaire)
    assert rs.participants[0].answers["Q_A45"] == 4


def test_exclude_policy_drops_and_warns(questionnaire):
    row = full_row("P1", questionnaire, 3)
    row[3] = ""  # blank out one answer
    data = csv_for(questionnaire, [row, full_row("P2", questionnaire, 2)])
    rs = parse_responses(data, questionnaire, policy=MissingPolicy.EXCLUDE_PARTICIPANT)
    assert [p.participant_id for p in rs.participants] == ["P2"]
    assert len(rs.warnings) == 1
    assert "P1" in rs.warnings[0] and "excluded" in rs.warnings[0]


def test_zero_policy_fills_and_warns(questionnaire):
    row = full_row("P1", questionnaire, 3)
    row[3] = ""
    blanked_question = questionnaire.question_ids()[2]
    rs = parse_responses(csv_for(questionnaire, [row]), questionnaire, policy=MissingPolicy.TREAT_AS_ZERO)
    assert rs.participants[0].answers[blanked_question] == 0
    assert len(rs.warnings) == 1
    assert blanked_question in rs.warnings[0]


def test_retained_plus_warned_covers_rows(questionnaire):
    rows = []
    for i in range(6):
        row = full_row(f"P{i}", questionnaire, 1)
        if i % 2:
            row[5] = ""
        rows.append(row)
    rs = parse_responses(csv_for(questionnaire, rows), questionnaire)
    assert len(rs.participants) + len(rs.warnings) == 6


def test_out_of_range_cell_is_error(questionnaire):
    row = full_row("P1", questionnaire, 2)
    row[1] = 7
    with pytest.raises(ResponseError) as err:
        parse_responses(csv_for(questionnaire, [row]), questionnaire)
    assert "out of range" in str(err.value)
    assert err.value.row == 2
    assert err.value.column == "Q_A11"


def test_non_integer_cell_is_error(questionnaire):
    row = full_row("P1", questionnaire, 2)
    row[4] = "often"
    with pytest.raises(ResponseError, match="not an integer"):
        parse_responses(csv_for(questionnaire, [row]), questionnaire)


def test_duplicate_participant_id_is_error(questionnaire):
    data = csv_for(questionnaire, [full_row("P1", questionnaire, 1), full_row("P1", questionnaire, 2)])
    with pytest.raises(ResponseError, match="duplicate participant_id 'P1'"):
        parse_responses(data, questionnaire)


def test_missing_column_is_error(questionnaire):
    header = ["participant_id", *questionnaire.question_ids()[:-1]]
    row = ["P1", *([1] * 19)]
    with pytest.raises(ResponseError) as err:
        parse_responses(csv_for(questionnaire, [row], header=header), questionnaire)
    assert "missing column" in str(err.value)
    assert questionnaire.question_ids()[-1] in str(err.value)


def test_undeclared_column_is_error(questionnaire):
    header = ["participant_id", "age", *questionnaire.question_ids()]
    row = ["P1", "23", *([1] * 20)]
    with pytest.raises(ResponseError, match="undeclared column"):
        parse_responses(csv_for(questionnaire, [row], header=header), questionnaire)
    # declaring it makes the same bytes parse
    rs = parse_responses(csv_for(questionnaire, [row], header=header), questionnaire, demographics=["age"])
    assert rs.participants[0].demographics == {"age": "23"}


def test_empty_file_is_error(questionnaire):
    with pytest.raises(ResponseError, match="empty response file"):
        parse_responses(b"", questionnaire)


def test_header_only_gives_zero_participants(questionnaire):
    rs = parse_responses(csv_for(questionnaire, []), questionnaire)
    assert rs.participants == ()


def test_parse_is_deterministic(questionnaire, responses_bytes):
    first = parse_responses(responses_bytes, questionnaire, demographics=["gender"])
    second = parse_responses(responses_bytes, questionnaire, demographics=["gender"])
    assert first == second
    assert first.warnings == second.warnings
