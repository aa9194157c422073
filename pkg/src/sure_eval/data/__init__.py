"""Bundled sample files: a complete online-course evaluation.

The sample has four key goals with 5, 6, 4 and 5 sub goals (20 in total),
a generated 20-question questionnaire on the default five-level scale, and
a small response CSV with one demographic column (gender).
"""

from __future__ import annotations

from importlib import resources


def _load(name: str) -> bytes:
    return resources.files(__package__).joinpath(name).read_bytes()


def online_course_structure() -> bytes:
    return _load("online_course.structure.json")


def online_course_questionnaire() -> bytes:
    return _load("online_course.questionnaire.json")


def online_course_responses() -> bytes:
    return _load("online_course.responses.csv")
