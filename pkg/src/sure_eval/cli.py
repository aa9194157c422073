"""Command-line front end.

Exit codes: 0 success, 1 validation failures reported, 2 input or parse
error, 3 internal error. Reports go to stdout (or --out); every diagnostic
goes to stderr so output can be piped. Files are written atomically
(temp file then rename) so an error never leaves a partial report behind.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .errors import (
    InvalidQuestionnaireError,
    InvalidStructureError,
    NoDataError,
    NotConfirmedError,
    ReportError,
    ResponseError,
    SchemaError,
    SureError,
)
from .goal_structure import parse_structure
from .ingest import MissingPolicy, parse_responses
from .questionnaire import (
    generate_template,
    parse_questionnaire,
    serialize_questionnaire,
    validate_questionnaire,
)
from .report import build_report, render_report
from .scoring import score_all
from .simulate import simulate_responses

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_POLICIES = {
    "exclude": MissingPolicy.EXCLUDE_PARTICIPANT,
    "zero": MissingPolicy.TREAT_AS_ZERO,
}


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _read(path: str, what: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise SchemaError(f"cannot read {what} {path!r}: {exc}") from exc


def _write_atomic(path: str, data: bytes) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=str(target.parent) or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _print_violations(violations) -> None:
    for violation in violations:
        print(str(violation), file=sys.stderr)


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        parse_structure(_read(args.structure, "goal structure"))
    except InvalidStructureError as exc:
        _print_violations(exc.violations)
        return EXIT_VIOLATIONS
    except SchemaError as exc:
        _fail(str(exc))
        return EXIT_INPUT
    return EXIT_OK


def cmd_template(args: argparse.Namespace) -> int:
    try:
        structure = parse_structure(_read(args.structure, "goal structure"))
    except (SchemaError, InvalidStructureError) as exc:
        _fail(str(exc))
        return EXIT_INPUT
    try:
        questionnaire = generate_template(structure)
    except NotConfirmedError as exc:
        _fail(str(exc))
        return EXIT_VIOLATIONS
    _write_atomic(args.out, serialize_questionnaire(questionnaire))
    print(f"{len(questionnaire.questions)} questions")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    try:
        structure = parse_structure(_read(args.structure, "goal structure"))
        questionnaire = parse_questionnaire(_read(args.questionnaire, "questionnaire"))
    except (SchemaError, InvalidStructureError) as exc:
        _fail(str(exc))
        return EXIT_INPUT
    violations = validate_questionnaire(questionnaire, structure)
    if violations:
        _print_violations(violations)
        return EXIT_VIOLATIONS
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    demographics = [name for name in (args.demographics or "").split(",") if name]
    group_by = [name for name in (args.group_by or "").split(",") if name]
    try:
        structure = parse_structure(_read(args.structure, "goal structure"))
        questionnaire = parse_questionnaire(_read(args.questionnaire, "questionnaire"))
        violations = validate_questionnaire(questionnaire, structure)
        if violations:
            _print_violations(violations)
            return EXIT_INPUT
        responses = parse_responses(
            _read(args.responses, "response CSV"),
            questionnaire,
            demographics=demographics,
            policy=_POLICIES[args.policy],
        )
    except (SchemaError, InvalidStructureError, ResponseError) as exc:
        _fail(str(exc))
        return EXIT_INPUT

    for warning in responses.warnings:
        print(f"warning: {warning}", file=sys.stderr)

    try:
        scores, aggregates = score_all(responses, questionnaire, structure)
        report = build_report(
            scores,
            aggregates,
            structure,
            responses,
            participation=(len(responses.participants), args.enrolled) if args.enrolled is not None else None,
            group_by=group_by or None,
            generated_at="" if args.reproducible else None,
        )
    except NoDataError as exc:
        _fail(str(exc))
        return EXIT_VIOLATIONS
    except (ReportError, InvalidQuestionnaireError) as exc:
        _fail(str(exc))
        return EXIT_INPUT

    data = render_report(report, args.format)
    if args.out:
        _write_atomic(args.out, data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.participants < 1:
        _fail("--participants must be at least 1")
        return EXIT_INPUT
    try:
        structure = parse_structure(_read(args.structure, "goal structure"))
        questionnaire = parse_questionnaire(_read(args.questionnaire, "questionnaire"))
        violations = validate_questionnaire(questionnaire, structure)
        if violations:
            _print_violations(violations)
            return EXIT_INPUT
    except (SchemaError, InvalidStructureError) as exc:
        _fail(str(exc))
        return EXIT_INPUT
    _write_atomic(args.out, simulate_responses(questionnaire, args.participants, args.seed))
    print(f"wrote {args.participants} participants to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sure-eval",
        description="Structure-oriented evaluation: validate goal structures, build questionnaires, score responses, render reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a goal-structure file")
    p.add_argument("structure")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("template", help="generate a questionnaire template from a confirmed structure")
    p.add_argument("structure")
    p.add_argument("out")
    p.set_defaults(func=cmd_template)

    p = sub.add_parser("check", help="validate a questionnaire against its goal structure")
    p.add_argument("structure")
    p.add_argument("questionnaire")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("score", help="score a response CSV and render the report")
    p.add_argument("structure")
    p.add_argument("questionnaire")
    p.add_argument("responses")
    p.add_argument("--policy", choices=sorted(_POLICIES), default="exclude", help="missing-answer policy (default: exclude)")
    p.add_argument("--demographics", default="", help="comma-separated demographic column names")
    p.add_argument("--enrolled", type=int, default=None, help="enrolled head count for the participation rate")
    p.add_argument("--group-by", default="", help="comma-separated demographic keys to break down by")
    p.add_argument("--format", choices=("markdown", "json", "csv"), default="markdown")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--reproducible", action="store_true", help="omit the timestamp so identical inputs yield identical bytes")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("simulate", help="write a deterministic synthetic response CSV")
    p.add_argument("structure")
    p.add_argument("questionnaire")
    p.add_argument("out")
    p.add_argument("--participants", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SureError as exc:
        _fail(str(exc))
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - last-resort guard for exit code 3
        _fail(f"internal error: {exc!r}")
        return EXIT_INTERNAL


def entrypoint() -> None:
    sys.exit(main())
