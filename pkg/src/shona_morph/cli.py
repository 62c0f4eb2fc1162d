"""Command-line front door: analyze, eval, and validate subcommands.

Data goes to stdout (or --output), diagnostics to stderr. Exit codes:
0 success, 2 missing files or bad invocation, 3 schema/alignment errors,
4 internal errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

from .errors import AlignmentError, AnalyzerError, FormatError, ValidationError
from .evaluation import compute_metrics, load_gold, render_report
from .lexicon import EMPTY_LEXICON, load_lexicon, validate_entry
from .pipeline import annotate, annotations_to_json, annotations_to_jsonl
from .rules import default_tables, load_tables

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SCHEMA = 3
EXIT_INTERNAL = 4

TABLES_ENV_VAR = "SHONA_MORPH_TABLES"


class _UsageError(Exception):
    pass

_TABLE_COLUMNS = (
    ("Token", "token"),
    ("Lemma", "lemma"),
    ("POS", "pos"),
    ("Category Detail", "category_detail"),
    ("Morph Features", "morph_features"),
    ("Gloss", "gloss"),
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shona-morph",
        description="Rule-based morphological analyzer for Shona",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_lexicon: bool = True):
        if with_lexicon:
            p.add_argument("--lexicon", help="path to the lexicon JSON file")
            p.add_argument(
                "--no-lexicon",
                action="store_true",
                help="run with an empty lexicon (rules only)",
            )
        p.add_argument(
            "--tables",
            help=f"path to the rule-table JSON file (default: built-in; ${TABLES_ENV_VAR} overrides)",
        )
        p.add_argument("--input", help="input text file (default: stdin)")
        p.add_argument("--output", help="output file (default: stdout)")

    p_analyze = sub.add_parser("analyze", help="annotate text")
    add_common(p_analyze)
    p_analyze.add_argument(
        "--format",
        choices=("json-array", "jsonl", "table"),
        default="json-array",
        help="output format",
    )

    p_eval = sub.add_parser("eval", help="annotate text and score it against gold")
    add_common(p_eval)
    p_eval.add_argument("--gold", required=True, help="gold annotation file (JSON or JSONL)")

    p_validate = sub.add_parser("validate", help="check a lexicon file record by record")
    p_validate.add_argument("--lexicon", required=True, help="path to the lexicon JSON file")
    p_validate.add_argument("--output", help="output file (default: stdout)")
    return parser


def _read_input(args) -> str:
    if args.input:
        return Path(args.input).read_text(encoding="utf-8")
    return sys.stdin.read()


def _write_output(args, payload: str) -> None:
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def _load_lexicon_arg(args):
    if getattr(args, "no_lexicon", False):
        return EMPTY_LEXICON
    if not args.lexicon:
        raise _UsageError("either --lexicon or --no-lexicon is required")
    return load_lexicon(args.lexicon)


def _load_tables_arg(args):
    path = args.tables or os.environ.get(TABLES_ENV_VAR)
    if path:
        return load_tables(path)
    return default_tables()


def _render_table(annotations) -> str:
    rows = [
        tuple(
            (ann.morph_features.serialize() if attr == "morph_features" else getattr(ann, attr))
            or "-"
            for _, attr in _TABLE_COLUMNS
        )
        for ann in annotations
    ]
    headers = tuple(header for header, _ in _TABLE_COLUMNS)
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))).rstrip(),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _cmd_analyze(args) -> int:
    lexicon = _load_lexicon_arg(args)
    tables = _load_tables_arg(args)
    annotations = annotate(_read_input(args), lexicon, tables)
    if args.format == "jsonl":
        payload = annotations_to_jsonl(annotations)
    elif args.format == "table":
        payload = _render_table(annotations)
    else:
        payload = annotations_to_json(annotations)
    _write_output(args, payload)
    return EXIT_OK


def _cmd_eval(args) -> int:
    lexicon = _load_lexicon_arg(args)
    tables = _load_tables_arg(args)
    gold = load_gold(args.gold)
    system = annotate(_read_input(args), lexicon, tables)
    report = compute_metrics(system, gold)
    _write_output(args, render_report(report))
    return EXIT_OK


def _cmd_validate(args) -> int:
    text = Path(args.lexicon).read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        print(f"error: malformed JSON at byte offset {offset}: {exc.msg}", file=sys.stderr)
        return EXIT_SCHEMA

    if isinstance(document, dict):
        records = [
            {**record, "token": record.get("token", key)}
            for key, record in document.items()
        ]
    elif isinstance(document, list):
        records = document
    else:
        print("error: lexicon must be a JSON array or object", file=sys.stderr)
        return EXIT_SCHEMA

    lines = []
    problem_count = 0
    seen: dict[str, str] = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for record in records:
            if not isinstance(record, dict):
                lines.append("record is not an object")
                problem_count += 1
                continue
            result = validate_entry(record)
            if isinstance(result, list):
                problem_count += len(result)
                lines.extend(str(violation) for violation in result)
                continue
            key = result.surface.casefold()
            if key in seen:
                problem_count += 1
                lines.append(
                    f"{result.surface}: token: duplicates {seen[key]!r} after case folding"
                )
            else:
                seen[key] = result.surface
    for warning in caught:
        lines.append(f"warning: {warning.message}")
    lines.append(f"{len(records)} entries, {problem_count} violations")
    _write_output(args, "\n".join(lines) + "\n")
    return EXIT_OK if problem_count == 0 else EXIT_SCHEMA


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"analyze": _cmd_analyze, "eval": _cmd_eval, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, ValidationError, AlignmentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except SystemExit:
        raise
    except AnalyzerError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # invariant breach: keep diagnostics on stderr
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
