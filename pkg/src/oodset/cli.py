"""``oodset`` command-line entry point.

Exit codes: 0 success without Error violations, 1 Error violations found,
2 input could not be read, parsed or resolved, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .analysis import build_relations, check_table1, detect_violations
from .diagnostics import Diagnostic, DiagnosticError, SourceSpan
from .dsl import parse
from .metrics import model_metrics
from .model import DesignModel, RelKind, UnknownScope, model_from_dict, resolve, scope_classes
from .report import Report, emit_dot, emit_json, emit_text, relation_pairs
from .sets import CardinalityLimitExceeded, power_set

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT = 2
EXIT_USAGE = 3

COMMANDS = ("check", "metrics", "relations", "powerset", "graph")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oodset", description="Set-theoretic checks and metrics for OO designs.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", help="design file (.ood or .json)")
    parser.add_argument("--scope", help="module (M) or package (M.P) to analyse")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--kind", choices=[k.value for k in RelKind],
                        help="restrict relations/graph output to one relationship kind")
    parser.add_argument("--closure", action="store_true",
                        help="show the transitive closure of inheritance")
    parser.add_argument("--max-size", type=int, default=12,
                        help="largest class set to enumerate subsets of (default 12)")
    parser.add_argument("--dot", metavar="PATH", help="write the DOT graph to PATH")
    parser.add_argument("-o", "--output", metavar="PATH", help="write the report to PATH")
    return parser


def load_model(path: Path) -> DesignModel:
    """Read, parse and resolve ``path``; raises DiagnosticError or OSError."""
    raw = path.read_bytes()
    text = raw.decode("utf-8")
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagnosticError([Diagnostic(
                "E009", f"invalid JSON: {exc.msg}", SourceSpan(exc.lineno, exc.colno, 0))]) from None
        if isinstance(data, dict) and "model" in data:
            data = data["model"]
        model = model_from_dict(data, source=str(path))
    else:
        model = parse(text, source=str(path))
    return resolve(model)


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.max_size < 1:
            raise UsageError("oodset: error: --max-size must be a positive integer")
        if args.command == "powerset" and not args.scope:
            raise UsageError("oodset: error: powerset needs --scope M.P naming a package")
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE

    path = Path(args.input)
    try:
        model = load_model(path)
    except OSError as exc:
        print(f"oodset: error: cannot read {path}: {exc.strerror or exc}", file=stderr)
        return EXIT_INPUT
    except UnicodeDecodeError as exc:
        print(f"oodset: error: {path} is not valid UTF-8: {exc.reason}", file=stderr)
        return EXIT_INPUT
    except DiagnosticError as exc:
        for d in exc.diagnostics:
            print(d.render(str(path)), file=stderr)
        return EXIT_INPUT

    try:
        report, dot = _dispatch(args, model)
    except UnknownScope as exc:
        print(f"oodset: error: {exc}", file=stderr)
        return EXIT_USAGE
    except CardinalityLimitExceeded as exc:
        print(f"oodset: error: {exc}; raise --max-size to enumerate it", file=stderr)
        return EXIT_USAGE

    if dot is not None:
        # graph: DOT goes to --dot, else -o, else stdout; with --dot the report still prints
        dot_target = args.dot or args.output
        _write(dot, dot_target, stdout)
        if not args.dot:
            return EXIT_VIOLATIONS if report.error_count else EXIT_OK
    text = emit_json(report) if args.format == "json" else emit_text(report, str(path))
    _write(text, args.output if args.output != args.dot else None, stdout)
    return EXIT_VIOLATIONS if report.error_count else EXIT_OK


def _write(text: str, target: Optional[str], stdout):
    if target:
        Path(target).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _dispatch(args, model: DesignModel):
    scope = args.scope
    scoped = build_relations(model, scope)
    report = Report(args.command, model, scope, violations=detect_violations(model, scoped))
    dot = None
    if args.command == "check":
        report.table1 = check_table1(scoped)
    elif args.command == "metrics":
        report.metrics = model_metrics(model, build_relations(model), args.max_size, scope)
    elif args.command == "relations":
        report.universe = sorted(e.label for e in scoped.universe)
        report.relations = relation_pairs(scoped, closure=args.closure, kind=args.kind)
    elif args.command == "powerset":
        if scope not in {pq for pq, _ in model.iter_packages()}:
            raise UnknownScope(scope)
        subsets = power_set(scope_classes(model, scope), max_cardinality=args.max_size)
        report.powerset = sorted((sorted(e.label for e in s) for s in subsets),
                                 key=lambda s: (len(s), s))
    elif args.command == "graph":
        dot = emit_dot(scoped, kind=args.kind)
    return report, dot


def main(argv: Optional[list[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
