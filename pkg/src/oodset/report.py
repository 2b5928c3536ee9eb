"""Text, JSON and DOT renderings of analysis results.

JSON is the stable machine interface: keys are emitted in a fixed order and
every array is sorted, so identical input gives byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .analysis import DesignRelations, Table1Row, Violation
from .metrics import MetricsReport
from .model import DesignModel, RelKind, model_to_dict
from .sets import Relation

TABLE1_ROWS = ("inheritance", "association", "aggregation")


@dataclass
class Report:
    """Everything one CLI command produced; unused sections stay None."""

    command: str
    model: DesignModel
    scope: Optional[str] = None
    violations: list[Violation] = field(default_factory=list)
    table1: Optional[dict[str, Table1Row]] = None
    metrics: Optional[MetricsReport] = None
    relations: Optional[dict[str, list[tuple[str, str]]]] = None
    universe: Optional[list[str]] = None
    powerset: Optional[list[list[str]]] = None

    @property
    def error_count(self) -> int:
        return sum(1 for v in self.violations if v.is_error)

    @property
    def warning_count(self) -> int:
        return len(self.violations) - self.error_count


def relation_pairs(relations: DesignRelations, closure: bool = False,
                   kind: Optional[str] = None) -> dict[str, list[tuple[str, str]]]:
    """Sorted label pairs per relationship kind (inheritance as (super, sub))."""
    by_kind = {
        RelKind.INHERITS.value: relations.inherits_closure if closure else relations.inherits_direct,
        RelKind.ASSOCIATES.value: relations.associates,
        RelKind.AGGREGATES.value: relations.aggregates,
        RelKind.USES.value: relations.uses,
    }
    return {k: _labels(r) for k, r in by_kind.items() if kind is None or k == kind}


def _labels(r: Relation) -> list[tuple[str, str]]:
    return sorted((x.label, y.label) for x, y in r.pairs)


def _ratio(x: Optional[Fraction]):
    return "skipped" if x is None else float(x)


def _violation_json(v: Violation) -> dict:
    return {
        "kind": v.kind.value,
        "severity": v.severity.value,
        "subjects": list(v.subjects),
        "line": v.span.line,
        "column": v.span.column,
        "message": v.explanation,
    }


def to_json_dict(report: Report) -> dict:
    out: dict = {
        "tool": "oodset",
        "version": __version__,
        "command": report.command,
        "model_name": report.model.name,
        "scope": report.scope,
        "summary": {"errors": report.error_count, "warnings": report.warning_count},
        "violations": [
            _violation_json(v) for v in sorted(
                report.violations,
                key=lambda v: (v.subjects, v.span.line, v.span.column, v.kind.value))
        ],
    }
    if report.table1 is not None:
        out["table1"] = {
            name: {
                "reflexive": row.cells.reflexive,
                "symmetric": row.cells.symmetric,
                "transitive": row.cells.transitive,
                "conforms": row.conforms,
            }
            for name, row in report.table1.items()
        }
    if report.metrics is not None:
        m = report.metrics
        out["metrics"] = {
            "classes": [
                {"name": c.qualified_name, "coupling": c.coupling_count,
                 "cohesion_ratio": float(c.cohesion_ratio), "lcom": c.lcom}
                for c in m.per_class
            ],
            "packages": [
                {"name": p.qualified_name, "connectivity_index": _ratio(p.connectivity_index),
                 "internal_pairs": p.internal_pair_count,
                 "external_coupling": p.external_coupling_count}
                for p in m.per_package
            ],
            "notes": list(m.notes),
        }
    if report.relations is not None:
        out["relations"] = {"universe": list(report.universe or [])}
        out["relations"].update({k: [list(p) for p in v] for k, v in report.relations.items()})
    if report.powerset is not None:
        out["powerset"] = {"count": len(report.powerset), "subsets": report.powerset}
    out["model"] = model_to_dict(report.model)
    return out


def emit_json(report: Report) -> str:
    return json.dumps(to_json_dict(report), indent=2, ensure_ascii=False) + "\n"


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(relations: DesignRelations, kind: Optional[str] = None) -> str:
    """Graphviz digraph of the classes in ``relations.universe``.

    Inheritance is drawn sub -> super with a hollow triangle, association as
    one undirected edge per class pair, aggregation with a hollow diamond on
    the whole, uses as a dashed client -> supplier arrow.
    """
    nodes = sorted(e.label for e in relations.universe)
    if not nodes:
        return "digraph design {\n}\n"
    lines = ["digraph design {"]
    if kind in (None, RelKind.INHERITS.value):
        lines.append("  // inheritance edges run sub -> super; pairs are stored internally as (super, sub)")
    lines.append("  node [shape=box];")
    lines.extend(f"  {_q(n)};" for n in nodes)
    pairs = relation_pairs(relations, kind=kind)
    for sup, sub in pairs.get(RelKind.INHERITS.value, []):
        lines.append(f"  {_q(sub)} -> {_q(sup)} [style=solid, arrowhead=empty];")
    for a, b in pairs.get(RelKind.ASSOCIATES.value, []):
        if a <= b:
            lines.append(f"  {_q(a)} -> {_q(b)} [dir=none];")
    for whole, part in pairs.get(RelKind.AGGREGATES.value, []):
        lines.append(f"  {_q(part)} -> {_q(whole)} [arrowhead=odiamond];")
    for client, supplier in pairs.get(RelKind.USES.value, []):
        lines.append(f"  {_q(client)} -> {_q(supplier)} [style=dashed, arrowhead=vee];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _yes_no(b: bool) -> str:
    return "Yes" if b else "No"


def emit_text(report: Report, path: Optional[str] = None) -> str:
    where = path or report.model.source or report.model.name
    lines = [f"oodset {report.command}: model {report.model.name}"
             f" (scope: {report.scope or 'whole model'})"]
    if report.command == "check" or report.violations:
        for v in report.violations:
            lines.append(f"{where}:{v.span}: {v.severity.value.lower()} {v.kind.value}"
                         f" [{', '.join(v.subjects)}]: {v.explanation}")
    if report.table1 is not None:
        lines.append("")
        lines.append(f"{'relation':<13}{'reflexive':<11}{'symmetric':<11}{'transitive':<12}conforms")
        for name in TABLE1_ROWS:
            row = report.table1[name]
            c = row.cells
            lines.append(f"{name:<13}{_yes_no(c.reflexive):<11}{_yes_no(c.symmetric):<11}"
                         f"{_yes_no(c.transitive):<12}{'yes' if row.conforms else 'NO'}")
    if report.metrics is not None:
        m = report.metrics
        lines.append("")
        lines.append(f"{'class':<32}{'coupling':>9}{'cohesion':>10}{'lcom':>6}")
        for c in m.per_class:
            lines.append(f"{c.qualified_name:<32}{c.coupling_count:>9}"
                         f"{str(c.cohesion_ratio):>10}{c.lcom:>6}")
        lines.append("")
        lines.append(f"{'package':<32}{'connectivity':>13}{'internal':>10}{'external':>10}")
        for p in m.per_package:
            idx = "skipped" if p.connectivity_index is None else str(p.connectivity_index)
            lines.append(f"{p.qualified_name:<32}{idx:>13}{p.internal_pair_count:>10}"
                         f"{p.external_coupling_count:>10}")
        lines.extend(f"note: {n}" for n in m.notes)
    if report.relations is not None:
        lines.append("")
        lines.append(f"universe ({len(report.universe or [])}): {', '.join(report.universe or [])}")
        for k, pairs in report.relations.items():
            label = f"{k} (super, sub)" if k == RelKind.INHERITS.value else k
            body = ", ".join(f"({a}, {b})" for a, b in pairs) or "(none)"
            lines.append(f"{label}: {body}")
    if report.powerset is not None:
        lines.append("")
        lines.append(f"{len(report.powerset)} subsets")
        lines.extend("{" + ", ".join(s) + "}" for s in report.powerset)
    lines.append("")
    lines.append(f"{report.error_count} errors, {report.warning_count} warnings")
    return "\n".join(lines) + "\n"
