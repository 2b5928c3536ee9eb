"""Class relationships as relations over a class universe, and design checks.

Inheritance pairs are stored as ``(super, sub)``: the DSL's
``relation Sub inherits Super;`` is flipped when the relation is built.
Associations are symmetrized; aggregation and uses stay as declared
(whole -> part, client -> supplier).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import networkx as nx

from .diagnostics import Severity, SourceSpan
from .model import DesignModel, RelKind, UnknownScope, class_universe, usage_relation
from .sets import (
    Element, OrderedPair, cartesian_product, PropertyProfile, Relation, check_function, is_symmetric, property_profile,
    symmetric_closure, transitive_closure, union,
)


@dataclass(frozen=True)
class DesignRelations:
    universe: frozenset[Element]
    inherits_direct: Relation
    inherits_closure: Relation
    associates: Relation
    aggregates: Relation
    uses: Relation

    def coupling_union(self) -> Relation:
        """Every declared dependency, with direct (not closed) inheritance."""
        r = union(self.inherits_direct, self.associates)
        return union(union(r, self.aggregates), self.uses)


def build_relations(model: DesignModel, scope: Optional[str] = None) -> DesignRelations:
    """Relations among the classes of ``scope``; pairs leaving the scope are dropped."""
    universe = class_universe(model, scope)
    declared: dict[RelKind, list[tuple[str, str]]] = {k: [] for k in RelKind}
    for rel in model.iter_relationships():
        if Element(rel.source) in universe and Element(rel.target) in universe:
            pair = (rel.source, rel.target)
            if rel.kind is RelKind.INHERITS:
                pair = (rel.target, rel.source)
            declared[rel.kind].append(pair)

    inherits = Relation.over(universe, declared[RelKind.INHERITS])
    return DesignRelations(
        universe=universe,
        inherits_direct=inherits,
        inherits_closure=transitive_closure(inherits),
        associates=symmetric_closure(Relation.over(universe, declared[RelKind.ASSOCIATES])),
        aggregates=Relation.over(universe, declared[RelKind.AGGREGATES]),
        uses=Relation.over(universe, declared[RelKind.USES]),
    )


def candidate_pairs(model: DesignModel, package: str) -> frozenset[OrderedPair]:
    """Every ordered class pair a package could relate: ``U x U``."""
    if package not in {pq for pq, _ in model.iter_packages()}:
        raise UnknownScope(package)
    u = class_universe(model, package)
    return cartesian_product(u, u)


@dataclass(frozen=True)
class Table1Row:
    """One row of the relation/property correlation check.

    ``profile`` holds the exact predicate results. ``cells`` is what the
    table shows: a property counts as exhibited only when the relation is
    non-empty, so an absent relationship kind reads No/No/No instead of
    the vacuous Yes that an empty relation earns for symmetry and
    transitivity.
    """

    profile: PropertyProfile
    cells: PropertyProfile
    conforms: bool


def _irreflexive(r: Relation) -> bool:
    return not any(x == y for x, y in r.pairs)


def _asymmetric(r: Relation) -> bool:
    return not any(OrderedPair(y, x) in r.pairs for x, y in r.pairs)


def _row(r: Relation, universe, conforms: bool) -> Table1Row:
    profile = property_profile(r, universe)
    if r.pairs:
        cells = profile
    else:
        cells = PropertyProfile(profile.reflexive and not universe, False, False)
    return Table1Row(profile, cells, conforms)


def check_table1(relations: DesignRelations) -> dict[str, Table1Row]:
    """Profile inheritance, association and aggregation against the expected table.

    Expected: inheritance No/No/Yes, association No/Yes/No, aggregation
    No/No/No. Only the No cells that a sound design cannot violate are
    enforced: inheritance must be irreflexive and asymmetric after closure,
    association irreflexive, aggregation free of self pairs and cycles.
    """
    u = relations.universe
    inh = relations.inherits_closure
    agg_closed = transitive_closure(relations.aggregates)
    return {
        "inheritance": _row(inh, u, _irreflexive(inh) and _asymmetric(inh)),
        "association": _row(
            relations.associates, u,
            _irreflexive(relations.associates) and is_symmetric(relations.associates)),
        "aggregation": _row(relations.aggregates, u, _irreflexive(agg_closed)),
    }


class ViolationKind(str, Enum):
    INHERITANCE_SELF = "InheritanceSelf"
    INHERITANCE_MUTUAL = "InheritanceMutual"
    INHERITANCE_CYCLE = "InheritanceCycle"
    AGGREGATION_SELF = "AggregationSelf"
    AGGREGATION_CYCLE = "AggregationCycle"
    ASSOCIATION_SELF = "AssociationSelf"
    FUNCTION_NOT_TOTAL = "FunctionNotTotal"
    # Never produced from parsed models: uses_data is a set, and a function
    # touching several data members is ordinary. Kept for API completeness.
    FUNCTION_MULTI_VALUED = "FunctionMultiValued"


SEVERITY = {
    ViolationKind.INHERITANCE_SELF: Severity.ERROR,
    ViolationKind.INHERITANCE_MUTUAL: Severity.ERROR,
    ViolationKind.INHERITANCE_CYCLE: Severity.ERROR,
    ViolationKind.AGGREGATION_SELF: Severity.ERROR,
    ViolationKind.AGGREGATION_CYCLE: Severity.ERROR,
    ViolationKind.ASSOCIATION_SELF: Severity.WARNING,
    ViolationKind.FUNCTION_NOT_TOTAL: Severity.WARNING,
    ViolationKind.FUNCTION_MULTI_VALUED: Severity.WARNING,
}


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    subjects: tuple[str, ...]
    span: SourceSpan
    explanation: str

    @property
    def severity(self) -> Severity:
        return SEVERITY[self.kind]

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR


def _strongly_connected(pairs) -> list[list[Element]]:
    """Strongly connected components with more than one node, members sorted."""
    g = nx.DiGraph()
    g.add_edges_from(pairs)
    return sorted(sorted(c) for c in nx.strongly_connected_components(g) if len(c) > 1)


def _structural(direct: Relation, kind_name: str, self_kind, mutual_kind, cycle_kind,
                spans, violations):
    """Self pairs, mutual pairs (if ``mutual_kind``) and longer cycles in ``direct``."""
    names = lambda xs: tuple(e.label for e in xs)
    for x, y in sorted(direct.pairs):
        if x == y:
            violations.append(Violation(
                self_kind, (x.label,), spans[(x, y)],
                f"{x} is related to itself by {kind_name}; the relation must be irreflexive"))
    mutual: set[frozenset] = set()
    if mutual_kind is not None:
        for x, y in sorted(direct.pairs):
            if x < y and OrderedPair(y, x) in direct.pairs:
                mutual.add(frozenset((x, y)))
                span = min(spans[(x, y)], spans[(y, x)])
                violations.append(Violation(
                    mutual_kind, names((x, y)), span,
                    f"{x} and {y} inherit from each other; a superclass cannot derive from its subclass"))
    for comp in _strongly_connected(p for p in direct.pairs if p.first != p.second):
        if frozenset(comp) in mutual:
            continue
        members = set(comp)
        span = min(s for (a, b), s in spans.items() if a in members and b in members)
        violations.append(Violation(
            cycle_kind, names(comp), span,
            f"{kind_name} cycle through {', '.join(e.label for e in comp)}: "
            f"the closure relates each of them to itself"))


def detect_violations(model: DesignModel, relations: DesignRelations) -> list[Violation]:
    """All design violations within ``relations.universe``, in source order."""
    spans: dict[RelKind, dict[tuple, SourceSpan]] = {k: {} for k in RelKind}
    for rel in model.iter_relationships():
        a, b = Element(rel.source), Element(rel.target)
        if rel.kind is RelKind.INHERITS:
            a, b = b, a
        spans[rel.kind].setdefault((a, b), rel.location)

    violations: list[Violation] = []
    _structural(relations.inherits_direct, "inheritance", ViolationKind.INHERITANCE_SELF,
                ViolationKind.INHERITANCE_MUTUAL, ViolationKind.INHERITANCE_CYCLE,
                spans[RelKind.INHERITS], violations)
    _structural(relations.aggregates, "aggregation", ViolationKind.AGGREGATION_SELF,
                None, ViolationKind.AGGREGATION_CYCLE, spans[RelKind.AGGREGATES], violations)
    for x, y in sorted(relations.associates.pairs):
        if x == y:
            violations.append(Violation(
                ViolationKind.ASSOCIATION_SELF, (x.label,), spans[RelKind.ASSOCIATES][(x, y)],
                f"{x} is associated with itself; association links classes of different nature"))

    for qname, cls in model.iter_classes():
        if Element(qname) not in relations.universe:
            continue
        verdict = check_function(usage_relation(cls))
        funcs = {f.name: f for f in cls.function_members}
        for fn, image in verdict.offending_elements:
            if not image:
                violations.append(Violation(
                    ViolationKind.FUNCTION_NOT_TOTAL, (f"{qname}.{fn}",), funcs[fn.label].location,
                    f"function {fn} of {qname} maps to no data member, so the usage "
                    f"mapping has no image for it"))

    violations.sort(key=lambda v: (v.span, v.kind.value, v.subjects))
    return violations
