"""Coupling and cohesion measures over the class relations.

These are tool definitions:

* coupling_count: number of distinct partner classes linked to a class in
  either direction by inheritance (direct only), association, aggregation
  or uses.
* cohesion: over unordered pairs of functions, Q pairs share a data member
  and P pairs share none; ``lcom = max(0, P - Q)`` and
  ``cohesion_ratio = Q / (P + Q)`` (1 when the class has fewer than two
  functions).
* connectivity_index: fraction of the non-empty subsets of a package's
  classes whose induced (undirected) dependency graph is connected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .analysis import DesignRelations
from .model import ClassDecl, DesignModel, UnknownClass, UnknownScope, scope_classes
from .sets import DEFAULT_MAX_CARDINALITY, CardinalityLimitExceeded, Element, power_set


class SamePackage(ValueError):
    pass


@dataclass(frozen=True)
class ClassMetrics:
    qualified_name: str
    coupling_count: int
    cohesion_ratio: Fraction
    lcom: int


@dataclass(frozen=True)
class PackageMetrics:
    qualified_name: str
    connectivity_index: Optional[Fraction]  # None when skipped by the size guard
    internal_pair_count: int
    external_coupling_count: int

    @property
    def skipped(self) -> bool:
        return self.connectivity_index is None


@dataclass
class MetricsReport:
    per_class: list[ClassMetrics]
    per_package: list[PackageMetrics]
    scope: Optional[str] = None
    notes: list[str] = field(default_factory=list)
    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc), compare=False)


def _partners(relations: DesignRelations) -> dict[Element, set[Element]]:
    partners: dict[Element, set[Element]] = {c: set() for c in relations.universe}
    for x, y in relations.coupling_union().pairs:
        if x != y:
            partners[x].add(y)
            partners[y].add(x)
    return partners


def class_coupling(qname: str, relations: DesignRelations) -> int:
    c = Element(qname)
    if c not in relations.universe:
        raise UnknownClass(qname)
    return len(_partners(relations)[c])


def class_cohesion(cls: ClassDecl) -> tuple[Fraction, int]:
    """(cohesion_ratio, lcom) from shared data use between function pairs."""
    shared = unshared = 0
    for f, g in combinations(cls.function_members, 2):
        if set(f.uses_data) & set(g.uses_data):
            shared += 1
        else:
            unshared += 1
    if shared + unshared == 0:
        return Fraction(1), 0
    return Fraction(shared, shared + unshared), max(0, unshared - shared)


def _undirected_within(relations: DesignRelations, members: frozenset[Element]):
    adj: dict[Element, set[Element]] = {c: set() for c in members}
    for x, y in relations.coupling_union().pairs:
        if x != y and x in members and y in members:
            adj[x].add(y)
            adj[y].add(x)
    return adj


def _connected(subset: frozenset[Element], adj) -> bool:
    start = next(iter(subset))
    seen = {start}
    frontier = [start]
    while frontier:
        node = frontier.pop()
        for nxt in adj[node] & subset:
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen) == len(subset)


def package_connectivity(model: DesignModel, package: str, relations: DesignRelations,
                         max_size: int = DEFAULT_MAX_CARDINALITY) -> Optional[Fraction]:
    """Connected induced subsets / non-empty subsets.

    None when the package is empty or has more than ``max_size`` classes.
    """
    members = frozenset(Element(q) for q in _package_classes(model, package))
    try:
        subsets = power_set(members, max_cardinality=max_size)
    except CardinalityLimitExceeded:
        return None
    if not members:
        return None
    adj = _undirected_within(relations, members)
    connected = sum(1 for s in subsets if s and _connected(s, adj))
    return Fraction(connected, len(subsets) - 1)


def _package_classes(model: DesignModel, package: str) -> list[str]:
    if package not in {pq for pq, _ in model.iter_packages()}:
        raise UnknownScope(package)
    return scope_classes(model, package)


def _unordered_pairs(relations: DesignRelations) -> set[frozenset[Element]]:
    return {frozenset(p) for p in relations.coupling_union().pairs if p.first != p.second}


def package_coupling(model: DesignModel, p: str, q: str, relations: DesignRelations) -> int:
    """Distinct unordered class pairs with one end in package ``p`` and the other in ``q``."""
    if p == q:
        raise SamePackage(f"package_coupling needs two different packages, got {p!r} twice")
    in_p = {Element(c) for c in _package_classes(model, p)}
    in_q = {Element(c) for c in _package_classes(model, q)}
    return sum(1 for pair in _unordered_pairs(relations)
               if len(pair & in_p) == 1 and len(pair & in_q) == 1)


def model_metrics(model: DesignModel, relations: DesignRelations,
                  max_size: int = DEFAULT_MAX_CARDINALITY,
                  scope: Optional[str] = None) -> MetricsReport:
    """Per-class and per-package metrics for every class/package in ``scope``.

    ``relations`` should span the whole model so that couplings leaving the
    scope are still counted.
    """
    in_scope = set(scope_classes(model, scope))
    partners = _partners(relations)
    classes = []
    for qname, cls in sorted(model.iter_classes(), key=lambda kv: kv[0]):
        if qname not in in_scope:
            continue
        ratio, lcom = class_cohesion(cls)
        count = len(partners.get(Element(qname), ()))
        classes.append(ClassMetrics(qname, count, ratio, lcom))

    pairs = _unordered_pairs(relations)
    packages, notes = [], []
    for pq, pkg in sorted(model.iter_packages(), key=lambda kv: kv[0]):
        if scope is not None and pq != scope and not pq.startswith(scope + "."):
            continue
        members = {Element(f"{pq}.{c.name}") for c in pkg.classes}
        internal = sum(1 for pair in pairs if pair <= members)
        external = sum(1 for pair in pairs if len(pair & members) == 1)
        index = package_connectivity(model, pq, relations, max_size)
        if index is None and members:
            notes.append(f"connectivity skipped for {pq}: {len(members)} classes exceeds "
                         f"--max-size {max_size}")
        packages.append(PackageMetrics(pq, index, internal, external))
    return MetricsReport(classes, packages, scope, notes)
