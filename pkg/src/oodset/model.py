"""The hierarchical design model: modules > packages > classes > members.

Relationship endpoints are written either fully qualified
(``Module.Package.Class``) or as a bare class name that is looked up in the
declaring module. :func:`resolve` rewrites every endpoint to its qualified form
and collects all naming problems in one pass.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterator, Optional

from .diagnostics import Diagnostic, DiagnosticError, SourceSpan
from .sets import Element, Relation, fset

_NOWHERE = SourceSpan(1, 1, 0)


class RelKind(str, Enum):
    INHERITS = "inherits"
    ASSOCIATES = "associates"
    AGGREGATES = "aggregates"
    USES = "uses"


class UnknownScope(LookupError):
    def __init__(self, scope):
        super().__init__(f"unknown scope {scope!r}")
        self.scope = scope


class UnknownClass(LookupError):
    def __init__(self, name):
        super().__init__(f"unknown class {name!r}")
        self.name = name


RESOLUTION_KINDS = {
    "E004": "MalformedName",
    "E005": "DuplicateName",
    "E006": "UnknownClass",
    "E007": "UnknownDataMember",
    "E008": "SelfReferenceOutOfScope",
    "E010": "AmbiguousName",
}


class ResolutionErrors(DiagnosticError):
    @property
    def kinds(self) -> list[str]:
        return [RESOLUTION_KINDS[d.code] for d in self.diagnostics]


@dataclass
class FunctionDecl:
    name: str
    uses_data: list[str] = field(default_factory=list)
    location: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)


@dataclass
class ClassDecl:
    name: str
    data_members: list[str] = field(default_factory=list)
    function_members: list[FunctionDecl] = field(default_factory=list)
    objects: list[str] = field(default_factory=list)
    location: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)


@dataclass
class PackageDecl:
    name: str
    classes: list[ClassDecl] = field(default_factory=list)
    location: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)


@dataclass
class RelationshipDecl:
    kind: RelKind
    source: str
    target: str
    location: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)

    def __post_init__(self):
        self.kind = RelKind(self.kind)


@dataclass
class ModuleDecl:
    name: str
    packages: list[PackageDecl] = field(default_factory=list)
    relationships: list[RelationshipDecl] = field(default_factory=list)
    location: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)


@dataclass
class DesignModel:
    name: str
    modules: list[ModuleDecl] = field(default_factory=list)
    source: Optional[str] = field(default=None, compare=False)
    resolved: bool = field(default=False, compare=False, repr=False)

    def iter_packages(self) -> Iterator[tuple[str, PackageDecl]]:
        for m in self.modules:
            for p in m.packages:
                yield f"{m.name}.{p.name}", p

    def iter_classes(self) -> Iterator[tuple[str, ClassDecl]]:
        for pq, p in self.iter_packages():
            for c in p.classes:
                yield f"{pq}.{c.name}", c

    def iter_relationships(self) -> Iterator[RelationshipDecl]:
        for m in self.modules:
            yield from m.relationships

    def class_index(self) -> dict[str, ClassDecl]:
        return dict(self.iter_classes())

    def lookup_class(self, qname: str) -> ClassDecl:
        try:
            return self.class_index()[qname]
        except KeyError:
            raise UnknownClass(qname) from None


def package_of(qname: str) -> str:
    return qname.rsplit(".", 1)[0]


def _duplicates(names, span, what, out):
    seen = set()
    for n in names:
        if n in seen:
            out.append(Diagnostic("E005", f"duplicate {what} {n!r}", span))
        seen.add(n)


def resolve(model: DesignModel) -> DesignModel:
    """Return a copy of ``model`` with every relationship endpoint fully qualified.

    All problems are collected before raising :class:`ResolutionErrors`.
    Resolving an already resolved model is a no-op.
    """
    errors: list[Diagnostic] = []
    _duplicate_decls(model.modules, "module ", errors)
    for m in model.modules:
        _duplicate_decls(m.packages, f"package {m.name}.", errors)
        for p in m.packages:
            _duplicate_decls(p.classes, f"class {m.name}.{p.name}.", errors)
            for c in p.classes:
                _check_class(c, errors)

    index = model.class_index()
    resolved = copy.deepcopy(model)
    for m in resolved.modules:
        local: dict[str, list[str]] = {}
        for p in m.packages:
            for c in p.classes:
                names = local.setdefault(c.name, [])
                if f"{m.name}.{p.name}.{c.name}" not in names:
                    names.append(f"{m.name}.{p.name}.{c.name}")
        new_rels = []
        for rel in m.relationships:
            src = _resolve_name(rel.source, rel.location, index, local, errors)
            dst = _resolve_name(rel.target, rel.location, index, local, errors)
            if src and dst:
                prefix = m.name + "."
                if not (src.startswith(prefix) or dst.startswith(prefix)):
                    errors.append(Diagnostic(
                        "E008",
                        f"relationship {src} {rel.kind.value} {dst} involves no class of module {m.name}",
                        rel.location))
                rel = replace(rel, source=src, target=dst)
            new_rels.append(rel)
        m.relationships = new_rels
    if errors:
        raise ResolutionErrors(errors)
    resolved.resolved = True
    return resolved


def _duplicate_decls(decls, what, out):
    seen = set()
    for d in decls:
        if d.name in seen:
            out.append(Diagnostic("E005", f"duplicate {what}{d.name}", d.location))
        seen.add(d.name)


def _check_class(c: ClassDecl, errors):
    _duplicates(c.data_members, c.location, f"data member in class {c.name}", errors)
    _duplicates([f.name for f in c.function_members], c.location, f"function in class {c.name}", errors)
    _duplicates(c.objects, c.location, f"object in class {c.name}", errors)
    data = set(c.data_members)
    for f in c.function_members:
        for d in f.uses_data:
            if d not in data:
                errors.append(Diagnostic(
                    "E007", f"function {c.name}.{f.name} uses undeclared data member {d!r}",
                    f.location if f.location != _NOWHERE else c.location))


def _resolve_name(name, span, index, local, errors) -> Optional[str]:
    parts = name.split(".")
    if len(parts) == 3 and all(parts):
        if name not in index:
            errors.append(Diagnostic("E006", f"unknown class {name!r}", span))
            return None
        return name
    if len(parts) != 1 or not name:
        errors.append(Diagnostic("E004", f"malformed qualified name {name!r}", span))
        return None
    candidates = local.get(name, [])
    if not candidates:
        errors.append(Diagnostic("E006", f"unknown class {name!r}", span))
        return None
    if len(candidates) > 1:
        errors.append(Diagnostic(
            "E010", f"class name {name!r} is ambiguous: {', '.join(candidates)}", span))
        return None
    return candidates[0]


def class_universe(model: DesignModel, scope: Optional[str] = None) -> frozenset[Element]:
    """Qualified class names in ``scope``.

    ``scope`` is ``None`` (whole model), a module name ``"M"`` or a package
    name ``"M.P"``.
    """
    return fset(*scope_classes(model, scope))


def scope_classes(model: DesignModel, scope: Optional[str] = None) -> list[str]:
    names = [q for q, _ in model.iter_classes()]
    if scope is None:
        return names
    if scope in {m.name for m in model.modules}:
        return [q for q in names if q.split(".", 1)[0] == scope]
    if scope in {pq for pq, _ in model.iter_packages()}:
        return [q for q in names if package_of(q) == scope]
    raise UnknownScope(scope)


def object_set(model: DesignModel, qname: str) -> frozenset[Element]:
    return fset(*model.lookup_class(qname).objects)


def is_null_class(c: ClassDecl) -> bool:
    return not c.data_members and not c.function_members


def as_pair(c: ClassDecl) -> tuple[frozenset[Element], frozenset[Element]]:
    """The class viewed as its (data set, function set) pair."""
    return fset(*c.data_members), fset(*(f.name for f in c.function_members))


def usage_relation(c: ClassDecl) -> Relation:
    """Functions -> data members they use."""
    data, funcs = as_pair(c)
    pairs = [(f.name, d) for f in c.function_members for d in f.uses_data]
    return Relation.from_pairs(pairs, domain=funcs, codomain=data)


# JSON (de)serialization ---------------------------------------------------

def model_to_dict(model: DesignModel) -> dict:
    return {
        "name": model.name,
        "modules": [
            {
                "name": m.name,
                "packages": [
                    {
                        "name": p.name,
                        "classes": [
                            {
                                "name": c.name,
                                "data": list(c.data_members),
                                "functions": [{"name": f.name, "uses": list(f.uses_data)}
                                              for f in c.function_members],
                                "objects": list(c.objects),
                            }
                            for c in p.classes
                        ],
                    }
                    for p in m.packages
                ],
                "relations": [
                    {"kind": r.kind.value, "source": r.source, "target": r.target,
                     "line": r.location.line, "column": r.location.column}
                    for r in m.relationships
                ],
            }
            for m in model.modules
        ],
    }


def model_from_dict(data: dict, source: Optional[str] = None) -> DesignModel:
    """Inverse of :func:`model_to_dict`; raises DiagnosticError(E009) on bad shape."""
    try:
        modules = []
        for m in data["modules"]:
            packages = []
            for p in m.get("packages", []):
                classes = [
                    ClassDecl(
                        c["name"],
                        list(c.get("data", [])),
                        [FunctionDecl(f["name"], list(f.get("uses", []))) for f in c.get("functions", [])],
                        list(c.get("objects", [])),
                    )
                    for c in p.get("classes", [])
                ]
                packages.append(PackageDecl(p["name"], classes))
            rels = [
                RelationshipDecl(r["kind"], r["source"], r["target"],
                                 SourceSpan(r.get("line", 1), r.get("column", 1), 0))
                for r in m.get("relations", [])
            ]
            modules.append(ModuleDecl(m["name"], packages, rels))
        return DesignModel(data["name"], modules, source=source)
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagnosticError([Diagnostic("E009", f"invalid JSON model: {exc}", _NOWHERE)]) from None
