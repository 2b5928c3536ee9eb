"""Finite sets and binary relations.

Everything here is an immutable value: elements are labelled atoms, sets are
frozensets of elements, and a :class:`Relation` carries its own domain and
codomain so that universally quantified properties (reflexivity, totality)
have an explicit universe to range over.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple, Union

DEFAULT_MAX_CARDINALITY = 12


class SetAlgebraError(ValueError):
    pass


class CardinalityLimitExceeded(SetAlgebraError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"power set of {size} elements exceeds limit of {limit}")
        self.size = size
        self.limit = limit


class UniverseMismatch(SetAlgebraError):
    def __init__(self, outside: Iterable[Element]):
        self.outside = sorted(outside)
        names = ", ".join(e.label for e in self.outside)
        super().__init__(f"universe elements outside domain/codomain: {names}")


class HeterogeneousRelation(SetAlgebraError):
    def __init__(self):
        super().__init__("operation requires domain == codomain")


class UnknownElement(SetAlgebraError):
    def __init__(self, element: Element):
        super().__init__(f"{element.label!r} is not in the codomain")
        self.element = element


@dataclass(frozen=True, order=True)
class Element:
    label: str

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("element label must be a non-empty string")

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return self.label


FiniteSet = frozenset  # frozenset[Element]; order-insensitive, duplicate-free
ElementLike = Union[Element, str]


def element(x: ElementLike) -> Element:
    return x if isinstance(x, Element) else Element(x)


def fset(*items: ElementLike) -> frozenset[Element]:
    """``fset("a", "b")`` -> ``frozenset({Element("a"), Element("b")})``."""
    return frozenset(element(x) for x in items)


class OrderedPair(NamedTuple):
    first: Element
    second: Element

    def __repr__(self) -> str:
        return f"({self.first}, {self.second})"

    @classmethod
    def of(cls, a: ElementLike, b: ElementLike) -> OrderedPair:
        return cls(element(a), element(b))


@dataclass(frozen=True)
class Relation:
    """A set of ordered pairs drawn from ``domain x codomain``."""

    domain: frozenset[Element]
    codomain: frozenset[Element]
    pairs: frozenset[OrderedPair] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "codomain", frozenset(self.codomain))
        object.__setattr__(self, "pairs", frozenset(OrderedPair(*p) for p in self.pairs))
        for x, y in self.pairs:
            if x not in self.domain or y not in self.codomain:
                raise SetAlgebraError(f"pair ({x}, {y}) lies outside domain x codomain")

    @classmethod
    def over(cls, universe: Iterable[ElementLike], pairs: Iterable[tuple] = ()) -> Relation:
        """Homogeneous relation on ``universe``; accepts plain string labels."""
        u = frozenset(element(x) for x in universe)
        return cls(u, u, frozenset(OrderedPair.of(a, b) for a, b in pairs))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], domain=None, codomain=None) -> Relation:
        """Build from pairs; missing domain/codomain default to the pairs' projections."""
        ps = frozenset(OrderedPair.of(a, b) for a, b in pairs)
        dom = fset(*domain) if domain is not None else frozenset(p.first for p in ps)
        cod = fset(*codomain) if codomain is not None else frozenset(p.second for p in ps)
        return cls(dom, cod, ps)

    @property
    def is_homogeneous(self) -> bool:
        return self.domain == self.codomain

    def image(self, x: Element) -> frozenset[Element]:
        return frozenset(b for a, b in self.pairs if a == x)

    def restrict(self, s: Iterable[Element]) -> Relation:
        s = frozenset(s)
        return Relation(self.domain & s, self.codomain & s,
                        frozenset(p for p in self.pairs if p.first in s and p.second in s))

    def __contains__(self, pair) -> bool:
        return OrderedPair(*pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))


@dataclass(frozen=True)
class PropertyProfile:
    reflexive: bool
    symmetric: bool
    transitive: bool

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return (self.reflexive, self.symmetric, self.transitive)


@dataclass(frozen=True)
class FunctionVerdict:
    is_total: bool
    is_single_valued: bool
    offending_elements: tuple[tuple[Element, frozenset[Element]], ...] = ()

    @property
    def is_function(self) -> bool:
        return self.is_total and self.is_single_valued


def power_set(s: Iterable[ElementLike],
              max_cardinality: int = DEFAULT_MAX_CARDINALITY) -> frozenset[frozenset[Element]]:
    """All ``2**|s|`` subsets of ``s``, including the empty set and ``s`` itself.

    Raises :class:`CardinalityLimitExceeded` instead of enumerating more than
    ``2**max_cardinality`` subsets.
    """
    if max_cardinality < 1:
        raise ValueError("max_cardinality must be positive")
    items = sorted(element(x) for x in set(s))
    if len(items) > max_cardinality:
        raise CardinalityLimitExceeded(len(items), max_cardinality)
    return frozenset(
        frozenset(combo)
        for k in range(len(items) + 1)
        for combo in combinations(items, k)
    )


def cartesian_product(s: Iterable[ElementLike], t: Iterable[ElementLike]) -> frozenset[OrderedPair]:
    s = {element(x) for x in s}
    t = {element(y) for y in t}
    return frozenset(OrderedPair(x, y) for x in s for y in t)


def is_reflexive(r: Relation, universe: Iterable[ElementLike]) -> bool:
    universe = {element(x) for x in universe}
    outside = universe - (r.domain & r.codomain)
    if outside:
        raise UniverseMismatch(outside)
    return all(OrderedPair(x, x) in r.pairs for x in universe)


def is_symmetric(r: Relation) -> bool:
    return all(OrderedPair(y, x) in r.pairs for x, y in r.pairs)


def _successors(pairs: Iterable[OrderedPair]) -> dict[Element, set[Element]]:
    succ: dict[Element, set[Element]] = defaultdict(set)
    for x, y in pairs:
        succ[x].add(y)
    return succ


def is_transitive(r: Relation) -> bool:
    succ = _successors(r.pairs)
    # x -> y -> z requires x -> z, i.e. succ[y] must be a subset of succ[x]
    return all(succ.get(y, set()) <= succ[x] for x, y in r.pairs)


def transitive_closure(r: Relation) -> Relation:
    """Smallest transitive relation containing ``r`` (reachability by DFS from each node)."""
    if not r.is_homogeneous:
        raise HeterogeneousRelation()
    succ = _successors(r.pairs)
    closed = set()
    for start in succ:
        seen: set[Element] = set()
        stack = list(succ[start])
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(succ.get(node, ()))
        closed.update(OrderedPair(start, y) for y in seen)
    return Relation(r.domain, r.codomain, frozenset(closed))


def symmetric_closure(r: Relation) -> Relation:
    if not r.is_homogeneous:
        raise HeterogeneousRelation()
    return Relation(r.domain, r.codomain, r.pairs | {OrderedPair(y, x) for x, y in r.pairs})


def property_profile(r: Relation, universe: Iterable[ElementLike]) -> PropertyProfile:
    return PropertyProfile(is_reflexive(r, universe), is_symmetric(r), is_transitive(r))


def check_function(r: Relation) -> FunctionVerdict:
    """Test whether ``r`` is a total, single-valued mapping from its domain.

    Every domain element whose image does not have exactly one member is
    reported, in label order, together with that image.
    """
    succ = _successors(r.pairs)
    offending = []
    total = single = True
    for x in sorted(r.domain):
        img = frozenset(succ.get(x, ()))
        if not img:
            total = False
        elif len(img) > 1:
            single = False
        if len(img) != 1:
            offending.append((x, img))
    return FunctionVerdict(total, single, tuple(offending))


def inverse_image(r: Relation, y: ElementLike) -> frozenset[Element]:
    y = element(y)
    if y not in r.codomain:
        raise UnknownElement(y)
    return frozenset(a for a, b in r.pairs if b == y)


def union(r1: Relation, r2: Relation) -> Relation:
    return Relation(r1.domain | r2.domain, r1.codomain | r2.codomain, r1.pairs | r2.pairs)
