"""Set-theoretic analysis of object-oriented designs."""

__version__ = "0.1.0"

from .sets import (  # noqa: E402
    CardinalityLimitExceeded, Element, FunctionVerdict, HeterogeneousRelation, OrderedPair,
    PropertyProfile, Relation, UniverseMismatch, UnknownElement, cartesian_product,
    check_function, fset, inverse_image, is_reflexive, is_symmetric, is_transitive,
    power_set, property_profile, symmetric_closure, transitive_closure, union,
)
from .model import (  # noqa: E402
    ClassDecl, DesignModel, FunctionDecl, ModuleDecl, PackageDecl, RelKind, RelationshipDecl,
    ResolutionErrors, UnknownClass, UnknownScope, as_pair, class_universe, is_null_class,
    object_set, resolve, usage_relation,
)
from .dsl import parse, serialize, tokenize  # noqa: E402
from .analysis import (  # noqa: E402
    DesignRelations, Violation, ViolationKind, build_relations, candidate_pairs, check_table1, detect_violations,
)
from .metrics import (  # noqa: E402
    class_cohesion, class_coupling, model_metrics, package_connectivity, package_coupling,
)
