"""Trimmed trees over finite alphabets, their star-closures, fusion and avoidance."""

from .avoidance import (
    AvoidanceResponder, CountablePointSet, PointSetResponder, level_avoid, point_set_responder,
    sigma_avoid, star_closure_avoid, translate_responder,
)
from .config import DEFAULTS, Settings
from .errors import (
    GuardExceeded, NotExactError, NotSerializableError, PreconditionError, PromiseViolation,
    SymbolError, TrimTreeError,
)
from .fusion import TreeSequence, fuse, fusion_trace, hadamard_lower_bound, hadamard_pipeline
from .natsets import EVENS, ODDS, OMEGA, NatSet, TailFrom, up
from .partitions import (
    IncompatibleFamily, build_avoiding_family, check_family, common_refinement,
    complement_check, refines, selector_demo,
)
from .points import BINARY, AlphabetSpec, Point, eventually_agrees
from .star import (
    InclusionCert, StarSet, disjoint_family, iso_phi, iso_psi, separative_witness, splice, star,
    star_intersect, star_subset,
)
from .trees import (
    FULL, TrimmedTree, delta, levels, restrict, subset_n, tree, tree_from_json, tree_subset,
)

__all__ = [
    "AvoidanceResponder", "CountablePointSet", "PointSetResponder", "level_avoid",
    "point_set_responder", "sigma_avoid", "star_closure_avoid", "translate_responder", "DEFAULTS",
    "Settings", "GuardExceeded", "NotExactError", "NotSerializableError", "PreconditionError",
    "PromiseViolation", "SymbolError", "TrimTreeError", "TreeSequence", "fuse", "fusion_trace",
    "hadamard_lower_bound", "hadamard_pipeline", "EVENS", "ODDS", "OMEGA", "NatSet", "TailFrom",
    "up", "IncompatibleFamily", "build_avoiding_family", "check_family", "common_refinement",
    "complement_check", "refines", "selector_demo", "BINARY", "AlphabetSpec", "Point",
    "eventually_agrees", "InclusionCert", "StarSet", "disjoint_family", "iso_phi", "iso_psi",
    "separative_witness", "splice", "star", "star_intersect", "star_subset", "FULL", "TrimmedTree",
    "delta", "levels", "restrict", "subset_n", "tree", "tree_from_json", "tree_subset",
]
