"""Planarity of 4/6-valent star graphs, decided two independent ways.

A star graph is a multigraph (loops and parallel edges welcome) whose
vertices each carry an unoriented cyclic order of their half-edges.  For
graphs all of whose vertices have degree 4 or 6 the package decides whether
the graph embeds in the plane so that every cyclic order is realized, by two
methods that share no search code: absence of a pair of closed walks
crossing exactly once, and direct search over rotation systems.  Both
produce machine-checkable certificates, and expansion, contraction and
walk-lifting machinery connects the 6-valent case to the 4-valent one.
"""

from __future__ import annotations

from .core import (
    CyclicOrder,
    DegreeGuardError,
    ResourceCeilingError,
    RotationSystem,
    StarGraph,
    StarPlanError,
    alternates,
    degrees_ok_46,
    normalize_rotation,
    opposite_half_edge,
    validate,
)
from .cycles import (
    DEFAULT_WALK_CEILING,
    ClosedWalk,
    LiftError,
    ObstructCertificate,
    Pass,
    TransitionSystem,
    classify_triangle_case,
    classify_triangle_vertex,
    closed_walk_violations,
    complete_transition_system,
    crossings,
    cycles_of_transition_system,
    enumerate_closed_walks,
    find_obstruct,
    lift_obstruct,
    lift_transition_system,
    self_crossings,
    transition_system_violations,
    verify_obstruct,
)
from .expansion import (
    ContractError,
    ExpansionMap,
    TriangleExpansion,
    align_triangle_orientations,
    contract_planar_rotation,
    corner_orientation,
    expand,
)
from .export import to_dot
from .fileio import (
    CertificateError,
    ParseError,
    certificate_for_crosscheck,
    certificate_for_embedding,
    certificate_for_expansion,
    certificate_for_obstruct,
    certificate_for_transition_system,
    dump_certificate,
    embedding_from_doc,
    expansion_from_doc,
    graph_sha256,
    load_certificate,
    obstruct_from_doc,
    parse_graph,
    serialize_graph,
    transition_system_from_doc,
    verify_certificate,
)
from .generate import gen_random
from .planarity import (
    CrosscheckVerdict,
    EmbeddingWitness,
    FaceTrace,
    connected_components,
    crosscheck,
    find_planar_star_embedding,
    genus_of_rotation,
    is_star_planar_by_criterion,
    trace_faces,
    verify_embedding,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "StarPlanError",
    "ResourceCeilingError",
    "DegreeGuardError",
    "ParseError",
    "CertificateError",
    "LiftError",
    "ContractError",
    "CyclicOrder",
    "StarGraph",
    "RotationSystem",
    "Pass",
    "ClosedWalk",
    "TransitionSystem",
    "ObstructCertificate",
    "FaceTrace",
    "EmbeddingWitness",
    "CrosscheckVerdict",
    "ExpansionMap",
    "TriangleExpansion",
    "alternates",
    "normalize_rotation",
    "opposite_half_edge",
    "validate",
    "degrees_ok_46",
    "DEFAULT_WALK_CEILING",
    "enumerate_closed_walks",
    "crossings",
    "self_crossings",
    "find_obstruct",
    "verify_obstruct",
    "closed_walk_violations",
    "transition_system_violations",
    "cycles_of_transition_system",
    "complete_transition_system",
    "classify_triangle_vertex",
    "classify_triangle_case",
    "lift_transition_system",
    "lift_obstruct",
    "trace_faces",
    "genus_of_rotation",
    "connected_components",
    "find_planar_star_embedding",
    "verify_embedding",
    "is_star_planar_by_criterion",
    "crosscheck",
    "expand",
    "corner_orientation",
    "align_triangle_orientations",
    "contract_planar_rotation",
    "parse_graph",
    "serialize_graph",
    "graph_sha256",
    "certificate_for_obstruct",
    "certificate_for_embedding",
    "certificate_for_expansion",
    "certificate_for_transition_system",
    "certificate_for_crosscheck",
    "dump_certificate",
    "load_certificate",
    "verify_certificate",
    "obstruct_from_doc",
    "embedding_from_doc",
    "expansion_from_doc",
    "transition_system_from_doc",
    "gen_random",
    "to_dot",
]
