"""Persistent homology of symmetric chain complexes under finite group actions."""

from .complex_core import (
    FieldSpec,
    FilteredComplex,
    SimplicialComplex,
    VertexFunction,
    barycentric_subdivide,
    build_filtered_complex,
    sublevel_complex,
)
from .diagram_metrics import MatchingResult, aggregate_bottleneck, bottleneck_distance, verify_stability
from .group_action import GroupAction, GroupSample, check_conjugation_closure, enumerate_group, validate_action
from .persistence import PersistenceDiagram, compute_persistence, pbnf_rank
from .pseudo_distance import classical_dHomeo_witness, dG_upper_bound
from .symmetric_chains import NonFreeActionError, OrbitChainComplex, build_orbit_complex

__version__ = "0.1.0"

__all__ = [
    "FieldSpec",
    "FilteredComplex",
    "GroupAction",
    "GroupSample",
    "MatchingResult",
    "NonFreeActionError",
    "OrbitChainComplex",
    "PersistenceDiagram",
    "SimplicialComplex",
    "VertexFunction",
    "aggregate_bottleneck",
    "barycentric_subdivide",
    "bottleneck_distance",
    "build_filtered_complex",
    "build_orbit_complex",
    "check_conjugation_closure",
    "classical_dHomeo_witness",
    "compute_persistence",
    "dG_upper_bound",
    "enumerate_group",
    "pbnf_rank",
    "sublevel_complex",
    "validate_action",
    "verify_stability",
]
