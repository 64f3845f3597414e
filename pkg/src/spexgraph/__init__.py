"""Exhaustive and heuristic verification of spectral extremal results on small graphs."""

from __future__ import annotations

from .constructions import BuiltGraph, Family, FamilySpec, build, build_graph, family_catalog
from .detectors import (
    CycleCensus,
    Witness,
    WitnessKind,
    cycle_census,
    has_k_edge_disjoint_cycles,
    has_k_edge_disjoint_triangles,
    has_repeated_cycle_length,
    matching_number,
    max_fan,
    triangle_packing,
)
from .enumeration import count_graphs, enumerate_graphs, ingest, ingest_path
from .errors import SpexGraphError
from .graph import (
    Graph,
    canonical_form,
    coalesce,
    from_graph6,
    is_isomorphic,
    rewire,
    subdivide_edge,
    to_graph6,
)
from .predicates import Predicate, parse_predicate
from .search import HillClimbConfig, SearchMode, SearchResult, spex, turan_number
from .spectral import (
    Partition,
    Polynomial,
    QuotientMatrix,
    SpectrumResult,
    char_poly,
    check_edge_triangle_bound,
    chvatal_hanson,
    max_real_root,
    quotient,
    rayleigh_quotient,
    refine_equitable,
    spectral_radius,
    triangle_count,
)
from .verify import Status, TheoremId, TheoremSpec, VerificationReport, verify

__version__ = "0.1.0"

__all__ = [
    "BuiltGraph",
    "Family",
    "FamilySpec",
    "build",
    "build_graph",
    "family_catalog",
    "CycleCensus",
    "Witness",
    "WitnessKind",
    "cycle_census",
    "has_k_edge_disjoint_cycles",
    "has_k_edge_disjoint_triangles",
    "has_repeated_cycle_length",
    "matching_number",
    "max_fan",
    "triangle_packing",
    "count_graphs",
    "enumerate_graphs",
    "ingest",
    "ingest_path",
    "SpexGraphError",
    "Graph",
    "canonical_form",
    "coalesce",
    "from_graph6",
    "is_isomorphic",
    "rewire",
    "subdivide_edge",
    "to_graph6",
    "Predicate",
    "parse_predicate",
    "HillClimbConfig",
    "SearchMode",
    "SearchResult",
    "spex",
    "turan_number",
    "Partition",
    "Polynomial",
    "QuotientMatrix",
    "SpectrumResult",
    "char_poly",
    "check_edge_triangle_bound",
    "chvatal_hanson",
    "max_real_root",
    "quotient",
    "rayleigh_quotient",
    "refine_equitable",
    "spectral_radius",
    "triangle_count",
    "Status",
    "TheoremId",
    "TheoremSpec",
    "VerificationReport",
    "verify",
]
