"""Vertex expansions, adjusters and exact-length path construction."""

from .adjuster import (Adjuster, build_simple_adjuster, chain_adjusters, core_path,
                       find_adjuster_avoiding, ladder_base, robust_constants, validate_adjuster)
from .expansions import (VertexExpansion, enlarge_expansions, find_vertex_expansions,
                         radius_within, trim_expansion)
from .oracle import exact_length_path_oracle, path_lengths_naive
from .paths import (effective_slack, exact_length_path, exact_length_route, path_in_window,
                    two_paths_in_window)

__all__ = [
    "Adjuster",
    "VertexExpansion",
    "build_simple_adjuster",
    "chain_adjusters",
    "core_path",
    "effective_slack",
    "enlarge_expansions",
    "exact_length_path",
    "exact_length_path_oracle",
    "exact_length_route",
    "find_adjuster_avoiding",
    "find_vertex_expansions",
    "ladder_base",
    "path_in_window",
    "path_lengths_naive",
    "radius_within",
    "trim_expansion",
    "two_paths_in_window",
    "robust_constants",
    "validate_adjuster",
]
