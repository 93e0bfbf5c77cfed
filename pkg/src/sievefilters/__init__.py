"""Filters of sieves on finite categories: topologies, ultrafilters, convergence and closure."""
from .convergence import (
    closure,
    cluster_base,
    converges,
    cover_neighborhoods,
    is_cluster_point,
    is_g_neighborhood,
)
from .filterlib import (
    Filter,
    FilterBase,
    FilterSubbase,
    extend_to_ultrafilter,
    filter_from_base,
    filter_from_subbase,
    is_filter,
    is_ultrafilter,
    meet_filters,
)
from .fincat import FiniteCategory, Point, from_poset, points, terminal_object, validate_category
from .frames import Frame, canonical_topology, frame_from_poset
from .sieve import Sieve, enumerate_sieves, generate_sieve, maximal_sieve, pullback_sieve
from .topology import GrothendieckTopology, topology_to_filter, validate_topology

__version__ = "0.1.0"

__all__ = [
    "Filter",
    "FilterBase",
    "FilterSubbase",
    "FiniteCategory",
    "Frame",
    "GrothendieckTopology",
    "Point",
    "Sieve",
    "canonical_topology",
    "closure",
    "cluster_base",
    "converges",
    "cover_neighborhoods",
    "enumerate_sieves",
    "extend_to_ultrafilter",
    "filter_from_base",
    "filter_from_subbase",
    "frame_from_poset",
    "from_poset",
    "generate_sieve",
    "is_cluster_point",
    "is_filter",
    "is_g_neighborhood",
    "is_ultrafilter",
    "maximal_sieve",
    "meet_filters",
    "points",
    "pullback_sieve",
    "terminal_object",
    "topology_to_filter",
    "validate_category",
    "validate_topology",
]
