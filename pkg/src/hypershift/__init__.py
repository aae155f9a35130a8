"""Shifting, sunflower counting and (t,k)-norm tools for small uniform hypergraphs."""

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    ParseError,
    canonical_form,
    complete,
    cover2_extremal,
    degree,
    delete_vertices,
    is_isomorphic,
    link,
    parse,
    relabel,
    serialize,
    star_extremal,
)
from .matching import MatchingResult, contains_subhypergraph, is_Ms_free, matching_number
from .norms import norm_direct, norm_via_identity, stirling2
from .shifting import (
    ShiftPair,
    ShiftTrace,
    is_shifted,
    shift,
    shift_edge,
    shift_injection,
    shift_to_stable,
    verify_injection,
)
from .sunflower import (
    CountBreakdown,
    Sunflower,
    count_breakdown,
    count_sunflowers,
    count_via_degrees,
    enumerate_sunflowers,
)

__version__ = "0.1.0"
