"""Maximum weighted 0-1 timed matching on temporal graphs.

The solver maps a temporal graph to its edge-overlap graph, decomposes that
graph, and runs a maximum weight independent set dynamic program over a nice
tree decomposition.  Brute-force oracles and the Independent Set reduction
are included for verification.
"""

from .generator import GenSpec, generate
from .mwis import MWISResult, mwis_bruteforce, mwis_treedp
from .overlap import OverlapGraph, TimedMatching, build_overlap_graph, matching_from_independent_set
from .reduction import ReducedInstance, map_is_to_matching, map_matching_to_is, reduce_is_to_matching
from .solver import SolveReport, matching_bruteforce, max_cardinality_solve, solve
from .temporal import (
    Interval,
    StaticGraph,
    TemporalEdge,
    TemporalGraph,
    edges_overlap,
    parse_temporal_graph,
    serialize_temporal_graph,
    underlying_graph,
    verify_matching,
)
from .treedec import (
    NiceTreeDecomposition,
    TreeDecomposition,
    decompose_exact,
    decompose_heuristic,
    lift_decomposition,
    make_nice,
    validate_decomposition,
)

__version__ = "0.1.0"
