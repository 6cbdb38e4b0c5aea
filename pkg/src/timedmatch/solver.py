"""End-to-end solver for maximum weighted 0-1 timed matching.

Pipeline: temporal graph -> edge-overlap graph -> tree decomposition ->
nice decomposition -> MWIS dynamic program -> matching.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .mwis import SizeLimitError, best_subset_bruteforce, treedp_with_stats
from .overlap import TimedMatching, build_overlap_graph, matching_from_independent_set
from .temporal import TemporalGraph, edges_overlap, underlying_graph
from .treedec import (
    BudgetExhausted,
    TreeDecomposition,
    decompose_exact,
    decompose_heuristic,
    lift_decomposition,
    make_nice,
)

__all__ = [
    "TimedMatching",
    "SolveReport",
    "SOLVE_STRATEGIES",
    "ORACLE_MAX_EDGES",
    "solve",
    "max_cardinality_solve",
    "matching_bruteforce",
]

SOLVE_STRATEGIES = ("min-fill", "min-degree", "exact")
ORACLE_MAX_EDGES = 20
DEFAULT_EXACT_BUDGET = 200_000


@dataclass
class SolveReport:
    matching: TimedMatching
    strategy: str
    n_overlap_vertices: int
    n_overlap_edges: int
    width: int
    td_nodes: int
    nice_nodes: int
    max_table_size: int
    mwis_weight: float
    # microseconds per phase, monotonic clock
    timings: dict[str, float] = field(default_factory=dict)
    lifted: bool = False
    underlying_width: int | None = None
    underlying_max_degree: int | None = None
    direct_width: int | None = None
    # "optimal", "heuristic-fallback" or None when not using the exact strategy
    exact_status: str | None = None
    decomposition: TreeDecomposition | None = field(default=None, repr=False)

    @property
    def lift_bound(self) -> int | None:
        if self.underlying_width is None:
            return None
        return (self.underlying_width + 1) * self.underlying_max_degree - 1

    def as_dict(self) -> dict:
        return {
            "weight": self.matching.total_weight,
            "edge_ids": list(self.matching.edge_ids),
            "strategy": self.strategy,
            "overlap_vertices": self.n_overlap_vertices,
            "overlap_edges": self.n_overlap_edges,
            "width": self.width,
            "td_nodes": self.td_nodes,
            "nice_nodes": self.nice_nodes,
            "max_table_size": self.max_table_size,
            "timings_us": dict(self.timings),
            "lifted": self.lifted,
            "underlying_width": self.underlying_width,
            "underlying_max_degree": self.underlying_max_degree,
            "direct_width": self.direct_width,
            "lift_bound": self.lift_bound,
            "exact_status": self.exact_status,
        }


def _decompose(graph, strategy, budget):
    if strategy != "exact":
        return decompose_heuristic(graph, strategy), None
    upper = decompose_heuristic(graph, "min-fill")
    try:
        td = decompose_exact(graph, upper.width, budget)
    except BudgetExhausted:
        return upper, "heuristic-fallback"
    return td, "optimal"


def solve(g: TemporalGraph, strategy: str = "min-fill", lift: bool = False,
          exact_budget: int | None = DEFAULT_EXACT_BUDGET) -> SolveReport:
    """Maximum weighted 0-1 timed matching of ``g``.

    ``strategy`` picks how the decomposition is built.  With ``lift=True``
    the underlying graph is decomposed instead and its decomposition is
    lifted onto the overlap graph; the report then also carries the width of
    a direct decomposition and the bound the lifted width must respect.
    """
    if strategy not in SOLVE_STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {SOLVE_STRATEGIES}")
    timings = {}
    clock = time.perf_counter_ns

    t0 = clock()
    og = build_overlap_graph(g)
    timings["overlap"] = (clock() - t0) / 1000

    t0 = clock()
    extra = {}
    if lift:
        gu = underlying_graph(g)
        td_u, status = _decompose(gu, strategy, exact_budget)
        td = lift_decomposition(td_u, g, og)
        extra = dict(lifted=True, underlying_width=td_u.width,
                     underlying_max_degree=gu.max_degree())
    else:
        td, status = _decompose(og.graph, strategy, exact_budget)
    timings["decompose"] = (clock() - t0) / 1000
    if lift:
        extra["direct_width"] = decompose_heuristic(og.graph, "min-fill").width
        bound = (extra["underlying_width"] + 1) * extra["underlying_max_degree"] - 1
        if td.width > bound:
            raise RuntimeError(f"lifted width {td.width} exceeds bound {bound}")

    t0 = clock()
    ntd = make_nice(td)
    timings["nice"] = (clock() - t0) / 1000

    t0 = clock()
    result, largest = treedp_with_stats(og.graph, ntd, validate=False)
    timings["dp"] = (clock() - t0) / 1000

    t0 = clock()
    matching = matching_from_independent_set(og, result.solution)
    timings["extract"] = (clock() - t0) / 1000

    return SolveReport(
        matching=matching,
        strategy=strategy,
        n_overlap_vertices=og.graph.n_vertices,
        n_overlap_edges=len(og.graph.edges),
        width=td.width,
        td_nodes=len(td.bags),
        nice_nodes=len(ntd.bags),
        max_table_size=largest,
        mwis_weight=result.weight,
        timings=timings,
        exact_status=status,
        decomposition=td,
        **extra,
    )


def max_cardinality_solve(g: TemporalGraph, **options) -> SolveReport:
    return solve(g.unit_weights(), **options)


def matching_bruteforce(g: TemporalGraph) -> TimedMatching:
    """Exhaustive maximum over all edge subsets; lexicographic tie-break.

    Conflicts are found by testing every pair of edges directly, without the
    overlap graph.
    """
    m = len(g.edges)
    if m > ORACLE_MAX_EDGES:
        raise SizeLimitError(f"brute force limited to {ORACLE_MAX_EDGES} edges, got {m}")
    conflicts = [(i, j) for i in range(m) for j in range(i + 1, m)
                 if edges_overlap(g.edges[i], g.edges[j])]
    _, mask = best_subset_bruteforce(m, conflicts, [e.weight for e in g.edges])
    return TimedMatching.of(g, (i for i in range(m) if mask >> i & 1))
