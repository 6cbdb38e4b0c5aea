"""Edge-overlap graph of a temporal graph.

Every temporal edge becomes a weighted vertex; two such vertices are adjacent
when their edges share an endpoint and coexist at some timestep.  Independent
sets of this graph are exactly the 0-1 timed matchings of the temporal graph,
with equal weight.

Overlap-vertex ids are the temporal edge ids, so the edge/vertex maps are
identities; they are kept explicit for callers that want to be agnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .temporal import (
    FormatSyntaxError,
    StaticGraph,
    TemporalGraph,
    edges_overlap,
    _content_lines,
)

__all__ = [
    "OverlapGraph",
    "TimedMatching",
    "build_overlap_graph",
    "matching_from_independent_set",
    "independent_set_from_matching",
    "serialize_static_graph",
    "parse_static_graph",
]


@dataclass(frozen=True)
class TimedMatching:
    edge_ids: tuple[int, ...]
    total_weight: float

    @classmethod
    def of(cls, g: TemporalGraph, ids: Iterable[int]) -> "TimedMatching":
        ids = tuple(sorted(set(ids)))
        return cls(ids, math.fsum(g.edges[i].weight for i in ids))

    def __len__(self) -> int:
        return len(self.edge_ids)


@dataclass(frozen=True)
class OverlapGraph:
    graph: StaticGraph
    edge_of_vertex: tuple[int, ...]
    vertex_of_edge: tuple[int, ...]


def build_overlap_graph(g: TemporalGraph) -> OverlapGraph:
    # only pairs of edges meeting at a vertex can overlap
    pairs = set()
    for inc in g.incident:
        for a in range(len(inc)):
            ea = g.edges[inc[a]]
            for b in range(a + 1, len(inc)):
                if edges_overlap(ea, g.edges[inc[b]]):
                    pairs.add((inc[a], inc[b]))
    m = len(g.edges)
    ident = tuple(range(m))
    graph = StaticGraph(m, frozenset(pairs), tuple(e.weight for e in g.edges))
    return OverlapGraph(graph, ident, ident)


def matching_from_independent_set(og: OverlapGraph, is_set: Iterable[int]) -> TimedMatching:
    """Map an independent set of the overlap graph to a timed matching."""
    vs = set(is_set)
    for v in vs:
        if not 0 <= v < og.graph.n_vertices:
            raise ValueError(f"{v} is not an overlap vertex")
    if not og.graph.is_independent(vs):
        raise ValueError("vertex set is not independent in the overlap graph")
    ids = tuple(sorted(og.edge_of_vertex[v] for v in vs))
    return TimedMatching(ids, og.graph.total_weight(vs))


def independent_set_from_matching(og: OverlapGraph, edge_ids: Iterable[int]) -> frozenset[int]:
    return frozenset(og.vertex_of_edge[e] for e in edge_ids)


def serialize_static_graph(g: StaticGraph) -> str:
    """``<n> <m>``, then ``v <id> <weight>`` lines, then ``e <a> <b>`` lines."""
    out = [f"{g.n_vertices} {len(g.edges)}"]
    out += [f"v {v} {g.weight(v)!r}" for v in range(g.n_vertices)]
    out += [f"e {a} {b}" for a, b in g.sorted_edges()]
    return "\n".join(out) + "\n"


def parse_static_graph(text: str | bytes) -> StaticGraph:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
        n, m = (int(x) for x in header.split())
    except StopIteration:
        raise FormatSyntaxError("missing header '<n> <m>'", 1, 1) from None
    except ValueError:
        raise FormatSyntaxError("header must be '<n> <m>'", lineno, 1) from None
    weights = [1.0] * n
    edges = []
    for lineno, raw in lines:
        toks = raw.split()
        try:
            if toks[0] == "v" and len(toks) == 3:
                weights[int(toks[1])] = float(toks[2])
            elif toks[0] == "e" and len(toks) == 3:
                edges.append((int(toks[1]), int(toks[2])))
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise FormatSyntaxError("expected 'v <id> <weight>' or 'e <a> <b>'", lineno, 1) from None
    if len(edges) != m:
        raise FormatSyntaxError(f"header declares {m} edges, found {len(edges)}", 1, 1)
    return StaticGraph.from_edges(n, edges, weights)
