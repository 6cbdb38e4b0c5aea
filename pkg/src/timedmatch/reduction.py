"""Reduction from Independent Set to 0-1 timed matching.

Given a static graph ``G`` on ``n`` vertices, build a temporal star with hub
``n``: vertex ``v`` of ``G`` becomes a leaf joined to the hub by one temporal
edge.  Every static edge ``(u, v)`` gets a distinct label ``t`` and both
``u``'s and ``v``'s star edges carry the unit interval ``(t, t+1)``; each
isolated vertex gets its own label after the edge labels.  Two star edges
then overlap exactly when their source vertices are adjacent, so independent
sets and timed matchings correspond one to one with equal size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .temporal import StaticGraph, TemporalGraph, verify_matching

__all__ = [
    "ReducedInstance",
    "reduce_is_to_matching",
    "map_is_to_matching",
    "map_matching_to_is",
    "labels_to_json",
    "labels_from_json",
]


@dataclass(frozen=True)
class ReducedInstance:
    source: StaticGraph
    temporal: TemporalGraph
    edge_labels: dict[tuple[int, int], int] = field(hash=False)
    isolated_labels: dict[int, int] = field(hash=False)
    k_prime: int
    # temporal edge id of the star edge for each source vertex
    edge_of_vertex: tuple[int, ...]

    @property
    def hub(self) -> int:
        return self.source.n_vertices

    def vertex_of_edge(self, edge_id: int) -> int:
        e = self.temporal.edges[edge_id]
        return e.u if e.v == self.hub else e.v


def reduce_is_to_matching(g: StaticGraph, k: int) -> ReducedInstance:
    """Build the star instance for ``(g, k)``.

    Labels are assigned to static edges in ``(min, max)`` order and then to
    isolated vertices by id.
    """
    n = g.n_vertices
    edge_labels = {e: i for i, e in enumerate(g.sorted_edges())}
    m_e = len(edge_labels)
    isolated = [v for v in range(n) if g.degree(v) == 0]
    isolated_labels = {v: m_e + i for i, v in enumerate(isolated)}

    spokes = []
    for v in range(n):
        if v in isolated_labels:
            ivs = [(isolated_labels[v], isolated_labels[v] + 1)]
        else:
            labels = sorted(edge_labels[(min(u, v), max(u, v))] for u in g.adjacency[v])
            ivs = [(t, t + 1) for t in labels]
        spokes.append((v, n, 1.0, ivs))
    temporal = TemporalGraph.from_edges(n + 1, m_e + len(isolated), spokes)
    # canonical order sorts spokes by leaf id, so spoke ids equal vertex ids
    edge_of_vertex = tuple(temporal.edge_between(v, n).id for v in range(n))
    return ReducedInstance(g, temporal, edge_labels, isolated_labels, k, edge_of_vertex)


def map_is_to_matching(ri: ReducedInstance, is_set: Iterable[int]) -> frozenset[int]:
    vs = frozenset(is_set)
    if not all(0 <= v < ri.source.n_vertices for v in vs):
        raise ValueError("vertex set names vertices outside the source graph")
    if not ri.source.is_independent(vs):
        raise ValueError("vertex set is not independent in the source graph")
    return frozenset(ri.edge_of_vertex[v] for v in vs)


def map_matching_to_is(ri: ReducedInstance, m: Iterable[int]) -> frozenset[int]:
    ids = frozenset(m)
    if not verify_matching(ri.temporal, ids):
        raise ValueError("edge set is not a 0-1 timed matching")
    return frozenset(ri.vertex_of_edge(e) for e in ids)


def labels_to_json(ri: ReducedInstance) -> str:
    """Sidecar needed to map solutions of the temporal instance back."""
    return json.dumps({
        "n_source_vertices": ri.source.n_vertices,
        "hub": ri.hub,
        "k": ri.k_prime,
        "edge_labels": [[u, v, t] for (u, v), t in sorted(ri.edge_labels.items())],
        "isolated_labels": [[v, t] for v, t in sorted(ri.isolated_labels.items())],
        "edge_of_vertex": list(ri.edge_of_vertex),
    }, indent=1) + "\n"


def labels_from_json(text: str, temporal: TemporalGraph) -> ReducedInstance:
    data = json.loads(text)
    n = data["n_source_vertices"]
    edge_labels = {(u, v): t for u, v, t in data["edge_labels"]}
    source = StaticGraph.from_edges(n, edge_labels)
    return ReducedInstance(
        source, temporal, edge_labels,
        {v: t for v, t in data["isolated_labels"]},
        data["k"], tuple(data["edge_of_vertex"]))
