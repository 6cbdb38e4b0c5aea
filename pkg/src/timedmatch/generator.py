"""Seeded random temporal graphs with a controlled underlying graph.

Randomness comes from numpy's PCG64 bit generator.  The seed is expanded
with ``SeedSequence`` and spawned into independent child streams, one per
phase (structure, intervals, weights), so changing e.g. the weight grid does
not perturb the structure drawn for the same seed.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, fields

import numpy as np

from .temporal import StaticGraph, TemporalGraph

__all__ = ["GenSpec", "InfeasibleSpecError", "FAMILIES", "generate", "random_static_graph"]

FAMILIES = ("tree", "partial-k-tree", "bounded-degree", "star")


class InfeasibleSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    seed: int
    n_vertices: int
    lifetime: int
    family: str = "tree"
    # treewidth parameter of the partial-k-tree family
    k: int = 2
    # cap on the underlying degree, None for uncapped
    max_degree: int | None = None
    # partial-k-tree: chance an edge of the k-tree survives;
    # bounded-degree: chance each vertex pair is proposed as an edge
    edge_prob: float = 0.7
    interval_density: float = 0.4
    max_intervals_per_edge: int = 3
    weights: str = "quarter"
    weight_max: float = 8.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InfeasibleSpecError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n_vertices < 1:
            raise InfeasibleSpecError("n_vertices must be positive")
        if self.lifetime < 2:
            raise InfeasibleSpecError("lifetime must be at least 2 to fit an interval under the floor(T/2) cap")
        if self.k < 1:
            raise InfeasibleSpecError("k must be positive")
        if self.max_degree is not None and self.max_degree < 1:
            raise InfeasibleSpecError("max_degree must be positive")
        if not 0.0 <= self.interval_density <= 1.0:
            raise InfeasibleSpecError("interval_density must lie in [0, 1]")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise InfeasibleSpecError("edge_prob must lie in [0, 1]")
        if self.max_intervals_per_edge < 1:
            raise InfeasibleSpecError("max_intervals_per_edge must be positive")
        if self.weights not in ("unit", "quarter"):
            raise InfeasibleSpecError("weights must be 'unit' or 'quarter'")
        if self.weight_max < 0:
            raise InfeasibleSpecError("weight_max must be non-negative")

    @classmethod
    def from_dict(cls, data: dict) -> "GenSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InfeasibleSpecError(f"unknown spec fields: {sorted(unknown)}")
        missing = {"seed", "n_vertices", "lifetime"} - set(data)
        if missing:
            raise InfeasibleSpecError(f"missing spec fields: {sorted(missing)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


def _tree_edges(rng, n, cap):
    if cap is not None and n > 2 and cap < 2:
        raise InfeasibleSpecError(f"a tree on {n} vertices needs max degree >= 2")
    if cap is not None and n == 2 and cap < 1:
        raise InfeasibleSpecError("a tree on 2 vertices needs max degree >= 1")
    deg = [0] * n
    edges = []
    for v in range(1, n):
        open_ = [u for u in range(v) if cap is None or deg[u] < cap]
        u = open_[rng.integers(len(open_))]
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return edges


def _partial_k_tree_edges(rng, n, k, keep, cap):
    base = min(n, k + 1)
    edges = set(itertools.combinations(range(base), 2))
    # every k-subset of the initial (k+1)-clique is a k-clique to grow from
    cliques = list(itertools.combinations(range(base), k))
    for v in range(base, n):
        c = cliques[rng.integers(len(cliques))]
        for u in c:
            edges.add((u, v))
        for drop in range(k):
            cliques.append(tuple(sorted(c[:drop] + c[drop + 1:] + (v,))))
    edges = sorted(edges)
    kept = [e for e in edges if rng.random() < keep]
    return _enforce_degree_cap(rng, n, kept, cap)


def _enforce_degree_cap(rng, n, edges, cap):
    if cap is None:
        return edges
    edges = list(edges)
    order = rng.permutation(len(edges))
    deg = [0] * n
    out = []
    for i in order:
        a, b = edges[i]
        if deg[a] < cap and deg[b] < cap:
            out.append((a, b))
            deg[a] += 1
            deg[b] += 1
    return sorted(out)


def _bounded_degree_edges(rng, n, p, cap):
    pairs = [pair for pair in itertools.combinations(range(n), 2) if rng.random() < p]
    return _enforce_degree_cap(rng, n, pairs, cap)


def _star_edges(n, cap):
    if cap is not None and n - 1 > cap:
        raise InfeasibleSpecError(f"a star on {n} vertices needs max degree >= {n - 1}")
    return [(0, v) for v in range(1, n)]


def _intervals(rng, T, density, cap):
    active = rng.random(T) < density
    runs = []
    t = 0
    while t < T:
        if active[t]:
            s = t
            while t < T and active[t]:
                t += 1
            runs.append((s, t))
        t += 1
    if not runs:
        s = int(rng.integers(T))
        runs = [(s, s + 1)]
    if len(runs) > cap:
        pick = sorted(rng.choice(len(runs), size=cap, replace=False))
        runs = [runs[i] for i in pick]
    return runs


def generate(spec: GenSpec) -> TemporalGraph:
    """Random temporal graph whose underlying graph lies in ``spec.family``.

    Vertex labels are shuffled so structure does not follow id order.
    Quarter-grid weights are multiples of 0.25 in ``[0, weight_max]`` and are
    therefore exact in binary floating point, so sums do not depend on
    summation order.
    """
    seq = np.random.SeedSequence(spec.seed)
    s_struct, s_iv, s_w = (np.random.Generator(np.random.PCG64(s)) for s in seq.spawn(3))
    n = spec.n_vertices
    cap = spec.max_degree
    if spec.family == "tree":
        edges = _tree_edges(s_struct, n, cap)
    elif spec.family == "partial-k-tree":
        edges = _partial_k_tree_edges(s_struct, n, spec.k, spec.edge_prob, cap)
    elif spec.family == "bounded-degree":
        edges = _bounded_degree_edges(s_struct, n, spec.edge_prob, cap)
    else:
        edges = _star_edges(n, cap)
    perm = s_struct.permutation(n)
    edges = sorted((min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges)

    iv_cap = min(spec.max_intervals_per_edge, spec.lifetime // 2)
    out = []
    for a, b in edges:
        ivs = _intervals(s_iv, spec.lifetime, spec.interval_density, iv_cap)
        if spec.weights == "unit":
            w = 1.0
        else:
            w = int(s_w.integers(0, int(spec.weight_max * 4) + 1)) / 4
        out.append((int(a), int(b), w, ivs))
    return TemporalGraph.from_edges(n, spec.lifetime, out)


def random_static_graph(rng: np.random.Generator, n: int, p: float,
                        weights: str | None = None) -> StaticGraph:
    """Erdos-Renyi graph; ``weights="quarter"`` draws quarter-grid vertex weights in [0, 8]."""
    edges = [pair for pair in itertools.combinations(range(n), 2) if rng.random() < p]
    w = None
    if weights == "quarter":
        w = [int(x) / 4 for x in rng.integers(0, 33, size=n)]
    return StaticGraph.from_edges(n, edges, w)
