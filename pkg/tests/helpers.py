"""Hypothesis strategies and small independent oracles shared by the tests."""

import itertools

from hypothesis import strategies as st

from timedmatch.temporal import StaticGraph, TemporalGraph


@st.composite
def interval_lists(draw, lifetime, max_count=4):
    """Sorted disjoint half-open intervals inside [0, lifetime); at least one."""
    cuts = draw(st.lists(st.integers(0, lifetime), min_size=2, max_size=2 * max_count, unique=True))
    cuts.sort()
    ivs = [(cuts[i], cuts[i + 1]) for i in range(0, len(cuts) - 1, 2)]
    return ivs


@st.composite
def temporal_graphs(draw, max_n=7, max_T=12, max_edges=None, quarter=True):
    n = draw(st.integers(2, max_n))
    T = draw(st.integers(1, max_T))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True,
                           max_size=len(pairs) if max_edges is None else max_edges))
    weight = st.integers(0, 40).map(lambda x: x / 4) if quarter else st.just(1.0)
    edges = [(u, v, draw(weight), draw(interval_lists(T))) for u, v in chosen]
    return TemporalGraph.from_edges(n, T, edges)


@st.composite
def static_graphs(draw, min_n=0, max_n=10, weighted=True):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    weights = None
    if weighted:
        weights = draw(st.lists(st.integers(0, 32).map(lambda x: x / 4), min_size=n, max_size=n))
    return StaticGraph.from_edges(n, edges, weights)


def active_steps(edge):
    return {t for iv in edge.intervals for t in range(iv.start, iv.finish)}


def overlap_by_enumeration(e1, e2):
    """Definition-level check: shared endpoint and a common active timestep."""
    if not {e1.u, e1.v} & {e2.u, e2.v}:
        return False
    return bool(active_steps(e1) & active_steps(e2))


def max_independent_set_size(g):
    """Exhaustive itertools search, independent of the numpy oracle."""
    for size in range(g.n_vertices, -1, -1):
        for combo in itertools.combinations(range(g.n_vertices), size):
            if g.is_independent(combo):
                return size
    return 0


def treewidth_by_permutations(g):
    """Minimum over all elimination orders of the largest later-neighbourhood."""
    n = g.n_vertices
    if n == 0:
        return -1
    best = n - 1
    for order in itertools.permutations(range(n)):
        adj = [set(a) for a in g.adjacency]
        width = 0
        for v in order:
            nb = adj[v]
            width = max(width, len(nb))
            if width >= best:
                break
            for a in nb:
                adj[a].discard(v)
                adj[a] |= nb - {a}
        best = min(best, width)
    return best


def random_intervals(rng, lifetime, max_count=4):
    """Seeded counterpart of :func:`interval_lists` driven by a numpy Generator."""
    k = int(rng.integers(1, max_count + 1))
    cuts = sorted(rng.choice(lifetime + 1, size=min(2 * k, lifetime + 1), replace=False).tolist())
    return [(cuts[i], cuts[i + 1]) for i in range(0, len(cuts) - 1, 2)]


def random_temporal_graph(rng, max_n=10, max_edges=14, max_T=12):
    """Random temporal graph with quarter-grid weights in [0, 10]."""
    n = int(rng.integers(2, max_n + 1))
    T = int(rng.integers(1, max_T + 1))
    pairs = list(itertools.combinations(range(n), 2))
    m = int(rng.integers(0, min(max_edges, len(pairs)) + 1))
    chosen = [pairs[i] for i in rng.choice(len(pairs), size=m, replace=False)]
    edges = [(u, v, int(rng.integers(0, 41)) / 4, random_intervals(rng, T)) for u, v in chosen]
    return TemporalGraph.from_edges(n, T, edges)
