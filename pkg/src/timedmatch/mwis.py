"""Maximum weight independent set over a nice tree decomposition.

Each node keeps a table keyed by bag subsets, encoded as bitmasks over the
positions of the sorted bag.  A table entry is ``(value, chosen)`` where
``value`` is the best weight of an independent set in the subtree that meets
the bag exactly in the key, and ``chosen`` is that set as a bitmask with
vertex ``v`` at bit ``n - 1 - v``.

Entries are compared as ``(value, chosen)`` tuples.  The second component is
an additive key over disjoint unions, so the table maximum stays consistent
through joins and the final set is the heaviest one that also contains the
smallest possible vertex ids.  Dropping trailing zero-weight vertices from it
gives the lexicographically smallest sorted maximum-weight set.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple

import numpy as np

from .temporal import StaticGraph
from .treedec import DecompositionError, NiceTreeDecomposition, NodeKind, validate_nice

__all__ = [
    "MWISResult",
    "SizeLimitError",
    "BRUTEFORCE_MAX_VERTICES",
    "iter_tables",
    "mwis_treedp",
    "treedp_with_stats",
    "mwis_bruteforce",
    "best_subset_bruteforce",
    "lexicographic_canonical",
]

BRUTEFORCE_MAX_VERTICES = 24


class SizeLimitError(ValueError):
    pass


class MWISResult(NamedTuple):
    weight: float
    solution: frozenset[int]


def lexicographic_canonical(g: StaticGraph, solution) -> frozenset[int]:
    """Drop the zero-weight vertices above the largest positive-weight one."""
    keep = sorted(solution)
    while keep and g.weight(keep[-1]) == 0:
        keep.pop()
    return frozenset(keep)


def iter_tables(g: StaticGraph, ntd: NiceTreeDecomposition) -> Iterator[tuple[int, tuple[int, ...], dict]]:
    """Run the DP bottom-up, yielding ``(node, sorted_bag, table)`` per node.

    Child tables are released once their parent is built, so memory stays
    proportional to the number of pending join branches.
    """
    n = g.n_vertices
    adj = g.adjacency
    w = [g.weight(v) for v in range(n)]
    done: dict[int, tuple[tuple[int, ...], dict]] = {}
    for t in ntd.postorder():
        kind = ntd.kinds[t]
        ch = ntd.children[t]
        if kind is NodeKind.LEAF:
            verts: tuple[int, ...] = ()
            table = {0: (0.0, 0)}
        elif kind is NodeKind.INTRODUCE:
            v = ntd.vertex[t]
            _, child = done.pop(ch[0])
            verts = tuple(sorted(ntd.bags[t]))
            p = verts.index(v)
            low = (1 << p) - 1
            bit = 1 << p
            nb = sum(1 << i for i, x in enumerate(verts) if x in adj[v])
            sol_bit = 1 << (n - 1 - v)
            wv = w[v]
            table = {}
            for m, (val, chosen) in child.items():
                m2 = (m & low) | ((m & ~low) << 1)
                table[m2] = (val, chosen)
                if not m2 & nb:
                    table[m2 | bit] = (val + wv, chosen | sol_bit)
        elif kind is NodeKind.FORGET:
            v = ntd.vertex[t]
            cverts, child = done.pop(ch[0])
            verts = tuple(sorted(ntd.bags[t]))
            p = cverts.index(v)
            low = (1 << p) - 1
            table = {}
            for m, entry in child.items():
                m2 = (m & low) | ((m >> (p + 1)) << p)
                cur = table.get(m2)
                if cur is None or entry > cur:
                    table[m2] = entry
        elif kind is NodeKind.JOIN:
            verts, left = done.pop(ch[0])
            _, right = done.pop(ch[1])
            bag_w = [w[x] for x in verts]
            table = {}
            for m, (val1, chosen1) in left.items():
                other = right.get(m)
                if other is None:
                    continue
                overlap = math.fsum(bag_w[i] for i in range(len(verts)) if m >> i & 1)
                table[m] = (val1 + other[0] - overlap, chosen1 | other[1])
        else:
            raise DecompositionError(f"unknown node kind {kind!r}")
        done[t] = (verts, table)
        yield t, verts, table


def mwis_treedp(g: StaticGraph, ntd: NiceTreeDecomposition, validate: bool = True) -> MWISResult:
    """Maximum weight independent set of ``g`` by DP over ``ntd``.

    Ties are broken towards the lexicographically smallest sorted vertex set.
    """
    return treedp_with_stats(g, ntd, validate)[0]


def treedp_with_stats(g: StaticGraph, ntd: NiceTreeDecomposition,
                      validate: bool = True) -> tuple[MWISResult, int]:
    """Like :func:`mwis_treedp`, also returning the largest table size."""
    if validate:
        problems = validate_nice(ntd, g)
        if problems:
            raise DecompositionError(
                f"invalid nice decomposition ({len(problems)} problems): {problems[0].message}")
    root_table = None
    largest = 0
    for _, _, table in iter_tables(g, ntd):
        root_table = table
        largest = max(largest, len(table))
    assert root_table is not None and set(root_table) == {0}
    _, chosen = root_table[0]
    n = g.n_vertices
    sol = lexicographic_canonical(g, (v for v in range(n) if chosen >> (n - 1 - v) & 1))
    return MWISResult(g.total_weight(sol), sol), largest


def best_subset_bruteforce(n: int, conflicts, weights) -> tuple[float, int]:
    """Exhaustive search over all ``2**n`` subsets of ``range(n)``.

    Returns ``(weight, mask)`` of the heaviest conflict-free subset, taking
    the lexicographically smallest sorted member list among ties.
    """
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    for a, b in conflicts:
        ok &= ((masks >> a) & (masks >> b) & 1) == 0
    total = np.zeros(masks.shape, dtype=np.float64)
    for v in range(n):
        total += weights[v] * ((masks >> v) & 1)
    total[~ok] = -np.inf
    best = total.max()
    cands = masks[total == best]
    # sorted-tuple lexicographic minimum: fix the smallest members one by one
    prefix = 0
    while True:
        if np.any(cands == prefix):
            return float(best), int(prefix)
        rest = cands & ~prefix
        low = rest & -rest
        cands = cands[low == low.min()]
        prefix |= int(low.min())


def mwis_bruteforce(g: StaticGraph) -> MWISResult:
    n = g.n_vertices
    if n > BRUTEFORCE_MAX_VERTICES:
        raise SizeLimitError(f"brute force limited to {BRUTEFORCE_MAX_VERTICES} vertices, got {n}")
    _, mask = best_subset_bruteforce(n, g.edges, [g.weight(v) for v in range(n)])
    sol = frozenset(v for v in range(n) if mask >> v & 1)
    return MWISResult(g.total_weight(sol), sol)
