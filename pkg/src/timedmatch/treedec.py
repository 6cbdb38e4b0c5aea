"""Tree decompositions: heuristic and exact construction, nice form, lifting.

Decompositions are stored as a parent array over bag indices; the root is the
single node whose parent is ``-1``.  All constructions go through an
elimination ordering: eliminating ``v`` produces the bag ``{v} + N(v)`` in the
current fill graph, hung under the bag of the earliest-eliminated neighbour.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import NamedTuple, Sequence

from .temporal import FormatSyntaxError, StaticGraph, TemporalGraph, underlying_graph, _content_lines

__all__ = [
    "TreeDecomposition",
    "NiceTreeDecomposition",
    "NodeKind",
    "Violation",
    "DecompositionError",
    "BudgetExhausted",
    "STRATEGIES",
    "elimination_order",
    "decomposition_from_order",
    "decompose_heuristic",
    "decompose_exact",
    "treewidth_lower_bound",
    "make_nice",
    "lift_decomposition",
    "validate_decomposition",
    "validate_nice",
    "write_pace",
    "parse_pace",
]

STRATEGIES = ("min-fill", "min-degree")


class DecompositionError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    """Exact search hit its node-expansion limit before reaching a verdict."""

    def __init__(self, expansions: int):
        super().__init__(f"exact decomposition gave up after {expansions} expansions")
        self.expansions = expansions


class NodeKind(str, Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


class Violation(NamedTuple):
    kind: str
    subject: object
    message: str


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]

    @cached_property
    def root(self) -> int:
        return self.parent.index(-1)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for t, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(t)
        return tuple(tuple(c) for c in ch)

    def postorder(self) -> list[int]:
        out = []
        stack = [(self.root, False)]
        while stack:
            t, done = stack.pop()
            if done:
                out.append(t)
                continue
            stack.append((t, True))
            for c in reversed(self.children[t]):
                stack.append((c, False))
        return out

    def __len__(self) -> int:
        return len(self.bags)


@dataclass(frozen=True)
class NiceTreeDecomposition(TreeDecomposition):
    kinds: tuple[NodeKind, ...]
    # introduced or forgotten vertex, -1 for leaf and join nodes
    vertex: tuple[int, ...]

    def count(self, kind: NodeKind) -> int:
        return sum(1 for k in self.kinds if k is kind)


# ---------------------------------------------------------------------------
# elimination orderings

def _fill_in(adj: list[set[int]], v: int) -> int:
    nb = adj[v]
    return sum(len(nb - adj[x]) - 1 for x in nb) // 2


def elimination_order(g: StaticGraph, strategy: str = "min-fill") -> list[int]:
    """Greedy elimination ordering; ties go to the smallest vertex id."""
    if strategy == "min-fill":
        score = _fill_in
    elif strategy == "min-degree":
        def score(adj, v):
            return len(adj[v])
    else:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")

    adj = [set(a) for a in g.adjacency]
    current = [score(adj, v) for v in range(g.n_vertices)]
    heap = [(s, v) for v, s in enumerate(current)]
    heapq.heapify(heap)
    eliminated = [False] * g.n_vertices
    order = []
    while heap:
        s, v = heapq.heappop(heap)
        if eliminated[v] or s != current[v]:
            continue
        eliminated[v] = True
        order.append(v)
        nb = adj[v]
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        adj[v] = set()
        if strategy == "min-fill":
            touched = set(nb)
            for a in nb:
                touched |= adj[a]
        else:
            touched = nb
        for a in touched:
            s2 = score(adj, a)
            if s2 != current[a]:
                current[a] = s2
                heapq.heappush(heap, (s2, a))
    return order


def decomposition_from_order(g: StaticGraph, order: Sequence[int]) -> TreeDecomposition:
    n = g.n_vertices
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the vertices")
    if n == 0:
        return TreeDecomposition((frozenset(),), (-1,))
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in g.adjacency]
    bags = []
    parent = []
    for v in order:
        later = adj[v]
        bags.append(frozenset(later | {v}))
        parent.append(min((pos[u] for u in later), default=-1))
        for a in later:
            adj[a].discard(v)
            adj[a] |= later - {a}
    # join the per-component trees under the last bag
    last = n - 1
    parent = [last if (p == -1 and i != last) else p for i, p in enumerate(parent)]
    return TreeDecomposition(tuple(bags), tuple(parent))


def decompose_heuristic(g: StaticGraph, strategy: str = "min-fill") -> TreeDecomposition:
    return decomposition_from_order(g, elimination_order(g, strategy))


# ---------------------------------------------------------------------------
# exact search

def treewidth_lower_bound(g: StaticGraph) -> int:
    """Minor-min-width: contract a min-degree vertex into its
    lowest-degree neighbour and keep the largest minimum degree seen.
    Never exceeds the treewidth."""
    adj = {v: set(a) for v, a in enumerate(g.adjacency)}
    lb = 0
    while len(adj) > 1:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        lb = max(lb, len(adj[v]))
        if not adj[v]:
            del adj[v]
            continue
        u = min(adj[v], key=lambda x: (len(adj[x]), x))
        for w in adj[v]:
            adj[w].discard(v)
            if w != u:
                adj[w].add(u)
                adj[u].add(w)
        del adj[v]
    return lb


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def decompose_exact(g: StaticGraph, max_width: int,
                    budget: int | None = None) -> TreeDecomposition | None:
    """Minimum-width decomposition if one of width <= ``max_width`` exists.

    Branch and bound over elimination orderings.  The fill graph after
    eliminating a set of vertices does not depend on the order, so failed
    eliminated-sets are memoised.  Returns ``None`` when no decomposition of
    width <= ``max_width`` exists; raises :class:`BudgetExhausted` when more
    than ``budget`` search nodes would be expanded.  Intended for graphs of at
    most ~30 vertices.
    """
    n = g.n_vertices
    if n == 0:
        return TreeDecomposition((frozenset(),), (-1,)) if max_width >= -1 else None
    heuristic = decompose_heuristic(g, "min-fill")
    ub = heuristic.width
    lb = treewidth_lower_bound(g)
    if lb > max_width:
        return None

    adj0 = [0] * n
    for a, b in g.edges:
        adj0[a] |= 1 << b
        adj0[b] |= 1 << a
    expansions = 0

    def search(target: int) -> list[int] | None:
        failed: set[int] = set()

        def dfs(adj: list[int], remaining: int, order: list[int]) -> list[int] | None:
            nonlocal expansions
            if remaining.bit_count() <= target + 1:
                return order + list(_bits(remaining))
            if remaining in failed:
                return None
            expansions += 1
            if budget is not None and expansions > budget:
                raise BudgetExhausted(expansions)
            cands = sorted((adj[v].bit_count(), v) for v in _bits(remaining)
                           if adj[v].bit_count() <= target)
            for _, v in cands:
                nb = adj[v]
                if all((adj[u] | (1 << u)) & nb == nb for u in _bits(nb)):
                    # simplicial vertex of small degree: eliminating it first is safe
                    cands = [(0, v)]
                    break
            for _, v in cands:
                nb = adj[v]
                nxt = adj[:]
                for u in _bits(nb):
                    nxt[u] = (adj[u] | nb) & ~((1 << u) | (1 << v))
                nxt[v] = 0
                found = dfs(nxt, remaining & ~(1 << v), order + [v])
                if found is not None:
                    return found
            failed.add(remaining)
            return None

        return dfs(adj0, (1 << n) - 1, [])

    for target in range(lb, min(ub - 1, max_width) + 1):
        order = search(target)
        if order is not None:
            return decomposition_from_order(g, order)
    return heuristic if ub <= max_width else None


# ---------------------------------------------------------------------------
# nice form

def make_nice(td: TreeDecomposition) -> NiceTreeDecomposition:
    """Convert to a nice decomposition with an empty root bag.

    Between adjacent bags, vertices are forgotten in ascending id and then
    introduced in ascending id; nodes with several children are merged
    through a left-deep chain of binary joins.
    """
    bags: list[frozenset[int]] = []
    kinds: list[NodeKind] = []
    vertex: list[int] = []
    children: list[tuple[int, ...]] = []

    def add(kind, bag, v, ch):
        bags.append(bag)
        kinds.append(kind)
        vertex.append(v)
        children.append(ch)
        return len(bags) - 1

    def chain(node, bag, target):
        for v in sorted(bag - target):
            bag = bag - {v}
            node = add(NodeKind.FORGET, bag, v, (node,))
        for v in sorted(target - bag):
            bag = bag | {v}
            node = add(NodeKind.INTRODUCE, bag, v, (node,))
        return node

    top = {}
    for t in td.postorder():
        bag = td.bags[t]
        kids = td.children[t]
        if not kids:
            top[t] = chain(add(NodeKind.LEAF, frozenset(), -1, ()), frozenset(), bag)
            continue
        tops = [chain(top.pop(c), td.bags[c], bag) for c in kids]
        node = tops[0]
        for other in tops[1:]:
            node = add(NodeKind.JOIN, bag, -1, (node, other))
        top[t] = node
    root = chain(top[td.root], td.bags[td.root], frozenset())

    parent = [-1] * len(bags)
    for t, ch in enumerate(children):
        for c in ch:
            parent[c] = t
    assert parent[root] == -1
    return NiceTreeDecomposition(tuple(bags), tuple(parent), tuple(kinds), tuple(vertex))


# ---------------------------------------------------------------------------
# lifting a decomposition of the underlying graph to the overlap graph

def lift_decomposition(td_u: TreeDecomposition, g: TemporalGraph, og) -> TreeDecomposition:
    """Decomposition of the overlap graph from one of the underlying graph.

    Each vertex in a bag is replaced by the overlap vertices of its incident
    temporal edges, so a bag of size ``b`` grows to at most ``b * max_degree``.
    """
    problems = validate_decomposition(td_u, underlying_graph(g))
    if problems:
        raise DecompositionError(
            "not a decomposition of the underlying graph: " + problems[0].message)
    if og.graph.n_vertices != len(g.edges):
        raise DecompositionError("overlap graph does not belong to this temporal graph")
    bags = tuple(
        frozenset(og.vertex_of_edge[e] for v in bag for e in g.incident[v])
        for bag in td_u.bags)
    return TreeDecomposition(bags, td_u.parent)


# ---------------------------------------------------------------------------
# validation

def _structure_violations(td: TreeDecomposition) -> list[Violation]:
    n = len(td.bags)
    if n == 0:
        return [Violation("structure", None, "decomposition has no bags")]
    if len(td.parent) != n:
        return [Violation("structure", None, "parent array length differs from bag count")]
    roots = [t for t, p in enumerate(td.parent) if p == -1]
    if len(roots) != 1:
        return [Violation("structure", None, f"expected exactly one root, found {len(roots)}")]
    for t, p in enumerate(td.parent):
        if not -1 <= p < n or p == t:
            return [Violation("structure", t, f"node {t} has invalid parent {p}")]
    state = [0] * n  # 0 unseen, 1 on current path, 2 reaches root
    state[roots[0]] = 2
    for start in range(n):
        path = []
        t = start
        while state[t] == 0:
            state[t] = 1
            path.append(t)
            t = td.parent[t]
        if state[t] == 1:
            return [Violation("structure", start, f"node {start} lies on a cycle")]
        for x in path:
            state[x] = 2
    return []


def validate_decomposition(td: TreeDecomposition, g: StaticGraph) -> list[Violation]:
    """All violations of the tree-decomposition properties of ``td`` for ``g``.

    An empty list means the decomposition is valid.
    """
    problems = _structure_violations(td)
    if problems:
        return problems
    where: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for t, bag in enumerate(td.bags):
        for v in bag:
            if not (isinstance(v, int) and 0 <= v < g.n_vertices):
                problems.append(Violation("vertex-range", v, f"bag {t} holds unknown vertex {v}"))
            else:
                where[v].append(t)
    for v in range(g.n_vertices):
        if not where[v]:
            problems.append(Violation("vertex-coverage", v, f"vertex {v} is in no bag"))
    for a, b in sorted(g.edges):
        if not any(b in td.bags[t] for t in where[a]):
            problems.append(Violation("edge-coverage", (a, b), f"no bag contains edge ({a},{b})"))
    for v in range(g.n_vertices):
        tops = [t for t in where[v] if td.parent[t] == -1 or v not in td.bags[td.parent[t]]]
        if len(tops) > 1:
            problems.append(Violation(
                "connectivity", v,
                f"bags containing vertex {v} form {len(tops)} disconnected pieces"))
    return problems


def validate_nice(ntd: NiceTreeDecomposition, g: StaticGraph) -> list[Violation]:
    problems = validate_decomposition(ntd, g)
    if problems:
        return problems
    n = len(ntd.bags)
    if len(ntd.kinds) != n or len(ntd.vertex) != n:
        return [Violation("nice", None, "kinds/vertex arrays do not match bag count")]
    if ntd.bags[ntd.root]:
        problems.append(Violation("nice", ntd.root, "root bag is not empty"))
    forgotten = [0] * g.n_vertices
    for t in range(n):
        kind, bag, ch, v = ntd.kinds[t], ntd.bags[t], ntd.children[t], ntd.vertex[t]
        if kind is NodeKind.LEAF:
            ok = not ch and not bag
        elif kind is NodeKind.INTRODUCE:
            ok = len(ch) == 1 and v not in ntd.bags[ch[0]] and bag == ntd.bags[ch[0]] | {v}
        elif kind is NodeKind.FORGET:
            ok = len(ch) == 1 and v in ntd.bags[ch[0]] and bag == ntd.bags[ch[0]] - {v}
            if ok:
                forgotten[v] += 1
        elif kind is NodeKind.JOIN:
            ok = len(ch) == 2 and all(ntd.bags[c] == bag for c in ch)
        else:
            ok = False
        if not ok:
            problems.append(Violation("nice", t, f"node {t} violates the {kind} rule"))
    for v, c in enumerate(forgotten):
        if c != 1:
            problems.append(Violation("nice", v, f"vertex {v} forgotten {c} times"))
    return problems


# ---------------------------------------------------------------------------
# PACE .td format (1-based bag and vertex ids)

def write_pace(td: TreeDecomposition, n_vertices: int) -> str:
    out = [f"s td {len(td.bags)} {td.width + 1} {n_vertices}"]
    for t, bag in enumerate(td.bags, start=1):
        out.append(" ".join(["b", str(t)] + [str(v + 1) for v in sorted(bag)]))
    for t, p in enumerate(td.parent):
        if p >= 0:
            out.append(f"{p + 1} {t + 1}")
    return "\n".join(out) + "\n"


def parse_pace(text: str | bytes) -> tuple[TreeDecomposition, int]:
    """Parse a PACE decomposition, rooting the tree at bag 1.

    Returns the decomposition and the declared vertex count.
    """
    header = None
    bags: dict[int, frozenset[int]] = {}
    tree_edges = []
    for lineno, raw in _content_lines(text):
        toks = raw.split()
        if toks[0] == "c":
            continue
        try:
            if toks[0] == "s":
                if header is not None or len(toks) != 5 or toks[1] != "td":
                    raise ValueError
                header = (int(toks[2]), int(toks[3]), int(toks[4]))
            elif toks[0] == "b":
                bags[int(toks[1])] = frozenset(int(x) - 1 for x in toks[2:])
            elif len(toks) == 2:
                tree_edges.append((int(toks[0]), int(toks[1])))
            else:
                raise ValueError
        except ValueError:
            raise FormatSyntaxError("malformed PACE line", lineno, 1) from None
    if header is None:
        raise FormatSyntaxError("missing 's td' line", 1, 1)
    n_bags, _, n_vertices = header
    if sorted(bags) != list(range(1, n_bags + 1)):
        raise FormatSyntaxError("bag ids must be exactly 1..#bags", 1, 1)
    nbrs: dict[int, list[int]] = {t: [] for t in bags}
    for a, b in tree_edges:
        if a not in nbrs or b not in nbrs:
            raise FormatSyntaxError(f"tree edge {a} {b} names an unknown bag", 1, 1)
        nbrs[a].append(b)
        nbrs[b].append(a)
    parent = {1: 0}
    stack = [1]
    while stack:
        t = stack.pop()
        for x in nbrs[t]:
            if x not in parent:
                parent[x] = t
                stack.append(x)
    if len(parent) != n_bags or len(tree_edges) != n_bags - 1:
        raise FormatSyntaxError("bag tree is not a tree", 1, 1)
    td = TreeDecomposition(tuple(bags[t] for t in range(1, n_bags + 1)),
                           tuple(parent[t] - 1 for t in range(1, n_bags + 1)))
    return td, n_vertices
