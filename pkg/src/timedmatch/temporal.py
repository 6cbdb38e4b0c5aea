"""Temporal graphs with interval-annotated weighted edges.

A temporal graph has a fixed vertex set ``0..n-1`` and a lifetime ``T``.
Each edge carries a non-negative weight and a sorted tuple of disjoint
half-open intervals ``[start, finish)`` during which it exists.

Text format (UTF-8, line oriented)::

    <n_vertices> <lifetime>
    <u> <v> <weight> (s1,f1) (s2,f2) ...

Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Interval",
    "TemporalEdge",
    "TemporalGraph",
    "StaticGraph",
    "TemporalGraphError",
    "FormatSyntaxError",
    "SelfLoopError",
    "EmptyIntervalError",
    "IntervalRangeError",
    "OverlappingIntervalsError",
    "MissingIntervalsError",
    "DuplicateEdgeError",
    "InvalidWeightError",
    "NegativeWeightError",
    "VertexRangeError",
    "UnknownEdgeError",
    "parse_temporal_graph",
    "serialize_temporal_graph",
    "read_temporal_graph",
    "write_temporal_graph",
    "underlying_graph",
    "intervals_intersect",
    "edges_overlap",
    "active_at",
    "verify_matching",
    "parse_edge_list",
    "serialize_edge_list",
]


class TemporalGraphError(ValueError):
    """Base class for invalid temporal graph input.

    ``line`` and ``column`` are 1-based positions when the error came from
    the parser, otherwise ``None``.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._render())

    def _render(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"

    def located(self, line: int, column: int | None = None) -> "TemporalGraphError":
        self.line = line
        if self.column is None:
            self.column = column
        self.args = (self._render(),)
        return self


class FormatSyntaxError(TemporalGraphError):
    pass


class SelfLoopError(TemporalGraphError):
    pass


class EmptyIntervalError(TemporalGraphError):
    pass


class IntervalRangeError(TemporalGraphError):
    pass


class OverlappingIntervalsError(TemporalGraphError):
    pass


class MissingIntervalsError(TemporalGraphError):
    pass


class DuplicateEdgeError(TemporalGraphError):
    pass


class InvalidWeightError(TemporalGraphError):
    pass


class NegativeWeightError(InvalidWeightError):
    pass


class VertexRangeError(TemporalGraphError):
    pass


class UnknownEdgeError(LookupError):
    pass


class Interval(NamedTuple):
    """Half-open time interval ``[start, finish)``."""

    start: int
    finish: int

    def __str__(self) -> str:
        return f"({self.start},{self.finish})"


def _check_weight(weight: float) -> None:
    if not math.isfinite(weight):
        raise InvalidWeightError(f"weight must be finite, got {weight!r}")
    if weight < 0:
        raise NegativeWeightError(f"weight must be non-negative, got {weight!r}")


@dataclass(frozen=True)
class TemporalEdge:
    id: int
    u: int
    v: int
    weight: float
    intervals: tuple[Interval, ...]

    def __post_init__(self):
        if self.u == self.v:
            raise SelfLoopError(f"self-loop on vertex {self.u}")
        _check_weight(self.weight)
        if not self.intervals:
            raise MissingIntervalsError(f"edge ({self.u},{self.v}) has no intervals")
        prev = None
        for iv in self.intervals:
            if iv.start >= iv.finish:
                raise EmptyIntervalError(f"empty interval {iv} on edge ({self.u},{self.v})")
            if iv.start < 0:
                raise IntervalRangeError(f"interval {iv} starts before 0")
            if prev is not None and iv.start < prev.finish:
                raise OverlappingIntervalsError(
                    f"intervals {prev} and {iv} on edge ({self.u},{self.v}) "
                    "overlap or are out of order")
            prev = iv

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    def is_active(self, t: int) -> bool:
        return any(iv.start <= t < iv.finish for iv in self.intervals)


@dataclass(frozen=True)
class TemporalGraph:
    """Immutable temporal graph.

    ``edges[i].id`` must equal ``i``.  Use :meth:`from_edges` to build a
    graph in canonical form (endpoints ordered, edges sorted by endpoint
    pair, ids assigned in that order).
    """

    n_vertices: int
    lifetime: int
    edges: tuple[TemporalEdge, ...] = ()

    def __post_init__(self):
        if self.n_vertices < 0:
            raise FormatSyntaxError("vertex count must be non-negative")
        if self.lifetime < 0:
            raise FormatSyntaxError("lifetime must be non-negative")
        seen = {}
        for i, e in enumerate(self.edges):
            if e.id != i:
                raise ValueError(f"edge at position {i} has id {e.id}")
            for x in (e.u, e.v):
                if not 0 <= x < self.n_vertices:
                    raise VertexRangeError(
                        f"vertex {x} out of range 0..{self.n_vertices - 1}")
            if e.intervals[-1].finish > self.lifetime:
                raise IntervalRangeError(
                    f"interval {e.intervals[-1]} on edge ({e.u},{e.v}) "
                    f"ends after lifetime {self.lifetime}")
            if e.endpoints in seen:
                raise DuplicateEdgeError(
                    f"duplicate edge between {e.endpoints[0]} and {e.endpoints[1]}")
            seen[e.endpoints] = i

    @classmethod
    def from_edges(cls, n_vertices: int, lifetime: int,
                   edges: Iterable[tuple[int, int, float, Iterable[tuple[int, int]]]]
                   ) -> "TemporalGraph":
        """Build a canonical graph from ``(u, v, weight, intervals)`` tuples.

        Intervals are sorted by start before validation.
        """
        raw = []
        for u, v, w, ivs in edges:
            a, b = (u, v) if u <= v else (v, u)
            raw.append((a, b, float(w), tuple(sorted(Interval(int(s), int(f)) for s, f in ivs))))
        raw.sort(key=lambda r: (r[0], r[1]))
        return cls(n_vertices, lifetime,
                   tuple(TemporalEdge(i, a, b, w, ivs) for i, (a, b, w, ivs) in enumerate(raw)))

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for e in self.edges:
            inc[e.u].append(e.id)
            inc[e.v].append(e.id)
        return tuple(tuple(sorted(x)) for x in inc)

    def edge_between(self, u: int, v: int) -> TemporalEdge | None:
        key = (u, v) if u < v else (v, u)
        return self._by_pair.get(key)

    @cached_property
    def _by_pair(self) -> dict[tuple[int, int], TemporalEdge]:
        return {e.endpoints: e for e in self.edges}

    def max_degree(self) -> int:
        return max((len(x) for x in self.incident), default=0)

    def with_weights(self, weights: Sequence[float]) -> "TemporalGraph":
        if len(weights) != len(self.edges):
            raise ValueError("need one weight per edge")
        return TemporalGraph(self.n_vertices, self.lifetime, tuple(
            TemporalEdge(e.id, e.u, e.v, float(w), e.intervals)
            for e, w in zip(self.edges, weights)))

    def unit_weights(self) -> "TemporalGraph":
        return self.with_weights([1.0] * len(self.edges))


@dataclass(frozen=True)
class StaticGraph:
    """Simple undirected graph on vertices ``0..n-1``, optionally vertex-weighted.

    ``edges`` holds pairs ``(a, b)`` with ``a < b``.
    """

    n_vertices: int
    edges: frozenset[tuple[int, int]] = frozenset()
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            if not (0 <= a < b < self.n_vertices):
                raise ValueError(f"edge {(a, b)} is not a normalized pair in range")
        if self.weights is not None:
            if len(self.weights) != self.n_vertices:
                raise ValueError("need one weight per vertex")
            for w in self.weights:
                if not math.isfinite(w) or w < 0:
                    raise ValueError(f"vertex weight {w!r} must be finite and non-negative")

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[int, int]],
                   weights: Sequence[float] | None = None) -> "StaticGraph":
        norm = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            pair = (a, b) if a < b else (b, a)
            if pair in norm:
                raise ValueError(f"duplicate edge {pair}")
            norm.add(pair)
        return cls(n_vertices, frozenset(norm),
                   None if weights is None else tuple(float(w) for w in weights))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self.adjacency), default=0)

    def weight(self, v: int) -> float:
        return 1.0 if self.weights is None else self.weights[v]

    def total_weight(self, vertices: Iterable[int]) -> float:
        return math.fsum(self.weight(v) for v in sorted(vertices))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self.adjacency[v] & vs) for v in vs)


# ---------------------------------------------------------------------------
# overlap predicate

def intervals_intersect(a: Sequence[Interval], b: Sequence[Interval]) -> bool:
    """True if two sorted disjoint interval lists share a timestep."""
    i = j = 0
    while i < len(a) and j < len(b):
        x, y = a[i], b[j]
        if x.start < y.finish and y.start < x.finish:
            return True
        if x.finish <= y.finish:
            i += 1
        else:
            j += 1
    return False


def edges_overlap(e1: TemporalEdge, e2: TemporalEdge) -> bool:
    """True iff the edges share an endpoint and coexist at some timestep."""
    if e1.u not in (e2.u, e2.v) and e1.v not in (e2.u, e2.v):
        return False
    return intervals_intersect(e1.intervals, e2.intervals)


def active_at(g: TemporalGraph, t: int) -> list[TemporalEdge]:
    """Edges present in the snapshot at timestep ``t``."""
    return [e for e in g.edges if e.is_active(t)]


def underlying_graph(g: TemporalGraph) -> StaticGraph:
    return StaticGraph(g.n_vertices, frozenset(e.endpoints for e in g.edges))


def verify_matching(g: TemporalGraph, m: Iterable[int]) -> bool:
    """True iff no two edges of ``m`` overlap.

    Raises UnknownEdgeError for ids that are not edges of ``g``.
    """
    ids = set(m)
    for i in ids:
        if not (isinstance(i, int) and 0 <= i < len(g.edges)):
            raise UnknownEdgeError(f"unknown edge id {i!r}")
    by_vertex: dict[int, list[TemporalEdge]] = defaultdict(list)
    for i in sorted(ids):
        e = g.edges[i]
        by_vertex[e.u].append(e)
        by_vertex[e.v].append(e)
    for es in by_vertex.values():
        for a in range(len(es)):
            for b in range(a + 1, len(es)):
                if intervals_intersect(es[a].intervals, es[b].intervals):
                    return False
    return True


# ---------------------------------------------------------------------------
# text format

_INTERVAL_RE = re.compile(r"\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")
_FIELD_RE = re.compile(r"\S+")


def _parse_int(tok: str, what: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatSyntaxError(f"expected integer {what}, got {tok!r}", line, col) from None


def _content_lines(text: str | bytes):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw


def parse_temporal_graph(text: str | bytes) -> TemporalGraph:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatSyntaxError("missing header line '<n_vertices> <lifetime>'", 1, 1) from None
    fields = list(_FIELD_RE.finditer(header))
    if len(fields) != 2:
        col = fields[2].start() + 1 if len(fields) > 2 else len(header) + 1
        raise FormatSyntaxError("header must be '<n_vertices> <lifetime>'", lineno, col)
    n = _parse_int(fields[0].group(), "vertex count", lineno, fields[0].start() + 1)
    T = _parse_int(fields[1].group(), "lifetime", lineno, fields[1].start() + 1)
    if n < 0 or T < 0:
        raise FormatSyntaxError("header values must be non-negative", lineno, 1)

    edges = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in lines:
        fields = []
        pos = 0
        for _ in range(3):
            m = _FIELD_RE.search(raw, pos)
            if m is None or m.group().startswith("("):
                raise FormatSyntaxError("expected '<u> <v> <weight>' before intervals",
                                        lineno, (m.start() if m else len(raw)) + 1)
            fields.append(m)
            pos = m.end()
        u = _parse_int(fields[0].group(), "vertex", lineno, fields[0].start() + 1)
        v = _parse_int(fields[1].group(), "vertex", lineno, fields[1].start() + 1)
        try:
            w = float(fields[2].group())
        except ValueError:
            raise FormatSyntaxError(f"expected weight, got {fields[2].group()!r}",
                                    lineno, fields[2].start() + 1) from None
        ivs = []
        while pos < len(raw) and raw[pos:].strip():
            m = _INTERVAL_RE.match(raw, pos)
            if m is None:
                col = pos + (len(raw[pos:]) - len(raw[pos:].lstrip())) + 1
                raise FormatSyntaxError("expected interval '(start,finish)'", lineno, col)
            ivs.append(Interval(int(m.group(1)), int(m.group(2))))
            pos = m.end()
        try:
            for x, f in ((u, fields[0]), (v, fields[1])):
                if not 0 <= x < n:
                    raise VertexRangeError(f"vertex {x} out of range 0..{n - 1}").located(
                        lineno, f.start() + 1)
            if u == v:
                raise SelfLoopError(f"self-loop on vertex {u}")
            _check_weight(w)
            ivs.sort()
            for iv in ivs:
                if iv.start >= iv.finish:
                    raise EmptyIntervalError(f"empty interval {iv}")
                if iv.start < 0 or iv.finish > T:
                    raise IntervalRangeError(f"interval {iv} outside [0,{T}]")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise DuplicateEdgeError(
                    f"duplicate edge between {pair[0]} and {pair[1]} "
                    f"(first on line {seen[pair]})")
            seen[pair] = lineno
            edges.append((u, v, w, ivs))
            # remaining checks (ordering, missing intervals) live in TemporalEdge
            TemporalEdge(0, u, v, w, tuple(ivs))
        except TemporalGraphError as err:
            raise err.located(lineno, 1)
    return TemporalGraph.from_edges(n, T, edges)


def serialize_temporal_graph(g: TemporalGraph) -> str:
    out = [f"{g.n_vertices} {g.lifetime}"]
    for e in sorted(g.edges, key=lambda e: e.endpoints):
        u, v = e.endpoints
        ivs = " ".join(str(iv) for iv in e.intervals)
        out.append(f"{u} {v} {e.weight!r} {ivs}")
    return "\n".join(out) + "\n"


def read_temporal_graph(path) -> TemporalGraph:
    with open(path, "rb") as fh:
        return parse_temporal_graph(fh.read())


def write_temporal_graph(g: TemporalGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_temporal_graph(g))


def parse_edge_list(text: str | bytes) -> StaticGraph:
    """Parse a plain static graph: ``<n>`` then one ``<u> <v>`` per line."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatSyntaxError("missing vertex count", 1, 1) from None
    toks = header.split()
    if len(toks) != 1:
        raise FormatSyntaxError("header must be '<n>'", lineno, 1)
    n = _parse_int(toks[0], "vertex count", lineno, 1)
    edges = []
    for lineno, raw in lines:
        toks = raw.split()
        if len(toks) != 2:
            raise FormatSyntaxError("expected '<u> <v>'", lineno, 1)
        u = _parse_int(toks[0], "vertex", lineno, 1)
        v = _parse_int(toks[1], "vertex", lineno, 1)
        if u == v:
            raise SelfLoopError(f"self-loop on vertex {u}", lineno, 1)
        for x in (u, v):
            if not 0 <= x < n:
                raise VertexRangeError(f"vertex {x} out of range 0..{n - 1}", lineno, 1)
        edges.append((u, v))
    try:
        return StaticGraph.from_edges(n, edges)
    except ValueError as err:
        raise DuplicateEdgeError(str(err)) from None


def serialize_edge_list(g: StaticGraph) -> str:
    return "\n".join([str(g.n_vertices)] + [f"{a} {b}" for a, b in g.sorted_edges()]) + "\n"
