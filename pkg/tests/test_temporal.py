import math

import pytest
from hypothesis import given, settings, strategies as st

from helpers import overlap_by_enumeration, temporal_graphs
from timedmatch.temporal import (
    DuplicateEdgeError,
    EmptyIntervalError,
    FormatSyntaxError,
    Interval,
    IntervalRangeError,
    InvalidWeightError,
    MissingIntervalsError,
    NegativeWeightError,
    OverlappingIntervalsError,
    SelfLoopError,
    StaticGraph,
    TemporalEdge,
    TemporalGraph,
    UnknownEdgeError,
    VertexRangeError,
    active_at,
    edges_overlap,
    parse_edge_list,
    parse_temporal_graph,
    serialize_edge_list,
    serialize_temporal_graph,
    underlying_graph,
    verify_matching,
)

# a=0, b=1, c=2, d=3
FOUR_VERTEX = """\
# a b c d
4 6
0 1 7.0 (0,2)
0 2 8.0 (2,4)
2 3 5.0 (2,3)
"""


def edge(u, v, ivs, w=1.0, id=0):
    return TemporalEdge(id, u, v, w, tuple(Interval(*iv) for iv in ivs))


def test_parse_minimal():
    g = parse_temporal_graph("3 6\n0 1 7.0 (0,2)\n")
    assert (g.n_vertices, g.lifetime) == (3, 6)
    assert len(g.edges) == 1
    assert g.edges[0].weight == 7.0
    assert g.edges[0].intervals == (Interval(0, 2),)


def test_parse_accepts_bytes_comments_and_spacing():
    g = parse_temporal_graph(b"# header next\n2 5\n\n 1 0 2.5 ( 3 , 5 )(0,1)\n")
    e = g.edges[0]
    assert (e.u, e.v) == (0, 1)
    assert e.intervals == (Interval(0, 1), Interval(3, 5))


@pytest.mark.parametrize("text, kind", [
    ("3 6\n0 0 1.0 (0,1)\n", SelfLoopError),
    ("3 6\n0 1 1.0 (2,2)\n", EmptyIntervalError),
    ("3 6\n0 1 1.0 (3,2)\n", EmptyIntervalError),
    ("3 6\n0 1 1.0 (0,3) (2,4)\n", OverlappingIntervalsError),
    ("3 6\n0 1 1.0 (4,7)\n", IntervalRangeError),
    ("3 6\n0 1 1.0 (-1,2)\n", IntervalRangeError),
    ("3 6\n0 1 1.0 (0,1)\n1 0 2.0 (3,4)\n", DuplicateEdgeError),
    ("3 6\n0 1 -1.0 (0,1)\n", NegativeWeightError),
    ("3 6\n0 1 nan (0,1)\n", InvalidWeightError),
    ("3 6\n0 1 1.0\n", MissingIntervalsError),
    ("3 6\n0 5 1.0 (0,1)\n", VertexRangeError),
    ("3 6\n0 1 1.0 (0,1\n", FormatSyntaxError),
    ("3 6\n0 x 1.0 (0,1)\n", FormatSyntaxError),
    ("3\n", FormatSyntaxError),
    ("", FormatSyntaxError),
])
def test_parse_error_kinds(text, kind):
    with pytest.raises(kind):
        parse_temporal_graph(text)


def test_error_kinds_are_distinct():
    kinds = [SelfLoopError, EmptyIntervalError, OverlappingIntervalsError, IntervalRangeError,
             DuplicateEdgeError, NegativeWeightError, FormatSyntaxError]
    for a in kinds:
        for b in kinds:
            if a is not b:
                assert not issubclass(a, b)


def test_syntax_error_reports_line_and_column():
    with pytest.raises(FormatSyntaxError) as info:
        parse_temporal_graph("3 6\n# c\n0 1 1.0 (0,1) oops\n")
    assert info.value.line == 3
    assert info.value.column == 15
    assert "line 3, column 15" in str(info.value)


def test_semantic_error_reports_line():
    with pytest.raises(SelfLoopError) as info:
        parse_temporal_graph("3 6\n0 1 1.0 (0,1)\n2 2 1.0 (0,1)\n")
    assert info.value.line == 3


def test_adjacent_intervals_are_disjoint():
    # half-open intervals that touch do not overlap
    g = parse_temporal_graph("2 2\n0 1 1.0 (0,1) (1,2)\n")
    assert len(g.edges[0].intervals) == 2


def test_graph_constructor_checks_ids_and_lifetime():
    with pytest.raises(ValueError):
        TemporalGraph(2, 5, (edge(0, 1, [(0, 1)], id=3),))
    with pytest.raises(IntervalRangeError):
        TemporalGraph(2, 5, (edge(0, 1, [(0, 6)]),))


def test_underlying_graph_shape():
    g = parse_temporal_graph(FOUR_VERTEX)
    assert underlying_graph(g).edges == {(0, 1), (0, 2), (2, 3)}
    assert underlying_graph(g).n_vertices == 4


def test_underlying_graph_edgeless():
    g = parse_temporal_graph("4 3\n")
    gu = underlying_graph(g)
    assert gu.n_vertices == 4 and not gu.edges


def test_underlying_graph_collapses_intervals():
    g = parse_temporal_graph("2 9\n0 1 1.0 (0,1) (3,4) (6,8)\n")
    assert underlying_graph(g).edges == {(0, 1)}


@given(temporal_graphs())
def test_underlying_degree_counts_temporal_edges(g):
    gu = underlying_graph(g)
    assert len(gu.edges) == len(g.edges)
    for v in range(g.n_vertices):
        assert gu.degree(v) == len(g.incident[v])


def test_overlap_boundary_touch():
    assert not edges_overlap(edge(0, 1, [(0, 2)]), edge(0, 2, [(2, 4)]))


def test_overlap_shared_vertex_and_time():
    assert edges_overlap(edge(0, 2, [(2, 3)]), edge(2, 3, [(2, 4)]))


def test_overlap_needs_shared_endpoint():
    assert not edges_overlap(edge(0, 1, [(0, 5)]), edge(2, 3, [(0, 5)]))


@given(temporal_graphs(max_T=32))
def test_overlap_matches_timestep_enumeration(g):
    for e1 in g.edges:
        for e2 in g.edges:
            if e1.id != e2.id:
                assert edges_overlap(e1, e2) == overlap_by_enumeration(e1, e2)
                assert edges_overlap(e1, e2) == edges_overlap(e2, e1)


@given(temporal_graphs(max_T=20))
def test_snapshots_agree_with_intervals(g):
    for t in range(g.lifetime):
        snap = {e.id for e in active_at(g, t)}
        assert snap == {e.id for e in g.edges if any(s <= t < f for s, f in e.intervals)}


@given(temporal_graphs(max_T=20))
def test_maximal_runs_respect_half_lifetime(g):
    # disjoint intervals in [0, T) merge into at most ceil(T/2) separated runs
    for e in g.edges:
        runs = 1 + sum(1 for a, b in zip(e.intervals, e.intervals[1:]) if a.finish < b.start)
        assert runs <= math.ceil(g.lifetime / 2)


def test_verify_matching_examples():
    g = parse_temporal_graph(FOUR_VERTEX)
    assert verify_matching(g, [])
    assert verify_matching(g, [0, 1])
    assert not verify_matching(g, [1, 2])
    with pytest.raises(UnknownEdgeError):
        verify_matching(g, [7])


def test_serialize_empty():
    g = parse_temporal_graph("0 0")
    assert serialize_temporal_graph(g) == "0 0\n"


def test_serialize_canonical_form():
    g = parse_temporal_graph("3 9\n2 1 0.1 (5,6) (0,2)\n1 0 3 (1,2)\n")
    assert serialize_temporal_graph(g) == "3 9\n0 1 3.0 (1,2)\n1 2 0.1 (0,2) (5,6)\n"


@settings(max_examples=200)
@given(temporal_graphs(quarter=False) | temporal_graphs())
def test_round_trip(g):
    text = serialize_temporal_graph(g)
    assert parse_temporal_graph(text) == g
    assert serialize_temporal_graph(parse_temporal_graph(text)) == text


@given(st.floats(min_value=0, max_value=1e300, allow_nan=False))
def test_weight_text_round_trip_is_exact(w):
    g = TemporalGraph.from_edges(2, 1, [(0, 1, w, [(0, 1)])])
    assert parse_temporal_graph(serialize_temporal_graph(g)).edges[0].weight == w


def test_edge_list_round_trip():
    g = StaticGraph.from_edges(4, [(2, 1), (0, 3)])
    assert parse_edge_list(serialize_edge_list(g)) == g
    with pytest.raises(SelfLoopError):
        parse_edge_list("3\n1 1\n")
    with pytest.raises(DuplicateEdgeError):
        parse_edge_list("3\n0 1\n1 0\n")
