"""Exit criteria.  Each test prints one [PASS]/[FAIL] line in the summary."""

import csv
import json
import time

import networkx as nx
import numpy as np
import pytest

from helpers import max_independent_set_size, random_temporal_graph
from timedmatch.cli import BENCH_COLUMNS, main
from timedmatch.generator import GenSpec, generate, random_static_graph
from timedmatch.mwis import mwis_bruteforce, mwis_treedp
from timedmatch.overlap import build_overlap_graph
from timedmatch.reduction import map_is_to_matching, map_matching_to_is, reduce_is_to_matching
from timedmatch.solver import matching_bruteforce, max_cardinality_solve, solve
from timedmatch.temporal import (
    DuplicateEdgeError,
    EmptyIntervalError,
    FormatSyntaxError,
    IntervalRangeError,
    NegativeWeightError,
    OverlappingIntervalsError,
    SelfLoopError,
    StaticGraph,
    parse_temporal_graph,
    serialize_temporal_graph,
    underlying_graph,
    verify_matching,
)
from timedmatch.treedec import (
    NodeKind,
    decompose_exact,
    decompose_heuristic,
    lift_decomposition,
    make_nice,
    validate_decomposition,
    validate_nice,
)


@pytest.mark.acceptance("AC1 solve equals brute force on 500 random temporal graphs")
def test_ac1_oracle_equivalence(record_property):
    rng = np.random.default_rng(20240601)
    start = time.perf_counter()
    for _ in range(500):
        g = random_temporal_graph(rng, max_n=10, max_edges=14, max_T=12)
        got = solve(g).matching
        want = matching_bruteforce(g)
        assert got.total_weight == want.total_weight
        assert got == want
        assert verify_matching(g, got.edge_ids) and verify_matching(g, want.edge_ids)
    elapsed = time.perf_counter() - start
    record_property("seconds", round(elapsed, 2))
    assert elapsed < 60


@pytest.mark.acceptance("AC2 tree DP equals brute-force MWIS under all decompositions")
def test_ac2_mwis_dp(record_property):
    rng = np.random.default_rng(7)
    with_joins = 0
    for _ in range(500):
        n = int(rng.integers(1, 17))
        g = random_static_graph(rng, n, float(rng.uniform(0.05, 0.6)), weights="quarter")
        want = mwis_bruteforce(g)
        heuristic = decompose_heuristic(g, "min-fill")
        decomps = [heuristic, decompose_heuristic(g, "min-degree"), decompose_exact(g, heuristic.width)]
        joined = False
        for td in decomps:
            ntd = make_nice(td)
            joined |= ntd.count(NodeKind.JOIN) > 0
            assert mwis_treedp(g, ntd) == want
        with_joins += joined
    record_property("instances with join nodes", with_joins)
    assert with_joins >= 100


@pytest.mark.acceptance("AC3 reduction preserves solution size and its invariants")
def test_ac3_reduction():
    rng = np.random.default_rng(3)
    for _ in range(300):
        n = int(rng.integers(0, 13))
        g = random_static_graph(rng, n, float(rng.uniform(0.1, 0.7)))
        ri = reduce_is_to_matching(g, 1)
        t = ri.temporal
        n0 = sum(1 for v in range(n) if g.degree(v) == 0)
        assert t.lifetime == len(g.edges) + n0
        gu = underlying_graph(t)
        nxg = nx.Graph(list(gu.edges))
        nxg.add_nodes_from(range(gu.n_vertices))
        assert nx.is_tree(nxg)
        assert all(iv.finish - iv.start == 1 for e in t.edges for iv in e.intervals)

        alpha = max_independent_set_size(g)
        matching = max_cardinality_solve(t).matching
        assert len(matching) == alpha
        back = map_matching_to_is(ri, matching.edge_ids)
        assert len(back) == alpha and g.is_independent(back)
        best_is = mwis_bruteforce(unit_weighted(g)).solution
        forward = map_is_to_matching(ri, best_is)
        assert len(forward) == len(best_is) == alpha
        assert verify_matching(t, forward)


def unit_weighted(g):
    return StaticGraph.from_edges(g.n_vertices, g.edges, [1.0] * g.n_vertices)


@pytest.mark.acceptance("AC4 lifted decomposition is valid and within (w+1)*D-1")
def test_ac4_lift_bound(record_property):
    checked = 0
    worst_slack = None
    for seed in range(40):
        for k in (1, 2, 3):
            g = generate(GenSpec(seed=seed, n_vertices=14, lifetime=10, family="partial-k-tree",
                                 k=k, max_degree=4, interval_density=0.5))
            assert g.max_degree() <= 4
            gu = underlying_graph(g)
            og = build_overlap_graph(g)
            for td_u in (decompose_heuristic(gu), decompose_exact(gu, k)):
                assert validate_decomposition(td_u, gu) == []
                lifted = lift_decomposition(td_u, g, og)
                assert validate_decomposition(lifted, og.graph) == []
                bound = (td_u.width + 1) * gu.max_degree() - 1
                assert lifted.width <= bound
                slack = bound - lifted.width
                worst_slack = slack if worst_slack is None else min(worst_slack, slack)
            checked += 1
    record_property("instances", checked)
    record_property("smallest slack to bound", worst_slack)
    assert checked >= 100


@pytest.mark.acceptance("AC5 every decomposition path yields a valid decomposition")
def test_ac5_decomposition_validity():
    rng = np.random.default_rng(55)
    for _ in range(500):
        g = random_temporal_graph(rng, max_n=10, max_edges=16, max_T=10)
        og = build_overlap_graph(g).graph
        gu = underlying_graph(g)
        produced = []
        for target in (og, gu):
            for strategy in ("min-fill", "min-degree"):
                produced.append((decompose_heuristic(target, strategy), target))
            h = produced[-2][0]
            produced.append((decompose_exact(target, h.width), target))
        produced.append((lift_decomposition(decompose_heuristic(gu), g, build_overlap_graph(g)), og))
        for td, target in produced:
            assert validate_decomposition(td, target) == []
            ntd = make_nice(td)
            assert validate_nice(ntd, target) == []
            assert ntd.width == td.width


@pytest.mark.acceptance("AC6 bench scaling on the lifted tree family finishes within 120 s")
def test_ac6_scaling(tmp_path, capsys, record_property):
    sizes = [100, 200, 400, 800]
    grid = [{"seed": 1000 + m, "n_vertices": m + 1, "lifetime": 20, "family": "tree",
             "max_degree": 3, "lift": True} for m in sizes]
    grid_path = tmp_path / "grid.json"
    grid_path.write_text(json.dumps(grid))
    out = tmp_path / "scaling.csv"
    start = time.perf_counter()
    assert main(["bench", str(grid_path), "--repetitions", "3", "-o", str(out)]) == 0
    elapsed = time.perf_counter() - start
    capsys.readouterr()

    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == BENCH_COLUMNS
    dp = {}
    for row in rows:
        dp.setdefault(int(row["n_edges"]), []).append(float(row["dp_us"]))
        assert int(row["width"]) <= int(row["lift_bound"]) == 5
    medians = [float(np.median(dp[m])) for m in sizes]
    ratios = [round(b / a, 2) for a, b in zip(medians, medians[1:])]
    record_property("lifted widths", sorted({int(r["width"]) for r in rows}))
    record_property("median dp us", [round(x) for x in medians])
    record_property("dp ratio per doubling", ratios)
    record_property("seconds", round(elapsed, 2))
    assert elapsed < 120


MALFORMED = [
    ("3 6\n0 0 1.0 (0,1)\n", SelfLoopError),
    ("3 6\n0 1 1.0 (2,2)\n", EmptyIntervalError),
    ("3 6\n0 1 1.0 (0,3) (2,4)\n", OverlappingIntervalsError),
    ("3 6\n0 1 1.0 (4,7)\n", IntervalRangeError),
    ("3 6\n0 1 1.0 (0,1)\n1 0 2.0 (3,4)\n", DuplicateEdgeError),
    ("3 6\n0 1 -1.0 (0,1)\n", NegativeWeightError),
    ("3 6\n0 1 1.0 (0,1\n", FormatSyntaxError),
]


@pytest.mark.acceptance("AC7 serialization round trip and malformed-input error kinds")
def test_ac7_round_trip():
    rng = np.random.default_rng(77)
    families = ["tree", "partial-k-tree", "bounded-degree", "star"]
    for i in range(1000):
        if i % 2:
            g = random_temporal_graph(rng, max_n=12, max_edges=20, max_T=30)
        else:
            g = generate(GenSpec(seed=i, n_vertices=int(rng.integers(1, 15)), lifetime=int(rng.integers(2, 30)),
                                 family=families[(i // 2) % 4]))
        text = serialize_temporal_graph(g)
        assert parse_temporal_graph(text) == g
        assert serialize_temporal_graph(parse_temporal_graph(text)) == text
    for text, kind in MALFORMED:
        with pytest.raises(kind):
            parse_temporal_graph(text)
