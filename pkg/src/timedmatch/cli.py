"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 malformed input, 3 infeasible
request or size limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .generator import FAMILIES, GenSpec, InfeasibleSpecError, generate
from .mwis import SizeLimitError
from .overlap import build_overlap_graph, serialize_static_graph
from .reduction import labels_to_json, reduce_is_to_matching
from .solver import SOLVE_STRATEGIES, TimedMatching, matching_bruteforce, solve
from .temporal import (
    TemporalGraph,
    TemporalGraphError,
    parse_edge_list,
    parse_temporal_graph,
    serialize_temporal_graph,
    underlying_graph,
)
from .treedec import (
    STRATEGIES,
    BudgetExhausted,
    DecompositionError,
    decompose_heuristic,
    parse_pace,
    validate_decomposition,
    write_pace,
)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

BENCH_COLUMNS = [
    "instance", "rep", "seed", "family", "n", "n_edges", "lifetime", "max_degree",
    "strategy", "lifted", "overlap_vertices", "overlap_edges", "width",
    "underlying_width", "lift_bound", "td_nodes", "nice_nodes", "max_table_size",
    "overlap_us", "decompose_us", "nice_us", "dp_us", "extract_us",
    "weight", "cardinality",
]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def format_matching(g: TemporalGraph, m: TimedMatching) -> str:
    lines = [f"weight {m.total_weight!r}"]
    lines += [f"edge {g.edges[i].u} {g.edges[i].v}" for i in m.edge_ids]
    return "\n".join(lines) + "\n"


def _load_graph(path: str, unit_weights: bool = False) -> TemporalGraph:
    g = parse_temporal_graph(_read(path))
    return g.unit_weights() if unit_weights else g


def cmd_solve(args) -> int:
    g = _load_graph(args.input, args.unit_weights)
    report = solve(g, strategy=args.strategy, lift=args.lift, exact_budget=args.exact_budget)
    if args.json:
        _write(args.output, json.dumps(report.as_dict(), indent=1) + "\n")
    else:
        _write(args.output, format_matching(g, report.matching))
    if args.td_out:
        Path(args.td_out).write_text(write_pace(report.decomposition, report.n_overlap_vertices))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args.input, args.unit_weights)
    m = matching_bruteforce(g)
    if args.json:
        _write(args.output, json.dumps({"weight": m.total_weight, "edge_ids": list(m.edge_ids)}) + "\n")
    else:
        _write(args.output, format_matching(g, m))
    return EXIT_OK


def cmd_reduce(args) -> int:
    static = parse_edge_list(_read(args.input))
    ri = reduce_is_to_matching(static, args.k)
    _write(args.output, serialize_temporal_graph(ri.temporal))
    if args.labels:
        Path(args.labels).write_text(labels_to_json(ri), encoding="utf-8")
    print(f"k={args.k} k'={ri.k_prime} lifetime={ri.temporal.lifetime} "
          f"edges={len(ri.temporal.edges)}", file=sys.stderr)
    return EXIT_OK


def _spec_from_args(args) -> GenSpec:
    return GenSpec(
        seed=args.seed, n_vertices=args.n, lifetime=args.lifetime, family=args.family,
        k=args.k, max_degree=args.max_degree, edge_prob=args.edge_prob,
        interval_density=args.density, max_intervals_per_edge=args.max_intervals,
        weights=args.weights, weight_max=args.weight_max)


def cmd_generate(args) -> int:
    _write(args.output, serialize_temporal_graph(generate(_spec_from_args(args))))
    return EXIT_OK


def cmd_overlap(args) -> int:
    g = _load_graph(args.input)
    _write(args.output, serialize_static_graph(build_overlap_graph(g).graph))
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _load_graph(args.input)
    target = build_overlap_graph(g).graph if args.graph == "overlap" else underlying_graph(g)
    td = decompose_heuristic(target, args.strategy)
    _write(args.output, write_pace(td, target.n_vertices))
    return EXIT_OK


def cmd_validate(args) -> int:
    g = _load_graph(args.input)
    print(f"temporal graph ok: n={g.n_vertices} T={g.lifetime} edges={len(g.edges)} "
          f"max_degree={g.max_degree()}")
    if args.td is None:
        return EXIT_OK
    target = build_overlap_graph(g).graph if args.against == "overlap" else underlying_graph(g)
    td, declared = parse_pace(_read(args.td))
    problems = validate_decomposition(td, target)
    if declared != target.n_vertices:
        print(f"decomposition declares {declared} vertices, {args.against} graph has "
              f"{target.n_vertices}")
        return EXIT_INPUT
    for p in problems:
        print(f"violation [{p.kind}]: {p.message}")
    if problems:
        return EXIT_INPUT
    print(f"decomposition ok: width={td.width} bags={len(td.bags)}")
    return EXIT_OK


def bench_row(job) -> dict:
    index, rep, entry = job
    entry = dict(entry)
    strategy = entry.pop("strategy", "min-fill")
    lift = bool(entry.pop("lift", False))
    spec = GenSpec.from_dict(entry)
    g = generate(spec)
    r = solve(g, strategy=strategy, lift=lift)
    t = r.timings
    return {
        "instance": index, "rep": rep, "seed": spec.seed, "family": spec.family,
        "n": g.n_vertices, "n_edges": len(g.edges), "lifetime": g.lifetime,
        "max_degree": g.max_degree(), "strategy": strategy, "lifted": int(lift),
        "overlap_vertices": r.n_overlap_vertices, "overlap_edges": r.n_overlap_edges,
        "width": r.width,
        "underlying_width": -1 if r.underlying_width is None else r.underlying_width,
        "lift_bound": -1 if r.lift_bound is None else r.lift_bound,
        "td_nodes": r.td_nodes, "nice_nodes": r.nice_nodes,
        "max_table_size": r.max_table_size,
        "overlap_us": t["overlap"], "decompose_us": t["decompose"], "nice_us": t["nice"],
        "dp_us": t["dp"], "extract_us": t["extract"],
        "weight": r.matching.total_weight, "cardinality": len(r.matching),
    }


def run_bench(grid: list[dict], repetitions: int = 1, workers: int = 1) -> list[dict]:
    """One row per (grid entry, repetition), ordered by grid index then rep."""
    for entry in grid:
        rest = {k: v for k, v in entry.items() if k not in ("strategy", "lift")}
        GenSpec.from_dict(rest)
    jobs = [(i, r, entry) for i, entry in enumerate(grid) for r in range(repetitions)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(bench_row, jobs))
    return [bench_row(j) for j in jobs]


def write_bench_csv(rows: list[dict], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def cmd_bench(args) -> int:
    grid = json.loads(_read(args.grid))
    if not isinstance(grid, list):
        raise TemporalGraphError("bench grid must be a JSON list of generator specs")
    rows = run_bench(grid, args.repetitions, args.workers)
    if args.output in (None, "-"):
        write_bench_csv(rows, sys.stdout)
    else:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            write_bench_csv(rows, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="timedmatch", description="Maximum weighted 0-1 timed matching toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve an instance via the tree-decomposition DP")
    s.add_argument("input")
    s.add_argument("--strategy", choices=SOLVE_STRATEGIES, default="min-fill")
    s.add_argument("--lift", action="store_true",
                   help="decompose the underlying graph and lift it to the overlap graph")
    s.add_argument("--unit-weights", action="store_true")
    s.add_argument("--exact-budget", type=int, default=200_000)
    s.add_argument("--json", action="store_true", help="emit the full report as JSON")
    s.add_argument("--td-out", help="also write a PACE decomposition of the overlap graph")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="brute-force solve (at most 20 edges)")
    s.add_argument("input")
    s.add_argument("--unit-weights", action="store_true")
    s.add_argument("--json", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("reduce", help="reduce an independent-set instance to a temporal star")
    s.add_argument("input", help="static graph: '<n>' then '<u> <v>' lines")
    s.add_argument("--k", type=int, default=0)
    s.add_argument("-o", "--output")
    s.add_argument("--labels", help="write the label sidecar (JSON) here")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("generate", help="generate a random temporal graph")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lifetime", type=int, required=True)
    s.add_argument("--family", choices=FAMILIES, default="tree")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--max-degree", type=int)
    s.add_argument("--edge-prob", type=float, default=0.7)
    s.add_argument("--density", type=float, default=0.4)
    s.add_argument("--max-intervals", type=int, default=3)
    s.add_argument("--weights", choices=("unit", "quarter"), default="quarter")
    s.add_argument("--weight-max", type=float, default=8.0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("bench", help="run a benchmark grid and write CSV")
    s.add_argument("grid", help="JSON list of generator specs (optional keys: strategy, lift)")
    s.add_argument("--repetitions", type=int, default=1)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("validate", help="check a temporal graph and optionally a decomposition")
    s.add_argument("input")
    s.add_argument("--td", help="PACE decomposition to check")
    s.add_argument("--against", choices=("overlap", "underlying"), default="overlap")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("overlap", help="dump the edge-overlap graph")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_overlap)

    s = sub.add_parser("decompose", help="write a PACE decomposition")
    s.add_argument("input")
    s.add_argument("--graph", choices=("overlap", "underlying"), default="overlap")
    s.add_argument("--strategy", choices=STRATEGIES, default="min-fill")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_decompose)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TemporalGraphError, DecompositionError, json.JSONDecodeError,
            UnicodeDecodeError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (SizeLimitError, InfeasibleSpecError, BudgetExhausted) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
