"""Command-line entry point: ``isnad-sna <subcommand> ...``.

``ingest`` parses the corpus files into a graph snapshot; every other
subcommand reads that snapshot and writes a table to stdout (or ``-o``).
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from . import __version__
from .centrality import (
    DEGREE_MEASURES,
    BetweennessConfig,
    PageRankConfig,
    ScoreTable,
    betweenness,
    pagerank,
    top_k,
    weighted_degree,
)
from .community import LouvainConfig, Partition, louvain
from .corpus_model import NarratorTable
from .era_locality import ERAS, era_city_table
from .errors import DomainError, IsnadError
from .graph_build import PAIR_DEDUP_MODES, Snapshot, build_graph, load_snapshot, save_snapshot
from .ingest import ChainOrder, accepted_records, parse_hadith_records, parse_narrators, validate_corpus
from .layout_export import (
    LayoutConfig,
    dumps_positions,
    export_dot,
    export_edgelist,
    export_gexf,
    fr_layout,
)
from .topology import (
    DIRECTIONS,
    avg_path_length,
    degree_distribution,
    fit_power_law,
    global_clustering,
    largest_component,
    node_degrees,
)

MEASURES = ("pagerank", "betweenness") + DEGREE_MEASURES
DEFAULT_SNAPSHOT = "graph.snap"


@dataclass
class PipelineConfig:
    narrators: str | None = None
    hadith: str | None = None
    graph: str = DEFAULT_SNAPSHOT
    chain_order: ChainOrder = ChainOrder.COMPILER_FIRST
    pair_dedup: str = "record"
    output_dir: str = "."


def thread_cap() -> int:
    """Parallelism cap from ``ISNAD_THREADS``; all current algorithms run single-threaded."""
    raw = os.environ.get("ISNAD_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"ISNAD_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"ISNAD_THREADS must be a positive integer, got {raw!r}")
    return value


# -- rendering ---------------------------------------------------------------
# Each subcommand's stdout is produced by one of these; ``report`` stitches
# the same functions together so the combined document cannot drift.


def fmt_score(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _table(header: Sequence[str], rows: Sequence[Sequence], fmt: str = "csv") -> str:
    if fmt == "md":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def stats_warnings(snapshot: Snapshot) -> list[str]:
    warnings = list(snapshot.report.defect_lines())
    summary = snapshot.summary()
    if summary.cycle_edges:
        warnings.append(f"graph is not acyclic: {len(summary.cycle_edges)} edge(s) lie on cycles")
    if summary.unknown_generation_count:
        warnings.append(f"{summary.unknown_generation_count} narrator(s) have no generation")
    return warnings


def render_stats(snapshot: Snapshot, fmt: str = "csv") -> str:
    s = snapshot.summary()
    fraction = s.multi_chain_count / s.hadith_count if s.hadith_count else 0.0
    rows = [
        ("hadith_count", s.hadith_count),
        ("narrator_count", s.narrator_count),
        ("multi_chain_count", s.multi_chain_count),
        ("multi_chain_percent", f"{100 * fraction:.2f}"),
        ("edge_count", s.edge_count),
    ]
    rows += [(f"era{e}_narrators", s.per_era_narrator_counts.get(e, 0)) for e in ERAS]
    rows += [
        ("unknown_generation", s.unknown_generation_count),
        ("cycle_edge_count", len(s.cycle_edges)),
        ("is_dag", str(s.is_dag).lower()),
        ("excluded_records", len(snapshot.report.excluded_keys)),
    ]
    return _table(("statistic", "value"), rows, fmt)


def score_table(snapshot: Snapshot, measure: str, pr_config: PageRankConfig,
                normalized: bool = False) -> ScoreTable:
    graph = snapshot.graph
    if measure == "pagerank":
        return pagerank(graph, pr_config)
    if measure == "betweenness":
        return betweenness(graph, BetweennessConfig(normalized=normalized))
    if measure in DEGREE_MEASURES:
        return weighted_degree(graph)[measure]
    raise DomainError(f"unknown measure {measure!r}")


def render_scores(snapshot: Snapshot, table: ScoreTable, top: int | None, fmt: str = "csv") -> str:
    k = len(table) if top is None else top
    rows = [
        (rank, nid, snapshot.graph.name(nid), fmt_score(score))
        for rank, (nid, score) in enumerate(top_k(table, k), start=1)
    ]
    return _table(("rank", "id", "name", "score"), rows, fmt)


def _partition_line(part: Partition, fmt: str) -> str:
    line = f"community_count={part.community_count} modularity={part.modularity:.6f}\n"
    return "\n" + line if fmt == "md" else "# " + line


def render_partition(snapshot: Snapshot, part: Partition, fmt: str = "csv") -> str:
    rows = [(nid, snapshot.graph.name(nid), c) for nid, c in sorted(part.assignment.items())]
    return _table(("id", "name", "community"), rows, fmt) + _partition_line(part, fmt)


def render_partition_summary(part: Partition, fmt: str = "csv") -> str:
    rows = [(c, len(m)) for c, m in part.members().items()]
    return _table(("community", "size"), rows, fmt) + _partition_line(part, fmt)


def render_era_table(snapshot: Snapshot, min_total: int, fmt: str = "csv") -> str:
    table = era_city_table(NarratorTable(snapshot.graph.narrators.values()), min_total)
    rows = [
        (city, *(row[e] for e in ERAS), sum(row.values())) for city, row in table.rows.items()
    ]
    return _table(("city", "era1", "era2", "era3", "era4", "total"), rows, fmt)


def render_degree_dist(snapshot: Snapshot, direction: str, loglog: bool, fmt: str = "csv") -> str:
    hist = degree_distribution(snapshot.graph, direction)
    header = ("k", "count", "log10k", "log10count") if loglog else ("k", "count")
    rows = [tuple(fmt_score(c) if isinstance(c, float) else c for c in r)
            for r in hist.rows(loglog)]
    return _table(header, rows, fmt)


def render_smallworld(snapshot: Snapshot, fmt: str = "csv") -> str:
    graph = snapshot.graph
    rows = [
        ("largest_component_size", len(largest_component(graph))),
        ("global_clustering", fmt_score(global_clustering(graph))),
        ("avg_path_length", fmt_score(avg_path_length(graph))),
    ]
    return _table(("metric", "value"), rows, fmt)


def render_powerlaw(snapshot: Snapshot, xmin: int, direction: str, fmt: str = "csv",
                    method: str = "mle") -> str:
    fit = fit_power_law(node_degrees(snapshot.graph, direction), xmin, method)
    return _table(("direction", "alpha", "xmin", "n_tail"),
                  [(direction, fmt_score(fit.alpha), fit.xmin, fit.n_tail)], fmt)


def render_report(snapshot: Snapshot, top: int = 10, seed: int = 42, resolution: float = 1.0,
                  min_total: int = 5) -> str:
    parts = ["# Narrator network report\n", "## Corpus summary\n", render_stats(snapshot, "md")]
    pr_config = PageRankConfig()
    for measure in MEASURES:
        table = score_table(snapshot, measure, pr_config)
        parts += [f"\n## Top {top} by {measure}\n", render_scores(snapshot, table, top, "md")]
    part = louvain(snapshot.graph, LouvainConfig(resolution=resolution, seed=seed))
    parts += ["\n## Communities\n", render_partition_summary(part, "md")]
    parts += [f"\n## Narrators by city and era (min total {min_total})\n",
              render_era_table(snapshot, min_total, "md")]
    return "".join(parts)


# -- argument parsing ---------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isnad-sna", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    snap = argparse.ArgumentParser(add_help=False)
    snap.add_argument("-g", "--graph", default=DEFAULT_SNAPSHOT,
                      help=f"graph snapshot to read (default: {DEFAULT_SNAPSHOT})")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("ingest", help="parse corpus files into a graph snapshot")
    p.add_argument("--narrators", required=True, help="narrator CSV (id,name,generation,city)")
    p.add_argument("--hadith", required=True, help="hadith records, JSON Lines")
    p.add_argument("--chain-order", choices=[o.value for o in ChainOrder],
                   default=ChainOrder.COMPILER_FIRST.value)
    p.add_argument("--pair-dedup", choices=PAIR_DEDUP_MODES, default="record")
    p.add_argument("--strict", action="store_true", help="fail on any validation defect")
    p.add_argument("-o", "--output", default=DEFAULT_SNAPSHOT, help="snapshot path to write")

    p = sub.add_parser("stats", parents=[snap, out], help="corpus summary statistics")
    p.add_argument("--format", choices=("csv", "md"), default="csv")

    p = sub.add_parser("centrality", parents=[snap, out], help="centrality scores")
    p.add_argument("--measure", choices=MEASURES, default="pagerank")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--unweighted", action="store_true", help="PageRank ignores edge weights")
    p.add_argument("--normalized", action="store_true", help="normalise betweenness")
    p.add_argument("--top", type=_positive_int, default=None)
    p.add_argument("--format", choices=("csv", "tsv", "md"), default="csv")

    p = sub.add_parser("communities", parents=[snap, out], help="Louvain communities")
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("csv", "md"), default="csv")

    p = sub.add_parser("era-table", parents=[snap, out], help="narrators by city and era")
    p.add_argument("--min-total", type=_positive_int, default=5)
    p.add_argument("--format", choices=("csv", "md"), default="csv")

    p = sub.add_parser("degree-dist", parents=[snap, out], help="degree histogram")
    p.add_argument("--direction", choices=DIRECTIONS, default="total")
    p.add_argument("--loglog", action="store_true")
    p.add_argument("--format", choices=("csv", "md"), default="csv")

    p = sub.add_parser("smallworld", parents=[snap, out], help="clustering and path length")
    p.add_argument("--format", choices=("csv", "md"), default="csv")

    p = sub.add_parser("powerlaw", parents=[snap, out], help="power-law exponent of degrees")
    p.add_argument("--xmin", type=int, default=1)
    p.add_argument("--method", choices=("mle", "approx"), default="mle")
    p.add_argument("--direction", choices=DIRECTIONS, default="total")
    p.add_argument("--format", choices=("csv", "md"), default="csv")

    p = sub.add_parser("layout", parents=[snap, out], help="Fruchterman-Reingold positions")
    p.add_argument("--iterations", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--area", type=float, default=1.0)

    p = sub.add_parser("export", parents=[snap, out], help="export for external tools")
    p.add_argument("--format", choices=("gexf", "dot", "edgelist"), default="gexf")
    p.add_argument("--with-layout", action="store_true")
    p.add_argument("--with-communities", action="store_true")
    p.add_argument("--with-centrality", default="",
                   help="comma-separated measures, e.g. pagerank,betweenness")
    p.add_argument("--iterations", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--resolution", type=float, default=1.0)

    p = sub.add_parser("report", parents=[snap, out], help="combined markdown report")
    p.add_argument("--top", type=_positive_int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--min-total", type=_positive_int, default=5)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn(lines: Sequence[str]) -> None:
    for line in lines:
        print(f"warning: {line}", file=sys.stderr)


def _cmd_ingest(args) -> int:
    config = PipelineConfig(narrators=args.narrators, hadith=args.hadith, graph=args.output,
                            chain_order=ChainOrder.parse(args.chain_order),
                            pair_dedup=args.pair_dedup)
    table = parse_narrators(config.narrators)
    records = parse_hadith_records(config.hadith, config.chain_order)
    report = validate_corpus(records, table)
    if not report.is_clean:
        if args.strict:
            sys.stderr.write(report.render())
            return 1
        _warn(report.defect_lines())
    graph = build_graph(accepted_records(records, report), table, config.pair_dedup)
    save_snapshot(Snapshot(graph, report, config.pair_dedup), config.graph)
    print(f"records: {report.record_count}")
    print(f"nodes: {len(graph)}")
    print(f"edges: {len(graph.edges)}")
    return 0


def _cmd_export(args, snapshot: Snapshot) -> str:
    graph = snapshot.graph
    if args.format == "dot":
        return export_dot(graph)
    if args.format == "edgelist":
        return export_edgelist(graph)
    measures = [m.strip() for m in args.with_centrality.split(",") if m.strip()]
    pr_config = PageRankConfig()
    scores = [score_table(snapshot, m, pr_config) for m in measures]
    partition = positions = None
    if args.with_communities:
        partition = louvain(graph, LouvainConfig(resolution=args.resolution, seed=args.seed))
    if args.with_layout:
        positions = fr_layout(graph, LayoutConfig(iterations=args.iterations, seed=args.seed))
    return export_gexf(graph, scores, partition, positions)


def _dispatch(args) -> int:
    thread_cap()
    if args.command == "ingest":
        return _cmd_ingest(args)
    snapshot = load_snapshot(args.graph)
    cmd = args.command
    if cmd == "stats":
        _warn(stats_warnings(snapshot))
        text = render_stats(snapshot, args.format)
    elif cmd == "centrality":
        pr_config = PageRankConfig(args.damping, args.tolerance, args.max_iter,
                                   use_edge_weights=not args.unweighted)
        table = score_table(snapshot, args.measure, pr_config, args.normalized)
        if not table.converged:
            _warn([f"pagerank did not converge in {table.iterations} iterations"])
        text = render_scores(snapshot, table, args.top, args.format)
    elif cmd == "communities":
        part = louvain(snapshot.graph, LouvainConfig(resolution=args.resolution, seed=args.seed))
        text = render_partition(snapshot, part, args.format)
    elif cmd == "era-table":
        text = render_era_table(snapshot, args.min_total, args.format)
    elif cmd == "degree-dist":
        text = render_degree_dist(snapshot, args.direction, args.loglog, args.format)
    elif cmd == "smallworld":
        text = render_smallworld(snapshot, args.format)
    elif cmd == "powerlaw":
        text = render_powerlaw(snapshot, args.xmin, args.direction, args.format, args.method)
    elif cmd == "layout":
        config = LayoutConfig(iterations=args.iterations, seed=args.seed, area=args.area)
        text = dumps_positions(fr_layout(snapshot.graph, config))
    elif cmd == "export":
        text = _cmd_export(args, snapshot)
    elif cmd == "report":
        text = render_report(snapshot, args.top, args.seed, args.resolution, args.min_total)
    else:  # pragma: no cover - argparse restricts choices
        raise AssertionError(cmd)
    _emit(text, args.output)
    return 0


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (IsnadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
