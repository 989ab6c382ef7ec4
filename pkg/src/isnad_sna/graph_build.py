"""The edge-weighted "narrated to" graph and corpus summary statistics."""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .corpus_model import HadithRecord, Narrator, NarratorTable
from .errors import DomainError, IsnadError, ParseError, UnknownNarratorError, ValidationError
from .ingest import ValidationReport

PAIR_DEDUP_MODES = ("record", "chain")
SNAPSHOT_FORMAT = "isnad-sna-graph"
SNAPSHOT_VERSION = 1


class NarratorGraph:
    """Immutable directed graph over narrator ids.

    ``nodes`` is sorted lexicographically; a node's position in it is its
    dense handle, used by every numeric routine so that summation order is
    fixed. ``edges`` maps ``(teacher, student)`` to a positive weight.
    """

    def __init__(
        self,
        nodes: Iterable[str],
        edges: Mapping[tuple[str, str], int],
        narrators: Mapping[str, Narrator] | None = None,
    ):
        self.nodes: tuple[str, ...] = tuple(sorted(set(nodes)))
        self.index: Mapping[str, int] = MappingProxyType(
            {nid: i for i, nid in enumerate(self.nodes)}
        )
        clean: dict[tuple[str, str], int] = {}
        for (s, t), w in sorted(edges.items()):
            if s == t:
                raise ValidationError(f"self-loop on {s!r}")
            if s not in self.index or t not in self.index:
                raise ValidationError(f"edge ({s!r}, {t!r}) has an endpoint outside the node set")
            if int(w) != w or w < 1:
                raise ValidationError(f"edge ({s!r}, {t!r}) has non-positive weight {w!r}")
            clean[(s, t)] = int(w)
        self.edges: Mapping[tuple[str, str], int] = MappingProxyType(clean)
        meta = dict(narrators or {})
        self.narrators: Mapping[str, Narrator] = MappingProxyType(
            {nid: meta[nid] for nid in self.nodes if nid in meta}
        )

        n = len(self.nodes)
        succ: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        pred: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for (s, t), w in self.edges.items():
            succ[self.index[s]].append((self.index[t], w))
            pred[self.index[t]].append((self.index[s], w))
        self._succ = tuple(tuple(x) for x in succ)
        self._pred = tuple(tuple(x) for x in pred)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, nid: object) -> bool:
        return nid in self.index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NarratorGraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and dict(self.edges) == dict(other.edges)
            and dict(self.narrators) == dict(other.narrators)
        )

    def __repr__(self) -> str:
        return f"NarratorGraph({len(self.nodes)} nodes, {len(self.edges)} edges)"

    def successors(self, i: int) -> tuple[tuple[int, int], ...]:
        """(target handle, weight) pairs for out-edges of handle ``i``, ascending."""
        return self._succ[i]

    def predecessors(self, i: int) -> tuple[tuple[int, int], ...]:
        return self._pred[i]

    def name(self, nid: str) -> str:
        narrator = self.narrators.get(nid)
        return narrator.name if narrator else ""

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Source handles, target handles and weights in sorted edge order."""
        m = len(self.edges)
        src = np.empty(m, dtype=np.int64)
        dst = np.empty(m, dtype=np.int64)
        wts = np.empty(m, dtype=np.float64)
        for k, ((s, t), w) in enumerate(self.edges.items()):
            src[k], dst[k], wts[k] = self.index[s], self.index[t], w
        return src, dst, wts


@dataclass(frozen=True)
class DegreeStats:
    indegree: int
    outdegree: int
    weighted_indegree: int
    weighted_outdegree: int


@dataclass
class SummaryStats:
    hadith_count: int
    narrator_count: int
    multi_chain_count: int
    edge_count: int
    per_era_narrator_counts: dict[int, int]
    cycle_edges: list[tuple[str, str]]
    unknown_generation_count: int = 0

    @property
    def is_dag(self) -> bool:
        return not self.cycle_edges


def build_graph(
    records: Sequence[HadithRecord], table: NarratorTable, pair_dedup: str = "record"
) -> NarratorGraph:
    """Fold records into a weighted graph.

    With ``pair_dedup="record"`` an edge's weight is the number of distinct
    records in which the adjacent pair occurs; a pair shared by two chains of
    one record counts once. ``"chain"`` counts every chain occurrence.
    """
    if pair_dedup not in PAIR_DEDUP_MODES:
        raise DomainError(f"pair_dedup must be one of {PAIR_DEDUP_MODES}, got {pair_dedup!r}")
    nodes: set[str] = set()
    weights: Counter[tuple[str, str]] = Counter()
    for rec in records:
        for nid in rec.narrator_ids:
            if nid not in table:
                raise IsnadError(
                    f"internal invariant violated: narrator {nid!r} of record "
                    f"{'/'.join(rec.key)} is not in the narrator table"
                )
            nodes.add(nid)
        pairs = [p for chain in rec.chains for p in chain.pairs()]
        if pair_dedup == "record":
            pairs = set(pairs)
        weights.update(pairs)
    return NarratorGraph(nodes, weights, table.entries)


def degree_profile(graph: NarratorGraph, nid: str) -> DegreeStats:
    if nid not in graph:
        raise UnknownNarratorError(nid)
    i = graph.index[nid]
    out, inc = graph.successors(i), graph.predecessors(i)
    return DegreeStats(
        indegree=len(inc),
        outdegree=len(out),
        weighted_indegree=sum(w for _, w in inc),
        weighted_outdegree=sum(w for _, w in out),
    )


def cycle_edges(graph: NarratorGraph) -> list[tuple[str, str]]:
    """Edges lying inside a strongly connected component of size > 1."""
    n = len(graph)
    if n == 0 or not graph.edges:
        return []
    src, dst, _ = graph.edge_arrays()
    adj = csr_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    _, labels = connected_components(adj, directed=True, connection="strong")
    return [(s, t) for (s, t) in graph.edges if labels[graph.index[s]] == labels[graph.index[t]]]


def corpus_summary(
    graph: NarratorGraph, records: Sequence[HadithRecord], table: NarratorTable | None = None
) -> SummaryStats:
    lookup = table.entries if table is not None else graph.narrators
    per_era: Counter[int] = Counter()
    unknown = 0
    for nid in graph.nodes:
        narrator = lookup.get(nid)
        if narrator is None or narrator.era is None:
            unknown += 1
        else:
            per_era[narrator.era] += 1
    return SummaryStats(
        hadith_count=len(records),
        narrator_count=len(graph),
        multi_chain_count=sum(1 for r in records if len(r.chains) >= 2),
        edge_count=len(graph.edges),
        per_era_narrator_counts=dict(sorted(per_era.items())),
        cycle_edges=cycle_edges(graph),
        unknown_generation_count=unknown,
    )


@dataclass
class Snapshot:
    """A graph plus the corpus facts needed to report on it later."""

    graph: NarratorGraph
    report: ValidationReport = field(default_factory=ValidationReport)
    pair_dedup: str = "record"

    def summary(self) -> SummaryStats:
        stats = corpus_summary(self.graph, ())
        stats.hadith_count = self.report.record_count
        stats.multi_chain_count = self.report.multi_chain_count
        return stats


def dumps_snapshot(snapshot: Snapshot) -> str:
    graph = snapshot.graph
    nodes = []
    for nid in graph.nodes:
        meta = graph.narrators.get(nid)
        nodes.append({
            "id": nid,
            "name": meta.name if meta else "",
            "generation": meta.generation if meta else None,
            "city": meta.city if meta else "",
        })
    doc = {
        "format": SNAPSHOT_FORMAT,
        "version": SNAPSHOT_VERSION,
        "pair_dedup": snapshot.pair_dedup,
        "corpus": snapshot.report.to_dict(),
        "nodes": nodes,
        "edges": [[s, t, w] for (s, t), w in graph.edges.items()],
    }
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


def loads_snapshot(text: str, path=None) -> Snapshot:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid snapshot: {exc.msg}", path, exc.lineno) from None
    if not isinstance(doc, dict) or doc.get("format") != SNAPSHOT_FORMAT:
        raise ParseError("not a graph snapshot", path)
    if doc.get("version") != SNAPSHOT_VERSION:
        raise ParseError(f"unsupported snapshot version {doc.get('version')!r}", path)
    narrators = {
        n["id"]: Narrator(n["id"], n["name"], n["generation"], n["city"]) for n in doc["nodes"]
    }
    graph = NarratorGraph(
        narrators, {(s, t): w for s, t, w in doc["edges"]}, narrators
    )
    return Snapshot(graph, ValidationReport.from_dict(doc["corpus"]), doc["pair_dedup"])


def save_snapshot(snapshot: Snapshot, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_snapshot(snapshot))


def load_snapshot(path: str | os.PathLike) -> Snapshot:
    with open(path, encoding="utf-8") as fh:
        return loads_snapshot(fh.read(), path)
