"""Fruchterman-Reingold layout and GEXF / DOT / edge-list writers."""

from __future__ import annotations

import colorsys
import csv
import io
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .centrality import ScoreTable
from .community import Partition
from .errors import DomainError, ParseError, ValidationError
from .graph_build import NarratorGraph

GEXF_NS = "http://gexf.net/1.2"
VIZ_NS = "http://gexf.net/1.2/viz"
XSI_NS = "http://www.w3.org/2001/XMLSchema-instance"
GEXF_SCHEMA_LOCATION = "http://gexf.net/1.2 http://gexf.net/1.2/gexf.xsd"

NodePositions = dict[str, tuple[float, float]]


@dataclass(frozen=True)
class LayoutConfig:
    iterations: int = 100
    area: float = 1.0
    spacing: float = 1.0
    seed: int = 42

    def __post_init__(self) -> None:
        if self.iterations < 0:
            raise DomainError(f"iterations must be >= 0, got {self.iterations}")
        if not self.area > 0:
            raise DomainError(f"area must be positive, got {self.area}")
        if not self.spacing > 0:
            raise DomainError(f"spacing must be positive, got {self.spacing}")

    @property
    def half_width(self) -> float:
        return math.sqrt(self.area) / 2.0


def initial_positions(n: int, config: LayoutConfig) -> np.ndarray:
    rng = np.random.default_rng(config.seed)
    h = config.half_width
    return rng.uniform(-h, h, size=(n, 2))


def fr_layout(graph: NarratorGraph, config: LayoutConfig = LayoutConfig()) -> NodePositions:
    """Exact all-pairs Fruchterman-Reingold in a square frame centred on the origin.

    Optimal distance k = spacing * sqrt(area / N); attraction d^2/k along
    edges, repulsion k^2/d between every pair. The temperature cools
    linearly from 0.1 * sqrt(area) towards 0 and caps each step.
    """
    n = len(graph)
    if n == 0:
        raise DomainError("layout needs a non-empty graph")
    pos = initial_positions(n, config)
    if n == 1 or config.iterations == 0:
        return _as_positions(graph, pos)

    k = config.spacing * math.sqrt(config.area / n)
    h = config.half_width
    src, dst, _ = graph.edge_arrays()
    t0 = 0.1 * math.sqrt(config.area)
    for it in range(config.iterations):
        temperature = t0 * (1.0 - it / config.iterations)
        delta = pos[:, None, :] - pos[None, :, :]
        dist2 = np.einsum("ijk,ijk->ij", delta, delta)
        np.fill_diagonal(dist2, 1.0)
        np.maximum(dist2, 1e-18, out=dist2)
        # repulsion: unit vector * k^2/d == delta * k^2/d^2; delta's diagonal is zero
        disp = np.einsum("ijk,ij->ik", delta, (k * k) / dist2)
        if len(src):
            ed = pos[src] - pos[dst]
            ed_len = np.maximum(np.sqrt((ed ** 2).sum(axis=1)), 1e-9)
            pull = ed * (ed_len / k)[:, None]  # unit vector * d^2/k
            np.add.at(disp, src, -pull)
            np.add.at(disp, dst, pull)
        length = np.maximum(np.sqrt((disp ** 2).sum(axis=1)), 1e-12)
        step = np.minimum(length, temperature) / length
        pos = np.clip(pos + disp * step[:, None], -h, h)
    return _as_positions(graph, pos)


def _as_positions(graph: NarratorGraph, pos: np.ndarray) -> NodePositions:
    return {nid: (float(pos[i, 0]), float(pos[i, 1])) for i, nid in enumerate(graph.nodes)}


def _check_cover(graph: NarratorGraph, keys, what: str) -> None:
    missing = [nid for nid in graph.nodes if nid not in keys]
    if missing:
        raise ValidationError(f"{what} misses {len(missing)} node(s), e.g. {missing[0]!r}")


def _fmt(x: float) -> str:
    return repr(float(x))


def _palette(c: int) -> tuple[int, int, int]:
    # golden-angle hue walk keeps neighbouring community ids apart
    r, g, b = colorsys.hsv_to_rgb((c * 0.381966) % 1.0, 0.65, 0.9)
    return round(255 * r), round(255 * g), round(255 * b)


def export_gexf(
    graph: NarratorGraph,
    scores: Sequence[ScoreTable] = (),
    partition: Partition | None = None,
    positions: NodePositions | None = None,
) -> str:
    """GEXF 1.2 document with node attributes and optional viz data.

    Node size follows the first score table, scaled to [1, 11]; colour
    follows the community when a partition is given.
    """
    for table in scores:
        _check_cover(graph, table.scores, f"score table {table.measure_name!r}")
    if partition is not None:
        _check_cover(graph, partition.assignment, "partition")
    if positions is not None:
        _check_cover(graph, positions, "positions")

    ET.register_namespace("", GEXF_NS)
    ET.register_namespace("viz", VIZ_NS)
    ET.register_namespace("xsi", XSI_NS)
    q = lambda tag: f"{{{GEXF_NS}}}{tag}"
    v = lambda tag: f"{{{VIZ_NS}}}{tag}"

    root = ET.Element(q("gexf"), {"version": "1.2", f"{{{XSI_NS}}}schemaLocation": GEXF_SCHEMA_LOCATION})
    meta = ET.SubElement(root, q("meta"))
    ET.SubElement(meta, q("creator")).text = "isnad_sna"
    ET.SubElement(meta, q("description")).text = "narrated-to graph of hadith narrators"
    g = ET.SubElement(root, q("graph"), {"defaultedgetype": "directed", "mode": "static"})

    attrs = ET.SubElement(g, q("attributes"), {"class": "node", "mode": "static"})
    columns: list[tuple[str, str, str]] = [
        ("generation", "generation", "integer"),
        ("era", "era", "integer"),
        ("city", "city", "string"),
    ]
    columns += [(t.measure_name, t.measure_name, "double") for t in scores]
    if partition is not None:
        columns.append(("community", "community", "integer"))
    for aid, title, typ in columns:
        ET.SubElement(attrs, q("attribute"), {"id": aid, "title": title, "type": typ})

    size_max = max(scores[0].scores.values(), default=0.0) if scores else 0.0
    nodes_el = ET.SubElement(g, q("nodes"))
    for nid in graph.nodes:
        narrator = graph.narrators.get(nid)
        node = ET.SubElement(nodes_el, q("node"), {"id": nid, "label": graph.name(nid) or nid})
        values = ET.SubElement(node, q("attvalues"))
        row: list[tuple[str, str]] = []
        if narrator is not None and narrator.generation is not None:
            row += [("generation", str(narrator.generation)), ("era", str(narrator.era))]
        row.append(("city", narrator.city if narrator else ""))
        row += [(t.measure_name, _fmt(t.scores[nid])) for t in scores]
        if partition is not None:
            row.append(("community", str(partition.assignment[nid])))
        for aid, val in row:
            ET.SubElement(values, q("attvalue"), {"for": aid, "value": val})
        if partition is not None:
            r, gg, b = _palette(partition.assignment[nid])
            ET.SubElement(node, v("color"), {"r": str(r), "g": str(gg), "b": str(b)})
        if positions is not None:
            x, y = positions[nid]
            ET.SubElement(node, v("position"), {"x": _fmt(x), "y": _fmt(y), "z": "0.0"})
        if scores:
            s = scores[0].scores[nid]
            size = 1.0 + 10.0 * (s / size_max if size_max > 0 else 0.0)
            ET.SubElement(node, v("size"), {"value": _fmt(size)})

    edges_el = ET.SubElement(g, q("edges"))
    for k, ((s, t), w) in enumerate(graph.edges.items()):
        ET.SubElement(edges_el, q("edge"), {"id": str(k), "source": s, "target": t, "weight": str(w)})

    ET.indent(root, space="  ")
    body = ET.tostring(root, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"


def read_gexf_edges(document: str) -> dict[tuple[str, str], int]:
    """Edge list back out of a GEXF document."""
    try:
        root = ET.fromstring(document.encode("utf-8"))
    except ET.ParseError as exc:
        raise ParseError(f"malformed GEXF: {exc}") from None
    edges = {}
    for el in root.iter(f"{{{GEXF_NS}}}edge"):
        w = float(el.get("weight", "1"))
        edges[(el.get("source"), el.get("target"))] = int(w) if w.is_integer() else w
    return edges


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph: NarratorGraph) -> str:
    lines = ["digraph narrators {"]
    for nid in graph.nodes:
        name = graph.name(nid)
        label = f" [label={_dot_quote(name)}]" if name else ""
        lines.append(f"  {_dot_quote(nid)}{label};")
    for (s, t), w in graph.edges.items():
        lines.append(f"  {_dot_quote(s)} -> {_dot_quote(t)} [weight={w}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_edgelist(graph: NarratorGraph) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "weight"])
    for (s, t), w in graph.edges.items():
        writer.writerow([s, t, w])
    return buf.getvalue()


def read_edgelist(document: str) -> dict[tuple[str, str], int]:
    reader = csv.reader(io.StringIO(document))
    header = next(reader, None)
    if header != ["source", "target", "weight"]:
        raise ParseError("edge list must start with 'source,target,weight'", line=1)
    edges = {}
    for row in reader:
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=reader.line_num)
        edges[(row[0], row[1])] = int(row[2])
    return edges


def dumps_positions(positions: NodePositions) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "x", "y"])
    for nid in sorted(positions):
        x, y = positions[nid]
        writer.writerow([nid, _fmt(x), _fmt(y)])
    return buf.getvalue()
