"""Degree, PageRank and betweenness centrality with deterministic ranking."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix

from .errors import DomainError
from .graph_build import NarratorGraph


@dataclass(frozen=True)
class PageRankConfig:
    damping: float = 0.85
    tolerance: float = 1e-9
    max_iterations: int = 200
    use_edge_weights: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.damping < 1.0:
            raise DomainError(f"damping must lie in (0, 1), got {self.damping}")
        if not self.tolerance > 0.0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise DomainError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass(frozen=True)
class BetweennessConfig:
    normalized: bool = False
    directed: bool = field(default=True, init=False)


@dataclass
class ScoreTable:
    scores: dict[str, float]
    measure_name: str
    converged: bool = True
    iterations: int = 0

    def __len__(self) -> int:
        return len(self.scores)

    def __getitem__(self, nid: str) -> float:
        return self.scores[nid]


def pagerank(graph: NarratorGraph, config: PageRankConfig = PageRankConfig()) -> ScoreTable:
    """Power iteration with uniform teleport and uniform dangling redistribution.

    A node's outgoing mass is split in proportion to edge weight (or evenly
    over out-edges when ``use_edge_weights`` is off). Iteration stops once the
    L1 change drops below ``tolerance``; if ``max_iterations`` is hit first the
    table comes back with ``converged=False``.
    """
    n = len(graph)
    if n == 0:
        raise DomainError("pagerank needs a non-empty graph")
    d = config.damping
    src, dst, w = graph.edge_arrays()
    if not config.use_edge_weights:
        w = np.ones_like(w)
    out_weight = np.bincount(src, weights=w, minlength=n)
    dangling = out_weight == 0
    # row-stochastic transition restricted to non-dangling rows, transposed for pull updates
    transition_t = csr_matrix((w / out_weight[src], (dst, src)), shape=(n, n))

    pr = np.full(n, 1.0 / n)
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        dangling_mass = pr[dangling].sum()
        new = (1.0 - d) / n + d * (transition_t @ pr + dangling_mass / n)
        change = np.abs(new - pr).sum()
        pr = new
        if change < config.tolerance:
            converged = True
            break
    pr /= pr.sum()
    scores = {nid: float(pr[i]) for i, nid in enumerate(graph.nodes)}
    name = "pagerank" if config.use_edge_weights else "pagerank-unweighted"
    return ScoreTable(scores, name, converged=converged, iterations=iterations)


def _brandes(succ: list[list[int]], n: int) -> list[float]:
    cb = [0.0] * n
    for s in range(n):
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[s] = 1
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for x in succ[v]:
                if dist[x] < 0:
                    dist[x] = dist[v] + 1
                    queue.append(x)
                if dist[x] == dist[v] + 1:
                    sigma[x] += sigma[v]
                    preds[x].append(v)
        delta = [0.0] * n
        while stack:
            x = stack.pop()
            coeff = (1.0 + delta[x]) / sigma[x]
            for v in preds[x]:
                delta[v] += sigma[v] * coeff
            if x != s:
                cb[x] += delta[x]
    return cb


def betweenness(
    graph: NarratorGraph, config: BetweennessConfig = BetweennessConfig()
) -> ScoreTable:
    """Brandes' algorithm over directed, unweighted (hop-count) shortest paths.

    Edge weights are hadith counts, not distances, so they are ignored here.
    Path counts are kept as Python ints so sigma never overflows.
    """
    n = len(graph)
    if n == 0:
        raise DomainError("betweenness needs a non-empty graph")
    succ = [[t for t, _ in graph.successors(i)] for i in range(n)]
    cb = _brandes(succ, n)
    if config.normalized:
        scale = 1.0 / ((n - 1) * (n - 2)) if n > 2 else 0.0
        cb = [c * scale for c in cb]
    name = "betweenness-normalized" if config.normalized else "betweenness"
    return ScoreTable({nid: cb[i] for i, nid in enumerate(graph.nodes)}, name)


DEGREE_MEASURES = ("indegree", "outdegree", "weighted-indegree", "weighted-outdegree")


def weighted_degree(graph: NarratorGraph) -> dict[str, ScoreTable]:
    """One table per direction, keyed by measure name."""
    tables = {m: ScoreTable({}, m) for m in DEGREE_MEASURES}
    for i, nid in enumerate(graph.nodes):
        out, inc = graph.successors(i), graph.predecessors(i)
        tables["indegree"].scores[nid] = float(len(inc))
        tables["outdegree"].scores[nid] = float(len(out))
        tables["weighted-indegree"].scores[nid] = float(sum(w for _, w in inc))
        tables["weighted-outdegree"].scores[nid] = float(sum(w for _, w in out))
    return tables


def top_k(scores: ScoreTable | dict[str, float], k: int) -> list[tuple[str, float]]:
    """Highest scores first; equal scores ordered by ascending id."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    items = scores.scores if isinstance(scores, ScoreTable) else scores
    return sorted(items.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
