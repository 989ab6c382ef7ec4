"""Degree distributions, power-law exponent fits and small-world measures."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.special import zeta

from .errors import DomainError
from .graph_build import NarratorGraph

DIRECTIONS = ("in", "out", "total")


@dataclass
class DegreeHistogram:
    direction: str
    buckets: dict[int, int]

    def rows(self, loglog: bool = False) -> list[tuple]:
        """(k, count) rows, extended with log10 columns when ``loglog``.

        k = 0 has no logarithm and is dropped from log-log output.
        """
        if not loglog:
            return list(self.buckets.items())
        return [
            (k, c, math.log10(k), math.log10(c)) for k, c in self.buckets.items() if k > 0
        ]


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    xmin: int
    n_tail: int


def node_degrees(graph: NarratorGraph, direction: str = "total") -> list[int]:
    """Unweighted degree of every node, in node order."""
    if direction not in DIRECTIONS:
        raise DomainError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    out = [len(graph.successors(i)) for i in range(len(graph))]
    inc = [len(graph.predecessors(i)) for i in range(len(graph))]
    if direction == "in":
        return inc
    if direction == "out":
        return out
    return [a + b for a, b in zip(inc, out)]


def degree_distribution(graph: NarratorGraph, direction: str = "total") -> DegreeHistogram:
    counts = Counter(node_degrees(graph, direction))
    return DegreeHistogram(direction, dict(sorted(counts.items())))


def fit_power_law(degrees: Iterable[int], xmin: int = 1, method: str = "mle") -> PowerLawFit:
    """Fit a discrete power law p(x) ~ x^-alpha to the samples x >= xmin.

    ``method="mle"`` maximises the exact discrete likelihood, normalised by
    the Hurwitz zeta function. ``method="approx"`` uses the closed form
    alpha = 1 + n / sum(ln(x / (xmin - 1/2))), which is biased low for small
    xmin and can never exceed 1 + 1/ln(2) when xmin = 1.
    """
    if method not in ("mle", "approx"):
        raise DomainError(f"method must be 'mle' or 'approx', got {method!r}")
    if xmin < 1:
        raise DomainError(f"xmin must be >= 1, got {xmin}")
    tail = np.array([x for x in degrees if x >= xmin], dtype=np.float64)
    n = tail.size
    if n < 2:
        raise DomainError(f"need at least 2 samples >= xmin={xmin}, got {n}")
    approx = float(1.0 + n / np.log(tail / (xmin - 0.5)).sum())
    if method == "approx":
        return PowerLawFit(alpha=approx, xmin=xmin, n_tail=int(n))
    if np.all(tail == xmin):
        raise DomainError("likelihood is unbounded when every tail sample equals xmin")
    log_sum = float(np.log(tail).sum())
    neg_loglik = lambda a: a * log_sum + n * math.log(zeta(a, xmin))
    upper = max(20.0, 2.0 * approx)
    res = minimize_scalar(neg_loglik, bounds=(1.0 + 1e-9, upper), method="bounded",
                          options={"xatol": 1e-10})
    return PowerLawFit(alpha=float(res.x), xmin=xmin, n_tail=int(n))


def undirected_neighbors(graph: NarratorGraph) -> list[set[int]]:
    """Simple undirected projection: direction and weights dropped."""
    nbrs: list[set[int]] = [set() for _ in range(len(graph))]
    for (s, t) in graph.edges:
        i, j = graph.index[s], graph.index[t]
        nbrs[i].add(j)
        nbrs[j].add(i)
    return nbrs


def local_clustering(graph: NarratorGraph) -> dict[str, float]:
    nbrs = undirected_neighbors(graph)
    result = {}
    for i, nid in enumerate(graph.nodes):
        k = len(nbrs[i])
        if k < 2:
            result[nid] = 0.0
            continue
        links = sum(len(nbrs[i] & nbrs[j]) for j in nbrs[i]) // 2
        result[nid] = 2.0 * links / (k * (k - 1))
    return result


def global_clustering(graph: NarratorGraph) -> float:
    """Mean local clustering on the undirected projection.

    Nodes of degree < 2 count as 0 and stay in the denominator.
    """
    if len(graph) == 0:
        return 0.0
    local = local_clustering(graph)
    return math.fsum(local[n] for n in graph.nodes) / len(graph)


def _bfs(nbrs: list[set[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for x in nbrs[v]:
            if x not in dist:
                dist[x] = dist[v] + 1
                queue.append(x)
    return dist


def largest_component(graph: NarratorGraph) -> list[int]:
    """Handles of the largest weakly connected component (ties: smallest first handle)."""
    nbrs = undirected_neighbors(graph)
    seen: set[int] = set()
    best: list[int] = []
    for i in range(len(graph)):
        if i in seen:
            continue
        comp = sorted(_bfs(nbrs, i))
        seen.update(comp)
        if len(comp) > len(best):
            best = comp
    return best


def avg_path_length(graph: NarratorGraph) -> float:
    """Mean hop distance over ordered pairs of the largest undirected component."""
    comp = largest_component(graph)
    if len(comp) < 2:
        raise DomainError("largest component has fewer than 2 nodes")
    pos = {v: i for i, v in enumerate(comp)}
    rows, cols = [], []
    for (s, t) in graph.edges:
        i, j = graph.index[s], graph.index[t]
        if i in pos:
            rows.append(pos[i])
            cols.append(pos[j])
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(comp), len(comp)))
    dist = shortest_path(adj, method="D", directed=False, unweighted=True)
    # hop counts are small integers, so the float sum is exact
    return float(dist.sum()) / (len(comp) * (len(comp) - 1))
