"""Louvain modularity optimisation on the symmetrised narrator graph."""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

from .errors import DomainError
from .graph_build import NarratorGraph


@dataclass(frozen=True)
class LouvainConfig:
    resolution: float = 1.0
    seed: int = 42
    min_gain: float = 1e-7

    def __post_init__(self) -> None:
        if not self.resolution > 0:
            raise DomainError(f"resolution must be positive, got {self.resolution}")
        if not self.min_gain > 0:
            raise DomainError(f"min_gain must be positive, got {self.min_gain}")


@dataclass
class Partition:
    assignment: dict[str, int]
    modularity: float
    community_count: int

    def members(self) -> dict[int, list[str]]:
        groups: dict[int, list[str]] = defaultdict(list)
        for nid in sorted(self.assignment):
            groups[self.assignment[nid]].append(nid)
        return dict(sorted(groups.items()))


@dataclass
class UndirectedGraph:
    """Weighted undirected graph; ``adj[u][v] == adj[v][u]``, no self-loops."""

    nodes: tuple[str, ...]
    adj: dict[str, dict[str, float]]

    def degree(self, u: str) -> float:
        return sum(self.adj[u].values())

    def total_weight(self) -> float:
        """Sum of weighted degrees, i.e. twice the total edge weight."""
        return sum(self.degree(u) for u in self.nodes)

    def weight(self, u: str, v: str) -> float:
        return self.adj[u].get(v, 0.0)


def symmetrize(graph: NarratorGraph) -> UndirectedGraph:
    """Undirected weight(u, v) = w(u -> v) + w(v -> u)."""
    adj: dict[str, dict[str, float]] = {nid: {} for nid in graph.nodes}
    for (s, t), w in graph.edges.items():
        adj[s][t] = adj[s].get(t, 0.0) + w
        adj[t][s] = adj[t].get(s, 0.0) + w
    for nid in adj:
        adj[nid] = dict(sorted(adj[nid].items()))
    return UndirectedGraph(graph.nodes, adj)


def modularity(ugraph: UndirectedGraph, assignment: Mapping[str, int], resolution: float = 1.0) -> float:
    """Newman modularity with a resolution factor on the null-model term."""
    missing = [u for u in ugraph.nodes if u not in assignment]
    if missing:
        raise DomainError(f"assignment misses {len(missing)} node(s), e.g. {missing[0]!r}")
    two_m = ugraph.total_weight()
    if two_m <= 0:
        raise DomainError("modularity is undefined on a graph with zero total weight")
    inside: dict[int, float] = defaultdict(float)
    total: dict[int, float] = defaultdict(float)
    for u in ugraph.nodes:
        cu = assignment[u]
        for v, w in ugraph.adj[u].items():
            total[cu] += w
            if assignment[v] == cu:
                inside[cu] += w  # each internal edge seen from both ends
    q = 0.0
    for c in sorted(total):
        q += inside[c] / two_m - resolution * (total[c] / two_m) ** 2
    return q


class _Level:
    """Integer-indexed weighted graph used inside the optimiser.

    ``loops[i]`` holds the weight of edges collapsed into super-node ``i``
    (counted once); it contributes ``2 * loops[i]`` to the node's degree.
    """

    def __init__(self, n: int, adj: list[dict[int, float]], loops: list[float]):
        self.n = n
        self.adj = adj
        self.loops = loops
        self.degree = [sum(adj[i].values()) + 2.0 * loops[i] for i in range(n)]


def _local_moving(
    level: _Level, comm: list[int], two_m: float, cfg: LouvainConfig, rng: random.Random
) -> bool:
    """Greedy single-node moves until a sweep produces none. Returns True if anything moved."""
    gamma = cfg.resolution
    m = two_m / 2.0
    tot = [0.0] * level.n
    for i in range(level.n):
        tot[comm[i]] += level.degree[i]
    order = list(range(level.n))
    moved_any = False
    while True:
        rng.shuffle(order)
        moved = False
        for i in order:
            ki = level.degree[i]
            own = comm[i]
            links: dict[int, float] = defaultdict(float)
            for j, w in level.adj[i].items():
                links[comm[j]] += w
            tot[own] -= ki
            # gain of joining c (times m), relative to an empty community
            stay = links.get(own, 0.0) - gamma * tot[own] * ki / two_m
            best, best_delta = own, 0.0
            for c in sorted(links):
                if c == own:
                    continue
                delta = (links[c] - gamma * tot[c] * ki / two_m - stay) / m
                if delta > best_delta:
                    best, best_delta = c, delta
            if best != own and best_delta >= cfg.min_gain:
                comm[i] = best
                moved = moved_any = True
            tot[comm[i]] += ki
        if not moved:
            return moved_any


def _aggregate(level: _Level, comm: list[int]) -> tuple[_Level, list[int]]:
    labels = sorted(set(comm))
    relabel = {c: k for k, c in enumerate(labels)}
    n = len(labels)
    adj: list[dict[int, float]] = [defaultdict(float) for _ in range(n)]
    loops = [0.0] * n
    for i in range(level.n):
        ci = relabel[comm[i]]
        loops[ci] += level.loops[i]
        for j, w in level.adj[i].items():
            cj = relabel[comm[j]]
            if ci == cj:
                loops[ci] += w / 2.0  # edge i-j is visited from both ends
            else:
                adj[ci][cj] += w
    mapping = [relabel[c] for c in comm]
    return _Level(n, [dict(sorted(a.items())) for a in adj], loops), mapping


def _base_level(ugraph: UndirectedGraph) -> _Level:
    index = {u: i for i, u in enumerate(ugraph.nodes)}
    adj = [{index[v]: w for v, w in ugraph.adj[u].items()} for u in ugraph.nodes]
    return _Level(len(ugraph.nodes), adj, [0.0] * len(ugraph.nodes))


def _multilevel(base: _Level, comm: list[int], two_m: float, cfg: LouvainConfig, rng) -> list[int]:
    """Classic two-phase Louvain starting from ``comm`` on the base level."""
    level, membership = base, list(comm)
    # collapse the starting partition first so the optimiser works on communities
    level, mapping = _aggregate(level, membership)
    membership = mapping
    while True:
        comm = list(range(level.n))
        if not _local_moving(level, comm, two_m, cfg, rng):
            return membership
        level, mapping = _aggregate(level, comm)
        membership = [mapping[c] for c in membership]


def louvain(graph: NarratorGraph, config: LouvainConfig = LouvainConfig()) -> Partition:
    """Two-phase Louvain with a seeded visit order.

    After the multilevel phase converges the partition is polished with
    single-node moves on the original graph; whenever that polish moves a
    node the multilevel phase is rerun. On return no single-node move to a
    neighbouring community gains ``min_gain`` or more.
    """
    if not graph.edges:
        raise DomainError("louvain needs a graph with at least one edge")
    ugraph = symmetrize(graph)
    base = _base_level(ugraph)
    two_m = sum(base.degree)
    rng = random.Random(config.seed)

    comm = list(range(base.n))
    _local_moving(base, comm, two_m, config, rng)
    while True:
        comm = _multilevel(base, comm, two_m, config, rng)
        if not _local_moving(base, comm, two_m, config, rng):
            break

    # dense ids ordered by each community's smallest node handle
    relabel: dict[int, int] = {}
    for c in comm:
        relabel.setdefault(c, len(relabel))
    assignment = {u: relabel[comm[i]] for i, u in enumerate(ugraph.nodes)}
    q = modularity(ugraph, assignment, config.resolution)
    return Partition(assignment, q, len(relabel))
