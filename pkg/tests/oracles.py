"""Slow, obviously-correct reference computations used only by tests."""

from __future__ import annotations

import itertools
import random
from collections import deque
from fractions import Fraction

import numpy as np

from isnad_sna.graph_build import NarratorGraph


def make_graph(edges, nodes=()) -> NarratorGraph:
    edges = dict(edges)
    all_nodes = set(nodes) | {n for e in edges for n in e}
    return NarratorGraph(all_nodes, edges)


def random_digraph(rng: random.Random, n: int, m: int, max_weight: int = 1,
                   prefix: str = "n") -> NarratorGraph:
    """Random simple digraph on ``n`` nodes with up to ``m`` distinct edges."""
    nodes = [f"{prefix}{i:02d}" for i in range(n)]
    possible = [(a, b) for a in nodes for b in nodes if a != b]
    chosen = rng.sample(possible, min(m, len(possible)))
    return make_graph({e: rng.randint(1, max_weight) for e in chosen}, nodes)


def dense_pagerank(graph: NarratorGraph, d: float = 0.85, weighted: bool = True,
                   iterations: int = 100_000, tol: float = 1e-15) -> np.ndarray:
    """Explicit N x N Google-matrix power iteration; dangling columns spread uniformly."""
    n = len(graph)
    idx = {v: i for i, v in enumerate(graph.nodes)}
    a = np.zeros((n, n))
    for (s, t), w in graph.edges.items():
        a[idx[t], idx[s]] = w if weighted else 1.0
    col = a.sum(axis=0)
    m = np.empty_like(a)
    for j in range(n):
        m[:, j] = a[:, j] / col[j] if col[j] > 0 else 1.0 / n
    g = (1 - d) / n * np.ones((n, n)) + d * m
    x = np.full(n, 1.0 / n)
    for _ in range(iterations):
        y = g @ x
        if np.abs(y - x).sum() < tol:
            return y
        x = y
    return x


def all_shortest_paths(succ: dict, s, t) -> list[list]:
    """Every shortest s->t path, by BFS layering then explicit DFS enumeration."""
    dist = {s: 0}
    q = deque([s])
    while q:
        v = q.popleft()
        for w in succ[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    if t not in dist:
        return []
    paths = []

    def walk(path):
        v = path[-1]
        if v == t:
            paths.append(list(path))
            return
        for w in succ[v]:
            if dist.get(w) == dist[v] + 1 and dist[w] <= dist[t]:
                walk(path + [w])

    walk([s])
    return paths


def brute_betweenness(graph: NarratorGraph) -> dict[str, Fraction]:
    succ = {v: [] for v in graph.nodes}
    for s, t in graph.edges:
        succ[s].append(t)
    score = {v: Fraction(0) for v in graph.nodes}
    for s in graph.nodes:
        for t in graph.nodes:
            if s == t:
                continue
            paths = all_shortest_paths(succ, s, t)
            for path in paths:
                for v in path[1:-1]:
                    score[v] += Fraction(1, len(paths))
    return score


def undirected_weights(graph: NarratorGraph) -> dict[frozenset, float]:
    w: dict[frozenset, float] = {}
    for (s, t), x in graph.edges.items():
        key = frozenset((s, t))
        w[key] = w.get(key, 0) + x
    return w


def naive_modularity(graph: NarratorGraph, assignment, gamma: float = 1.0) -> float:
    """Q = 1/(2m) sum_ij [A_ij - gamma k_i k_j / 2m] delta(c_i, c_j) over the adjacency matrix."""
    nodes = list(graph.nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    a = np.zeros((len(nodes), len(nodes)))
    for pair, w in undirected_weights(graph).items():
        u, v = tuple(pair)
        a[idx[u], idx[v]] += w
        a[idx[v], idx[u]] += w
    k = a.sum(axis=1)
    two_m = k.sum()
    q = 0.0
    for i, j in itertools.product(range(len(nodes)), repeat=2):
        if assignment[nodes[i]] == assignment[nodes[j]]:
            q += a[i, j] - gamma * k[i] * k[j] / two_m
    return q / two_m


def set_partitions(items: list):
    """All set partitions of ``items`` (Bell-number many)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def bfs_all_pairs_mean(graph: NarratorGraph) -> float:
    """Mean distance over ordered reachable pairs in the largest undirected component."""
    nbrs = {v: set() for v in graph.nodes}
    for s, t in graph.edges:
        nbrs[s].add(t)
        nbrs[t].add(s)
    comps, seen = [], set()
    for v in graph.nodes:
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for y in nbrs[x] - comp:
                comp.add(y)
                stack.append(y)
        seen |= comp
        comps.append(comp)
    comp = max(comps, key=len)
    total = pairs = 0
    for s in comp:
        dist = {s: 0}
        q = deque([s])
        while q:
            x = q.popleft()
            for y in nbrs[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        for t, dd in dist.items():
            if t != s:
                total += dd
                pairs += 1
    return total / pairs


def sample_discrete_power_law(alpha: float, xmin: int, n: int, seed: int,
                              cutoff: int = 1_000_000) -> np.ndarray:
    """Draws from p(x) ~ x^-alpha on xmin..cutoff via the exact (truncated) pmf."""
    k = np.arange(xmin, cutoff + 1, dtype=np.float64)
    p = k ** -alpha
    p /= p.sum()
    return np.random.default_rng(seed).choice(k.astype(np.int64), size=n, p=p)
