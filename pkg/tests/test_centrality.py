import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isnad_sna.centrality import (
    BetweennessConfig,
    PageRankConfig,
    ScoreTable,
    betweenness,
    pagerank,
    top_k,
    weighted_degree,
)
from isnad_sna.errors import DomainError
from isnad_sna.graph_build import NarratorGraph

from oracles import brute_betweenness, dense_pagerank, make_graph, random_digraph


def test_two_cycle_is_symmetric():
    pr = pagerank(make_graph({("A", "B"): 1, ("B", "A"): 1}))
    assert pr["A"] == pytest.approx(0.5, abs=1e-12)
    assert pr["B"] == pytest.approx(0.5, abs=1e-12)
    assert pr.converged


def test_path_matches_dense_oracle():
    g = make_graph({("A", "B"): 1, ("B", "C"): 1})
    pr = pagerank(g)
    oracle = dense_pagerank(g)
    got = np.array([pr[v] for v in g.nodes])
    assert np.max(np.abs(got - oracle)) < 1e-8


def test_config_validation():
    with pytest.raises(DomainError):
        PageRankConfig(damping=1.0)
    with pytest.raises(DomainError):
        PageRankConfig(tolerance=0.0)
    with pytest.raises(DomainError):
        pagerank(make_graph({}))


def test_non_convergence_flag():
    g = make_graph({("A", "B"): 1, ("B", "C"): 2, ("C", "A"): 1, ("C", "D"): 1})
    pr = pagerank(g, PageRankConfig(max_iterations=2))
    assert not pr.converged and pr.iterations == 2
    assert sum(pr.scores.values()) == pytest.approx(1.0, abs=1e-12)


def test_unweighted_mode_ignores_weights():
    g = make_graph({("A", "B"): 9, ("A", "C"): 1})
    weighted = pagerank(g)
    flat = pagerank(g, PageRankConfig(use_edge_weights=False))
    assert weighted["B"] > weighted["C"]
    assert flat["B"] == flat["C"]
    oracle = dense_pagerank(g, weighted=False)
    assert max(abs(flat[v] - oracle[i]) for i, v in enumerate(g.nodes)) < 1e-8


graph_params = st.tuples(st.integers(1, 30), st.integers(0, 80), st.integers(0, 2**32 - 1))


@settings(max_examples=40, deadline=None)
@given(graph_params, st.floats(0.05, 0.95))
def test_pagerank_properties(params, d):
    n, m, seed = params
    g = random_digraph(random.Random(seed), n, m, max_weight=5)
    pr = pagerank(g, PageRankConfig(damping=d))
    values = np.array([pr[v] for v in g.nodes])
    assert abs(values.sum() - 1.0) < 1e-9
    assert np.all(values >= (1 - d) / n - 1e-12)
    assert np.max(np.abs(values - dense_pagerank(g, d))) < 1e-8


@settings(max_examples=25, deadline=None)
@given(graph_params, st.integers(2, 50))
def test_weight_scaling_invariance(params, factor):
    n, m, seed = params
    g = random_digraph(random.Random(seed), n, m, max_weight=4)
    scaled = NarratorGraph(g.nodes, {e: w * factor for e, w in g.edges.items()})
    a, b = pagerank(g), pagerank(scaled)
    assert max(abs(a[v] - b[v]) for v in g.nodes) < 1e-12


def test_pagerank_is_bit_identical_across_runs():
    g = random_digraph(random.Random(7), 40, 120, max_weight=9)
    assert pagerank(g).scores == pagerank(g).scores


def test_betweenness_path():
    cb = betweenness(make_graph({("A", "B"): 1, ("B", "C"): 1}))
    assert cb.scores == {"A": 0.0, "B": 1.0, "C": 0.0}


def test_betweenness_diamond():
    g = make_graph({("A", "B"): 1, ("B", "D"): 1, ("A", "C"): 1, ("C", "D"): 1})
    cb = betweenness(g)
    assert cb["B"] == cb["C"] == 0.5
    assert cb["A"] == cb["D"] == 0.0


def test_betweenness_ignores_weights():
    g = make_graph({("A", "B"): 100, ("B", "D"): 100, ("A", "C"): 1, ("C", "D"): 1})
    assert betweenness(g)["B"] == 0.5


def test_betweenness_normalized():
    g = make_graph({("A", "B"): 1, ("B", "C"): 1})
    assert betweenness(g, BetweennessConfig(normalized=True))["B"] == pytest.approx(0.5)


def test_random_10_node_graph_matches_enumeration():
    g = random_digraph(random.Random(10), 10, 20)
    cb = betweenness(g)
    oracle = brute_betweenness(g)
    for v in g.nodes:
        assert abs(cb[v] - float(oracle[v])) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 40), st.integers(0, 2**32 - 1))
def test_betweenness_matches_enumeration(n, m, seed):
    g = random_digraph(random.Random(seed), n, m)
    cb = betweenness(g)
    oracle = brute_betweenness(g)
    assert all(abs(cb[v] - float(oracle[v])) <= 1e-12 for v in g.nodes)
    assert all(s >= 0 for s in cb.scores.values())
    for v in g.nodes:
        i = g.index[v]
        if not g.successors(i) or not g.predecessors(i):
            assert cb[v] == 0.0


def test_weighted_degree_fig5(fig5_graph):
    tables = weighted_degree(fig5_graph)
    for v in "BCDE":
        assert tables["indegree"][v] == tables["outdegree"][v] == 1
    assert tables["indegree"]["F"] == 0 and tables["outdegree"]["A"] == 0


def test_weighted_degree_empty_graph():
    tables = weighted_degree(make_graph({}))
    assert all(len(t) == 0 for t in tables.values())


def test_weighted_degree_consistent_with_profile():
    from isnad_sna.graph_build import degree_profile
    g = random_digraph(random.Random(3), 15, 40, max_weight=6)
    tables = weighted_degree(g)
    for v in g.nodes:
        p = degree_profile(g, v)
        assert tables["weighted-outdegree"][v] == p.weighted_outdegree
        assert tables["indegree"][v] == p.indegree


def test_top_k_ties_by_id():
    table = ScoreTable({"A": 2, "B": 5, "C": 2}, "x")
    assert top_k(table, 2) == [("B", 5), ("A", 2)]
    assert top_k(table, 0) == []
    assert len(top_k(table, 99)) == 3
    with pytest.raises(DomainError):
        top_k(table, -1)


def test_top_k_matches_oracle_sort():
    g = random_digraph(random.Random(10), 10, 20)
    table = betweenness(g)
    oracle = brute_betweenness(g)
    expected = sorted(g.nodes, key=lambda v: (-oracle[v], v))
    assert [v for v, _ in top_k(table, 10)] == expected
