"""Flow and BFS routines checked against networkx on random graphs."""

from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from comaximal import oracles
from comaximal.arithmetic import factor_squarefree
from comaximal.errors import GraphDisconnected
from comaximal.explicit_graph import build_graph


def to_adj(g: nx.Graph):
    n = g.number_of_nodes()
    return [sorted(g.neighbors(v)) for v in range(n)]


graphs = st.builds(
    lambda n, p, seed: nx.gnp_random_graph(n, p, seed=seed),
    st.integers(min_value=2, max_value=14),
    st.floats(min_value=0.2, max_value=0.9),
    st.integers(min_value=0, max_value=10_000),
)


@settings(max_examples=150, deadline=None)
@given(graphs)
def test_vertex_connectivity_matches_networkx(g):
    adj = to_adj(g)
    k, cut, s, t = oracles.vertex_connectivity(adj)
    assert k == nx.node_connectivity(g)
    if cut:
        h = g.copy()
        h.remove_nodes_from(cut)
        assert not nx.has_path(h, s, t)


@settings(max_examples=150, deadline=None)
@given(graphs)
def test_edge_connectivity_matches_networkx(g):
    assert oracles.edge_connectivity(to_adj(g)) == nx.edge_connectivity(g)


@settings(max_examples=100, deadline=None)
@given(graphs, st.data())
def test_local_vertex_connectivity(g, data):
    non_edges = [(u, v) for u, v in nx.non_edges(g)]
    if not non_edges:
        return
    s, t = data.draw(st.sampled_from(non_edges))
    flow, cut = oracles.local_vertex_connectivity(to_adj(g), s, t)
    assert flow == nx.algorithms.connectivity.local_node_connectivity(g, s, t)
    assert len(cut) == flow


@settings(max_examples=80, deadline=None)
@given(graphs)
def test_all_pairs_matches_networkx(g):
    adj = to_adj(g)
    dist = oracles.all_pairs_distances(adj, block=5)
    lengths = dict(nx.all_pairs_shortest_path_length(g))
    for u in range(len(adj)):
        for v in range(len(adj)):
            assert dist[u, v] == lengths[u].get(v, oracles.UNREACHABLE)
        assert dist[u].tolist() == oracles.bfs_from(adj, u)


def test_components_with_removed():
    adj = [[1], [0, 2], [1, 3], [2]]
    assert oracles.components(adj) == [[0, 1, 2, 3]]
    assert oracles.components(adj, {1}) == [[0], [2, 3]]
    assert not oracles.is_connected(adj, {2})


def test_complete_and_disconnected():
    assert oracles.vertex_connectivity([[1, 2], [0, 2], [0, 1]])[:2] == (2, None)
    k, cut, s, t = oracles.vertex_connectivity([[1], [0], []])
    assert (k, cut) == (0, [])
    assert oracles.edge_connectivity([[1], [0], []]) == 0


def test_adjacent_pair_rejected():
    with pytest.raises(ValueError):
        oracles.local_vertex_connectivity([[1], [0]], 0, 1)


@pytest.mark.parametrize("n,k", [(6, 1), (30, 2), (42, 2), (70, 4), (210, 8)])
def test_residue_oracles(n, k):
    graph = build_graph(factor_squarefree(n))
    got, cert = oracles.vertex_connectivity_oracle(graph)
    assert got == k
    assert oracles.certificate_holds(graph, cert)
    assert oracles.edge_connectivity_oracle(graph) == k


def test_bfs_distances_n30():
    graph = build_graph(factor_squarefree(30))
    dist = oracles.bfs_distances(graph, 15)
    assert dist[10] == 3
    assert dist[2] == 1
    cut_off = oracles.bfs_distances(graph, 6, removed=[5, 25])
    assert cut_off[2] == oracles.UNREACHABLE


def test_eccentricity_profile():
    profile = oracles.eccentricity_profile(build_graph(factor_squarefree(30)))
    assert (profile.diameter, profile.radius) == (3, 2)
    assert profile.center == frozenset(x for x in range(1, 30) if np.gcd(x, 30) in (2, 3, 5))


def test_disconnected_profile_raises():
    graph = build_graph(factor_squarefree(6))
    broken = type(graph)(graph.mod, graph.vertices, ((), (), ()))
    with pytest.raises(GraphDisconnected):
        oracles.eccentricity_profile(broken)
