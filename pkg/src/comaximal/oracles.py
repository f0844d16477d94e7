"""Brute-force graph computations that know nothing about supports or primes.

The generic routines take plain adjacency lists (``adj[i]`` = neighbour
indices) so they can be tested on arbitrary graphs; the ``*_oracle`` wrappers
translate to and from residues of an ExplicitGraph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import GraphDisconnected
from .explicit_graph import ExplicitGraph

UNREACHABLE = -1


@dataclass(frozen=True)
class CutCertificate:
    """Deleting ``cut_vertices`` separates every vertex of ``side_a`` from every vertex of ``side_b``."""

    cut_vertices: frozenset[int]
    side_a: frozenset[int]
    side_b: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.cut_vertices)


@dataclass(frozen=True)
class MetricProfile:
    diameter: int
    radius: int
    center: frozenset[int]


# -- traversal -------------------------------------------------------------


def bfs_from(adj, source: int, removed=frozenset()) -> list[int]:
    """Hop distances from ``source`` in the graph minus ``removed``; UNREACHABLE elsewhere."""
    dist = [UNREACHABLE] * len(adj)
    if source in removed:
        raise ValueError(f"source {source} was removed")
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] == UNREACHABLE and w not in removed:
                dist[w] = du
                queue.append(w)
    return dist


def components(adj, removed=frozenset()) -> list[list[int]]:
    """Connected components of the graph minus ``removed``, each sorted, ordered by smallest vertex."""
    seen = set(removed)
    comps = []
    for start in range(len(adj)):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(adj, removed=frozenset()) -> bool:
    return len(components(adj, removed)) <= 1


def all_pairs_distances(adj, block: int = 1024) -> np.ndarray:
    """Distance matrix by level-synchronous BFS from every source at once.

    Sources are processed in blocks; each BFS level is one dense product of
    the frontier rows with the adjacency matrix.
    """
    n = len(adj)
    a = np.zeros((n, n), dtype=np.float32)
    for i, nbrs in enumerate(adj):
        a[i, list(nbrs)] = 1.0
    dist = np.full((n, n), UNREACHABLE, dtype=np.int32)
    for start in range(0, n, block):
        stop = min(n, start + block)
        rows = np.arange(stop - start)
        frontier = np.zeros((stop - start, n), dtype=bool)
        frontier[rows, rows + start] = True
        seen = frontier.copy()
        out = dist[start:stop]
        out[frontier] = 0
        level = 0
        while frontier.any():
            level += 1
            frontier = ((frontier.astype(np.float32) @ a) > 0) & ~seen
            seen |= frontier
            out[frontier] = level
    return dist


# -- local connectivity ----------------------------------------------------


def local_vertex_connectivity(adj, s: int, t: int, limit: int | None = None, adjsets=None):
    """Maximum number of internally disjoint s-t paths for non-adjacent ``s``, ``t``.

    Unit-capacity augmenting paths on the vertex-split digraph (``v_in -> v_out``
    with capacity 1, edges ``u_out -> w_in`` uncapacitated).  Node ``2v`` is
    ``v_in`` and ``2v + 1`` is ``v_out``.  Stops early once ``limit`` paths are
    found.  Returns ``(flow, cut)``; ``cut`` is a minimum s-t separator as a
    sorted list, or None when stopped at the limit.
    """
    n = len(adj)
    if s == t:
        raise ValueError("s and t must differ")
    adjsets = adjsets or [set(a) for a in adj]
    if t in adjsets[s]:
        raise ValueError(f"{s} and {t} are adjacent; no vertex separator exists")
    limit = n if limit is None else limit
    t_nbrs = adjsets[t]
    used = bytearray(n)
    into = [-1] * n  # into[w] = u while one unit flows along u_out -> w_in
    flow = 0

    while flow < limit:
        parent = [-1] * (2 * n)
        parent[2 * s + 1] = 2 * s + 1
        queue: deque[int] = deque([2 * s + 1])
        end = -1

        def enter(w: int, via: int) -> int:
            # w_in just became reachable; it has exactly one residual exit
            parent[2 * w] = via
            if not used[w]:
                x, o = w, 2 * w + 1
            else:
                x = into[w]
                if x == s:
                    return -1
                o = 2 * x + 1
            if parent[o] != -1:
                return -1
            parent[o] = 2 * w
            if x in t_nbrs:
                return o
            queue.append(o)
            return -1

        while queue and end < 0:
            node = queue.popleft()
            v = node >> 1
            if v != s and used[v] and parent[2 * v] == -1:
                end = enter(v, node)
                if end >= 0:
                    break
            for w in adj[v]:
                if w != s and parent[2 * w] == -1:
                    end = enter(w, node)
                    if end >= 0:
                        break

        if end < 0:
            cut = [w for w in range(n) if parent[2 * w] != -1 and parent[2 * w + 1] == -1]
            if len(cut) != flow:
                raise AssertionError(f"cut size {len(cut)} != flow {flow}")
            return flow, cut

        # walk back from the last out-node before t_in and update the flow
        node = end
        while node != 2 * s + 1:
            prev = parent[node]
            v, pv = node >> 1, prev >> 1
            if node & 1 and not prev & 1:
                if v == pv:
                    used[v] = 1  # v_in -> v_out
                elif into[pv] == v:
                    into[pv] = -1  # pv_in -> v_out cancels v -> pv
            elif not node & 1 and prev & 1:
                if v == pv:
                    used[v] = 0  # v_out -> v_in cancels the vertex arc
                else:
                    into[v] = pv  # pv_out -> v_in
            node = prev
        flow += 1
    return flow, None


def local_edge_connectivity(adj, s: int, t: int, limit: int | None = None, adjsets=None) -> int:
    """Maximum number of edge-disjoint s-t paths (unit capacity per undirected edge)."""
    n = len(adj)
    if s == t:
        raise ValueError("s and t must differ")
    adjsets = adjsets or [set(a) for a in adj]
    limit = len(adj[s]) if limit is None else limit
    t_nbrs = adjsets[t]
    f: dict[int, int] = {}  # f[u * n + w] in {-1, 0, 1}, antisymmetric
    flow = 0
    while flow < limit:
        parent = [-1] * n
        parent[s] = s
        queue = deque([s])
        found = False
        while queue and not found:
            u = queue.popleft()
            for w in adj[u]:
                if parent[w] != -1 or f.get(u * n + w, 0) >= 1:
                    continue
                parent[w] = u
                if w == t:
                    found = True
                    break
                if w in t_nbrs and f.get(w * n + t, 0) < 1:
                    parent[t] = w
                    found = True
                    break
                queue.append(w)
        if not found:
            break
        v = t
        while v != s:
            u = parent[v]
            f[u * n + v] = f.get(u * n + v, 0) + 1
            f[v * n + u] = f.get(v * n + u, 0) - 1
            v = u
        flow += 1
    return flow


# -- global connectivity ---------------------------------------------------


def vertex_connectivity(adj):
    """Exact vertex connectivity with a witnessing separator.

    Uses the Esfahanian-Hakimi pair family: a minimum-degree vertex ``v``
    against each of its non-neighbours, plus every non-adjacent pair inside
    ``N(v)``.  Each local flow is stopped as soon as it reaches the best value
    found so far.

    Returns ``(kappa, cut, s, t)`` with vertex indices; for a complete graph
    ``cut`` is None and ``kappa = n - 1``.
    """
    n = len(adj)
    if n <= 1:
        return 0, None, None, None
    comps = components(adj)
    if len(comps) > 1:
        return 0, [], comps[0][0], comps[1][0]
    adjsets = [set(a) for a in adj]
    v = min(range(n), key=lambda i: (len(adj[i]), i))
    pairs = [(v, w) for w in range(n) if w != v and w not in adjsets[v]]
    pairs += [(x, y) for x, y in combinations(sorted(adj[v]), 2) if y not in adjsets[x]]
    if not pairs:
        return n - 1, None, None, None
    best, best_cut, best_pair = n, None, (None, None)
    for s, t in pairs:
        k, cut = local_vertex_connectivity(adj, s, t, limit=best, adjsets=adjsets)
        if cut is not None and k < best:
            best, best_cut, best_pair = k, cut, (s, t)
    return best, best_cut, best_pair[0], best_pair[1]


def edge_connectivity(adj) -> int:
    n = len(adj)
    if n <= 1:
        return 0
    if not is_connected(adj):
        return 0
    adjsets = [set(a) for a in adj]
    s = min(range(n), key=lambda i: (len(adj[i]), i))
    best = len(adj[s])
    for t in range(n):
        if t != s:
            best = min(best, local_edge_connectivity(adj, s, t, limit=best, adjsets=adjsets))
    return best


# -- residue-level wrappers --------------------------------------------------


def certificate_holds(graph: ExplicitGraph, cert: CutCertificate) -> bool:
    """Deleting the cut really separates the two sides (and they are nonempty)."""
    if not cert.side_a or not cert.side_b:
        return False
    if cert.cut_vertices & (cert.side_a | cert.side_b) or cert.side_a & cert.side_b:
        return False
    removed = {graph.index_of(x) for x in cert.cut_vertices}
    side_b = {graph.index_of(x) for x in cert.side_b}
    for x in cert.side_a:
        dist = bfs_from(graph.adjacency, graph.index_of(x), removed)
        if any(dist[j] != UNREACHABLE for j in side_b):
            return False
    return True


def vertex_connectivity_oracle(graph: ExplicitGraph) -> tuple[int, CutCertificate]:
    """Exact vertex connectivity of the residue graph, with a checked minimum separator."""
    k, cut, s, t = vertex_connectivity(graph.adjacency)
    if cut is None:
        raise GraphDisconnected("graph is complete or trivial; no separator exists")
    res = graph.residues
    removed = set(cut)
    comps = components(graph.adjacency, removed)
    comp_of = {i: c for c in comps for i in c}
    cert = CutCertificate(
        frozenset(res[i] for i in cut),
        frozenset(res[i] for i in comp_of[s]),
        frozenset(res[i] for i in comp_of[t]),
    )
    if not certificate_holds(graph, cert):
        raise AssertionError("oracle produced an invalid separator")
    return k, cert


def edge_connectivity_oracle(graph: ExplicitGraph) -> int:
    return edge_connectivity(graph.adjacency)


def bfs_distances(graph: ExplicitGraph, source: int, removed=()) -> dict[int, int]:
    """Distances from residue ``source`` to every residue; UNREACHABLE where cut off."""
    removed_idx = frozenset(graph.index_of(x) for x in removed)
    dist = bfs_from(graph.adjacency, graph.index_of(source), removed_idx)
    return {v.residue: d for v, d in zip(graph.vertices, dist)}


def eccentricity_profile(graph: ExplicitGraph) -> MetricProfile:
    dist = all_pairs_distances(graph.adjacency)
    if (dist == UNREACHABLE).any():
        raise GraphDisconnected(f"G2({graph.mod.n}) is disconnected")
    ecc = dist.max(axis=1)
    radius = int(ecc.min())
    res = graph.residues
    return MetricProfile(int(ecc.max()), radius, frozenset(res[i] for i in np.flatnonzero(ecc == radius)))
