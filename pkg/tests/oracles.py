"""Independent brute-force oracles used only by the test suite.

These deliberately avoid the library's own algorithm paths: cycle lengths
come from exhaustive DFS enumeration, and distances from scipy's
Bellman-Ford.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import bellman_ford

from cyclespan.graph import Graph, INF


def bf_distances(g: Graph, source: int) -> np.ndarray:
    d = bellman_ford(g.csr(), indices=source)
    return np.where(np.isfinite(d), d, INF)


def punctured_ansc(g: Graph) -> list[float]:
    """SC(v) as min over incident edges e=(v,u) of w(e) + d_{G-e}(v, u).

    Polynomial-time oracle (one Bellman-Ford per edge side), independent of
    the library's shortest-cycle code paths.
    """
    best = [INF] * g.n
    for i in range(g.m):
        u, v, w = int(g.eu[i]), int(g.ev[i]), int(g.ew[i])
        rows = np.concatenate([np.delete(g.eu, i), np.delete(g.ev, i)])
        cols = np.concatenate([np.delete(g.ev, i), np.delete(g.eu, i)])
        data = np.concatenate([np.delete(g.ew, i), np.delete(g.ew, i)])
        from scipy.sparse import csr_matrix
        punct = csr_matrix((data, (rows, cols)), shape=(g.n, g.n))
        d = bellman_ford(punct, indices=u)
        if np.isfinite(d[v]):
            cyc = w + d[v]
            if cyc < best[u]:
                best[u] = cyc
            if cyc < best[v]:
                best[v] = cyc
    return best


def enum_ansc_undirected(g: Graph) -> list[float]:
    """Shortest cycle through each vertex by exhaustive simple-path DFS.

    Enumerates every simple cycle exactly once up to rotation/reflection by
    anchoring at the cycle's smallest vertex.
    """
    n = g.n
    best = [INF] * n
    adj = g.adjacency
    for start in range(n):
        # simple paths from start through vertices > start
        stack = [(start, 0, [start], {start})]
        while stack:
            u, wsum, path, onpath = stack.pop()
            for v, w, _ in adj[u]:
                if v == start and len(path) >= 3:
                    total = wsum + w
                    for x in path:
                        if total < best[x]:
                            best[x] = total
                elif v > start and v not in onpath:
                    stack.append((v, wsum + w, path + [v], onpath | {v}))
    return best


def enum_ansc_directed(g: Graph) -> list[float]:
    """Shortest directed cycle through each vertex, exhaustively."""
    n = g.n
    best = [INF] * n
    adj = g.adjacency
    for start in range(n):
        stack = [(start, 0, [start], {start})]
        while stack:
            u, wsum, path, onpath = stack.pop()
            for v, w, _ in adj[u]:
                if v == start and len(path) >= 2:
                    total = wsum + w
                    for x in path:
                        if total < best[x]:
                            best[x] = total
                elif v > start and v not in onpath:
                    stack.append((v, wsum + w, path + [v], onpath | {v}))
    return best
