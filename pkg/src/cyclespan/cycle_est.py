"""Cycle-estimation Dijkstra: a (truncated) Dijkstra run that charges every
discovered non-tree edge's induced cycle to all vertices on the matching
tree path.

For a non-tree edge e = (u, v) with both endpoints finalized, every vertex
on the tree path u..v receives the candidate value w_e + d_T(u, v); the
per-vertex estimate is the minimum candidate.  Every finite estimate is the
weight of a real cycle through that vertex, so estimates never undershoot
the true shortest cycle.

Three interchangeable engines compute the path-min assignment:

* ``offline`` (default): sort candidates ascending and sweep tree paths
  with a union-find that skips already-assigned vertices; near-linear.
* ``splay`` / ``naive``: feed updates through :class:`~cyclespan.linkcut.PathMinForest`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

from .graph import Graph, GraphError, INF
from .linkcut import PathMinForest
from .sssp import TruncationPolicy, NO_TRUNCATION, _run

__all__ = ["CedRun", "CycleEstimates", "cycle_estimation_dijkstra",
           "cycle_estimation_run", "merge"]


@dataclass
class CycleEstimates:
    """Per-vertex shortest-cycle upper bounds plus provenance counters."""

    values: np.ndarray
    counts: np.ndarray

    @classmethod
    def empty(cls, n: int) -> "CycleEstimates":
        return cls(np.full(n, INF), np.zeros(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> float:
        return float(self.values[v])


def merge(a: CycleEstimates, b: CycleEstimates) -> CycleEstimates:
    """Pointwise minimum; provenance counters add."""
    if a.n != b.n:
        raise GraphError(f"size mismatch: {a.n} vs {b.n}")
    return CycleEstimates(np.minimum(a.values, b.values), a.counts + b.counts)


@dataclass
class CedRun:
    """Instrumented result of one cycle-estimation run."""

    source: int
    dist: np.ndarray
    parent: np.ndarray
    finalized: np.ndarray
    explored_eids: np.ndarray
    edges_scanned: int
    estimates: CycleEstimates


def _offline_assign(n: int, parent, depth, lca, uu, vv, vals, order,
                    reachable: int | None = None) -> list:
    """Ascending-value sweep; each vertex takes the first value covering it.

    Accepts numpy arrays or plain lists; returns a plain list indexed by
    vertex with INF where no update covers.
    """
    ans = [INF] * n
    virt = n
    par = (parent.tolist() if isinstance(parent, np.ndarray) else list(parent)) + [virt]
    for i in range(n):
        if par[i] < 0:
            par[i] = virt
    dep = (depth.tolist() if isinstance(depth, np.ndarray) else list(depth)) + [-1]
    nxt = list(range(n + 1))
    left = reachable if reachable is not None else n
    if isinstance(order, np.ndarray):
        lca_np = np.asarray(lca)
        dep_np = np.asarray(dep)
        seq = zip(np.asarray(vals)[order].tolist(),
                  dep_np[lca_np[order]].tolist(),
                  np.asarray(uu)[order].tolist(),
                  np.asarray(vv)[order].tolist())
    else:
        seq = ((vals[i], dep[lca[i]], uu[i], vv[i]) for i in order)

    for val, ldep, a, b in seq:
        for x in (a, b):
            # union-find with path halving, inlined
            while nxt[x] != x:
                nxt[x] = nxt[nxt[x]]
                x = nxt[x]
            while x != virt and dep[x] >= ldep:
                ans[x] = val
                left -= 1
                p = par[x]
                nxt[x] = p
                x = p
                while nxt[x] != x:
                    nxt[x] = nxt[nxt[x]]
                    x = nxt[x]
        if left <= 0:
            break
    return ans


def _forest_assign(n: int, tree_edges, uu, vv, vals, finalized, engine: str) -> np.ndarray:
    forest = PathMinForest(n, tree_edges, engine=engine)
    for i in range(len(vals)):
        forest.path_min_update(int(uu[i]), int(vv[i]), float(vals[i]))
    out = np.full(n, INF)
    for v in range(n):
        if finalized[v]:
            out[v] = forest.query(v)
    return out


def _full_run_scipy(g: Graph, s: int, engine: str) -> CedRun:
    d, pred = _sp_dijkstra(g.csr(), indices=s, return_predecessors=True)
    fin = np.isfinite(d)
    parent = np.where(pred < 0, -1, pred).astype(np.int64)
    n = g.n
    idx = np.arange(n, dtype=np.int64)
    jmp = np.where(parent >= 0, parent, idx)
    depth = (jmp != idx).astype(np.int64)
    hop = jmp
    while True:
        nxt_depth = depth + depth[hop]
        nxt_hop = hop[hop]
        if np.array_equal(nxt_hop, hop):
            break
        depth, hop = nxt_depth, nxt_hop
    # candidate edges: both endpoints reached and not a tree edge
    eu, ev, ew, eids = g.eu, g.ev, g.ew, g.eids
    both = fin[eu] & fin[ev]
    tree = (parent[ev] == eu) | (parent[eu] == ev)
    cand = both & ~tree
    uu = eu[cand]
    vv = ev[cand]
    ww = ew[cand]
    lca = _vector_lca(parent, depth, uu.copy(), vv.copy())
    d_t = d[uu] + d[vv] - 2.0 * d[lca]
    vals = ww + d_t
    est = np.full(n, INF)
    if len(vals):
        if engine == "offline":
            order = np.argsort(vals, kind="stable")
            est = np.asarray(_offline_assign(n, parent, depth, lca, uu, vv,
                                             vals, order,
                                             reachable=int(fin.sum())))
        else:
            tree_edges = [(int(v), int(parent[v])) for v in range(n) if parent[v] >= 0]
            est = _forest_assign(n, tree_edges, uu, vv, vals, fin, engine)
    deg = np.zeros(n, dtype=np.int64)
    np.add.at(deg, eu, 1)
    np.add.at(deg, ev, 1)
    scanned = int(deg[fin].sum())
    explored = eids[fin[eu] | fin[ev]]
    dist = np.where(fin, d, INF)
    est = np.where(fin, est, INF)
    ce = CycleEstimates(est, fin.astype(np.int64))
    return CedRun(s, dist, parent, fin, np.asarray(explored), scanned, ce)


def _vector_lca(parent: np.ndarray, depth: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    if len(u) == 0:
        return u
    n = len(parent)
    idx = np.arange(n, dtype=np.int64)
    up = [np.where(parent >= 0, parent, idx)]
    max_depth = int(depth.max(initial=0))
    levels = max(1, int(max_depth).bit_length())
    for _ in range(1, levels):
        up.append(up[-1][up[-1]])
    swap = depth[v] > depth[u]
    u[swap], v[swap] = v[swap], u[swap].copy()
    diff = depth[u] - depth[v]
    for j in range(levels):
        m = (diff >> j) & 1 == 1
        if m.any():
            u[m] = up[j][u[m]]
    same = u == v
    for j in range(levels - 1, -1, -1):
        ne = ~same & (up[j][u] != up[j][v])
        if ne.any():
            u[ne] = up[j][u[ne]]
            v[ne] = up[j][v[ne]]
    out = np.where(same, u, up[0][u])
    return out


def _truncated_run(g: Graph, s: int, policy: TruncationPolicy, engine: str,
                   adjacency=None) -> CedRun:
    arc_log: list[int] = []
    adj = g.adjacency if adjacency is None else adjacency
    t = _run(adj, g.n, (s,), policy, arc_log=arc_log)
    n = g.n
    order = t.order
    fin = np.zeros(n, dtype=bool)
    fin[order] = True
    dlist = t.dist
    plist = t.parent
    dep = [0] * n
    for v in order:
        p = plist[v]
        if p >= 0:
            dep[v] = dep[p] + 1
    explored = np.unique(np.asarray(arc_log, dtype=np.int64)) if arc_log else np.empty(0, dtype=np.int64)
    # updates: scanned edges with both endpoints finalized, excluding tree edges
    seen: set[int] = set()
    uu: list[int] = []
    vv: list[int] = []
    vals: list[float] = []
    lcas: list[int] = []
    pos = g.eid_pos()
    geu, gev, gew = g.eu, g.ev, g.ew
    pe = t.parent_eid
    for eid in arc_log:
        if eid in seen:
            continue
        seen.add(eid)
        i = pos[eid]
        a, b, w = int(geu[i]), int(gev[i]), int(gew[i])
        if not (fin[a] and fin[b]):
            continue
        if pe[a] == eid or pe[b] == eid:
            continue
        x, y = a, b
        while dep[x] > dep[y]:
            x = plist[x]
        while dep[y] > dep[x]:
            y = plist[y]
        while x != y:
            x = plist[x]
            y = plist[y]
        uu.append(a)
        vv.append(b)
        vals.append(w + dlist[a] + dlist[b] - 2 * dlist[x])
        lcas.append(x)
    values = np.full(n, INF)
    if vals:
        if engine == "offline":
            idx = sorted(range(len(vals)), key=vals.__getitem__)
            ans = _offline_assign(n, plist, dep, lcas, uu, vv, vals, idx,
                                  reachable=len(order))
            values[order] = [ans[v] for v in order]
        else:
            tree_edges = [(v, plist[v]) for v in order if plist[v] >= 0]
            est = _forest_assign(n, tree_edges, np.asarray(uu), np.asarray(vv),
                                 np.asarray(vals), fin, engine)
            values[order] = est[order]
    dist = np.full(n, INF)
    dist[order] = [dlist[v] for v in order]
    parent = np.full(n, -1, dtype=np.int64)
    parent[order] = [plist[v] for v in order]
    ce = CycleEstimates(values, fin.astype(np.int64))
    return CedRun(s, dist, parent, fin, explored, t.edges_scanned, ce)


def cycle_estimation_run(g: Graph, s: int, policy: TruncationPolicy = NO_TRUNCATION,
                         engine: str = "offline", adjacency=None) -> CedRun:
    """Instrumented cycle-estimation Dijkstra from s.

    ``adjacency`` optionally overrides the arc lists (same vertex set, arcs
    referencing g's edge ids); used to run inside per-sample edge overlays
    without materializing subgraphs.
    """
    if g.directed:
        raise GraphError("cycle estimation is defined for undirected graphs")
    if not 0 <= s < g.n:
        raise GraphError(f"source {s} out of range")
    if engine not in ("offline", "splay", "naive"):
        raise GraphError(f"unknown engine {engine!r}")
    if policy.is_none and adjacency is None:
        return _full_run_scipy(g, s, engine)
    return _truncated_run(g, s, policy, engine, adjacency)


def cycle_estimation_dijkstra(g: Graph, s: int, policy: TruncationPolicy = NO_TRUNCATION,
                              engine: str = "offline") -> CycleEstimates:
    """Per-vertex cycle-length upper bounds from one run; INF when unvisited."""
    return cycle_estimation_run(g, s, policy, engine).estimates
