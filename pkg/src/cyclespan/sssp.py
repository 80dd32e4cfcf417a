"""Dijkstra variants (full, truncated, multi-source, label-filtered) and
hitting-set sampling.

Truncated runs are exact within their explored region: every finalized
distance equals the untruncated distance.  Ties pop lowest vertex id, which
makes every run deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from heapq import heappush, heappop
from typing import Callable, Sequence

import numpy as np

from ._util import HITTING_CONSTANT, rng_from
from .graph import Graph, GraphError, INF

__all__ = [
    "DistTree",
    "HittingSample",
    "TruncationPolicy",
    "dijkstra",
    "multi_source_dijkstra",
    "sample_hitting",
]


@dataclass
class TruncationPolicy:
    """Conjunction of stop rules for a Dijkstra run.

    edge_budget stops after that many scanned arcs; vertex_budget after that
    many finalized vertices; radius keeps popping while key <= radius;
    label_filter drops non-matching vertices at pop time (source exempt).
    """

    edge_budget: int | None = None
    vertex_budget: int | None = None
    radius: float | None = None
    label_filter: Callable[[int], bool] | None = None

    def __post_init__(self):
        if self.edge_budget is not None and self.edge_budget < 1:
            raise GraphError("edge_budget must be >= 1")
        if self.vertex_budget is not None and self.vertex_budget < 1:
            raise GraphError("vertex_budget must be >= 1")
        if self.radius is not None and self.radius < 0:
            raise GraphError("radius must be >= 0")

    @property
    def is_none(self) -> bool:
        return (self.edge_budget is None and self.vertex_budget is None
                and self.radius is None and self.label_filter is None)


NO_TRUNCATION = TruncationPolicy()


@dataclass
class DistTree:
    """Result of a (possibly truncated) Dijkstra run."""

    sources: tuple[int, ...]
    dist: list[float]
    parent: list[int]            # parent vertex, -1 at sources / unvisited
    parent_eid: list[int]        # edge id into parent, -1 at sources
    nearest_source: list[int]    # -1 when unvisited
    order: list[int]             # finalized vertices in pop order
    edges_scanned: int
    truncated: bool              # True when a stop rule fired before exhaustion

    def visited(self, v: int) -> bool:
        return self.nearest_source[v] >= 0


def _run(adj, n: int, sources: Sequence[int], policy: TruncationPolicy,
         arc_log: list | None = None) -> DistTree:
    dist = [INF] * n
    parent = [-1] * n
    parent_eid = [-1] * n
    label = [-1] * n
    order: list[int] = []
    touched: list[int] = []
    heap: list[tuple[float, int]] = []
    src_set = set(int(s) for s in sources)
    for s in sorted(src_set):
        dist[s] = 0
        label[s] = s
        touched.append(s)
        heappush(heap, (0, s))
    done = [False] * n
    scanned = 0
    truncated = False
    eb = policy.edge_budget
    vb = policy.vertex_budget
    radius = policy.radius
    filt = policy.label_filter
    push = heappush
    while heap:
        d, u = heappop(heap)
        if done[u] or d > dist[u]:
            continue
        if radius is not None and d > radius:
            truncated = True
            break
        if filt is not None and u not in src_set and not filt(u):
            continue
        done[u] = True
        order.append(u)
        if vb is not None and len(order) >= vb:
            truncated = True
            break
        stop = False
        lu = label[u]
        for v, w, eid in adj[u]:
            if eb is not None and scanned >= eb:
                truncated = True
                stop = True
                break
            scanned += 1
            if arc_log is not None:
                arc_log.append(eid)
            nd = d + w
            if not done[v]:
                dv = dist[v]
                if nd < dv or (nd == dv and lu < label[v]):
                    if dv == INF:
                        touched.append(v)
                    dist[v] = nd
                    label[v] = lu
                    parent[v] = u
                    parent_eid[v] = eid
                    push(heap, (nd, v))
        if stop:
            break
    nearest = [-1] * n
    for v in order:
        nearest[v] = label[v]
    # distances of non-finalized vertices are provisional; reset to INF
    for v in touched:
        if nearest[v] < 0:
            dist[v] = INF
            parent[v] = -1
            parent_eid[v] = -1
    return DistTree(tuple(sorted(src_set)), dist, parent, parent_eid,
                    nearest, order, scanned, truncated)


def dijkstra(g: Graph, s: int, policy: TruncationPolicy = NO_TRUNCATION) -> DistTree:
    """Single-source Dijkstra under a truncation policy."""
    if not 0 <= s < g.n:
        raise GraphError(f"source {s} out of range")
    return _run(g.adjacency, g.n, (s,), policy)


def multi_source_dijkstra(g: Graph, sources: Sequence[int]) -> DistTree:
    """dist(v) = min over sources; nearest-source ties go to the lowest id.

    The recorded tree is path-consistent: every vertex on the tree path from
    nearest_source(v) to v has the same nearest source.
    """
    if not sources:
        raise GraphError("sources must be non-empty")
    for s in sources:
        if not 0 <= s < g.n:
            raise GraphError(f"source {s} out of range")
    return _run(g.adjacency, g.n, tuple(sources), NO_TRUNCATION)


@dataclass
class HittingSample:
    """Random ids sized to hit every vertex's x nearest vertices/edges whp."""

    ids: np.ndarray
    universe: str                 # "vertices" | "edges"
    coverage: int                 # the x parameter
    seed: int
    size_constant: int = HITTING_CONSTANT

    def __len__(self):
        return len(self.ids)


def sample_hitting(g: Graph, universe: str, x: int, seed: int) -> HittingSample:
    """Sample ceil(c_h * (U/x) * ln n) distinct ids from the vertex or edge universe."""
    if universe == "vertices":
        total = g.n
    elif universe == "edges":
        total = g.m
    else:
        raise GraphError(f"unknown universe {universe!r}")
    if not 1 <= x <= max(total, 1):
        raise GraphError(f"coverage x={x} outside [1, {total}]")
    size = math.ceil(HITTING_CONSTANT * (total / x) * math.log(max(g.n, 2)))
    size = min(size, total)
    rng = rng_from(seed)
    ids = np.sort(rng.choice(total, size=size, replace=False)) if size else np.empty(0, dtype=np.int64)
    return HittingSample(ids.astype(np.int64), universe, x, seed)
