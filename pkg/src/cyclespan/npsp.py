"""Exact oracle and approximation algorithms for n-pairs shortest paths,
including the bunch-intersection distance oracle, spanner composition, and
the two-sided estimate for dense graphs, plus the pair special case over
vertex sets S x T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from heapq import heappush, heappop

import numpy as np
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

from ._util import child_seed, rng_from
from .graph import Graph, GraphError, PairQuerySet, restrict_edges, INF
from .spanners import spanner_2k_minus_1, spanner_composite_2eps, spanner_near_additive
from .sssp import TruncationPolicy, dijkstra, multi_source_dijkstra, sample_hitting

__all__ = [
    "NpspResult",
    "StInstance",
    "TzOracle",
    "build_tz_oracle",
    "exact_npsp",
    "npsp_2eps",
    "npsp_spanner_compose",
    "npsp_tz",
    "recover_reduced_distances",
    "reduce_npsp_to_ansc",
    "st_shortest_paths",
]


@dataclass
class NpspResult:
    """Answered query set plus run metadata."""

    queries: PairQuerySet
    algorithm: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    edges_scanned: int = 0
    exact: list[float] | None = None

    @property
    def answers(self) -> list[float]:
        return self.queries.answers

    def with_exact(self, exact) -> "NpspResult":
        self.exact = [float(x) for x in exact]
        return self

    def csv_rows(self):
        params = ";".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        for i, (s, t) in enumerate(self.queries.pairs):
            est = self.answers[i]
            ex = ""
            ratio = ""
            if self.exact is not None and math.isfinite(self.exact[i]):
                ex = int(self.exact[i])
                if math.isfinite(est) and self.exact[i] > 0:
                    ratio = f"{est / self.exact[i]:.6g}"
            yield [s, t, "inf" if not math.isfinite(est) else int(est), ex,
                   ratio, self.algorithm, params, self.seed]


# -- exact ------------------------------------------------------------------


def exact_npsp(g: Graph, q: PairQuerySet) -> NpspResult:
    """Exact distances, one Dijkstra per distinct source."""
    sources = sorted(set(s for s, _ in q.pairs))
    if sources:
        d = _sp_dijkstra(g.csr(), indices=sources)
        row = {s: i for i, s in enumerate(sources)}
        answers = [float(d[row[s], t]) for s, t in q.pairs]
    else:
        answers = []
    answers = [a if math.isfinite(a) else INF for a in answers]
    return NpspResult(q.with_answers(answers), "exact",
                      edges_scanned=len(sources) * 2 * g.m)


# -- distance oracle ----------------------------------------------------------


@dataclass
class TzOracle:
    """Level samples, per-vertex pivots, and exact-distance bunches."""

    k: int
    levels: list[list[int]]
    pivot: np.ndarray        # (k, n): pivot vertex per level, -1 if none
    pivot_dist: np.ndarray   # (k, n)
    bunch_keys: list[list[int]]     # per vertex, sorted
    bunch_dist: list[list[float]]   # aligned with bunch_keys
    edges_scanned: int = 0

    def bunch_size_total(self) -> int:
        return sum(len(b) for b in self.bunch_keys)


def _cluster_scan(g: Graph, w: int, next_dist) -> tuple[list[tuple[int, float]], int]:
    """Vertices v with d(w, v) < next_dist[v], with exact distances."""
    adj = g.adjacency
    dist = {w: 0}
    done = set()
    heap = [(0, w)]
    out = []
    scanned = 0
    while heap:
        d, u = heappop(heap)
        if u in done or d > dist.get(u, INF):
            continue
        done.add(u)
        out.append((u, d))
        for v, wt, _ in adj[u]:
            scanned += 1
            nd = d + wt
            if nd < next_dist[v] and nd < dist.get(v, INF):
                dist[v] = nd
                heappush(heap, (nd, v))
    return out, scanned


def build_tz_oracle(g: Graph, k: int, seed: int = 0) -> TzOracle:
    """Hierarchy of samples with bunches of exact distances."""
    if g.directed:
        raise GraphError("undirected graphs only")
    if k < 2:
        raise GraphError("k must be >= 2")
    n = g.n
    rng = rng_from(seed)
    p = n ** (-1.0 / k) if n else 0.5
    levels: list[list[int]] = [list(range(n))]
    for i in range(1, k):
        prev = levels[-1]
        keep = [v for v in prev if rng.random() < p]
        levels.append(keep)
    pivot = np.full((k, n), -1, dtype=np.int64)
    pivot_dist = np.full((k, n), INF)
    scanned = 0
    for i in range(k):
        if not levels[i]:
            continue
        ms = multi_source_dijkstra(g, levels[i])
        scanned += ms.edges_scanned
        pivot[i] = ms.nearest_source
        pivot_dist[i] = ms.dist
    bunches: list[dict[int, float]] = [dict() for _ in range(n)]
    for i in range(k):
        level_set = set(levels[i + 1]) if i + 1 < k else set()
        next_dist = pivot_dist[i + 1] if i + 1 < k else np.full(n, INF)
        for w in levels[i]:
            if w in level_set:
                continue
            members, sc = _cluster_scan(g, w, next_dist)
            scanned += sc
            for v, d in members:
                bunches[v][w] = d
    bunch_keys = []
    bunch_dist = []
    for v in range(n):
        keys = sorted(bunches[v])
        bunch_keys.append(keys)
        bunch_dist.append([bunches[v][w] for w in keys])
    return TzOracle(k, levels, pivot, pivot_dist, bunch_keys, bunch_dist, scanned)


def _bunch_intersection_min(o: TzOracle, s: int, t: int) -> float:
    """Sorted-merge over bunch keys; min of d(s,w) + d(w,t)."""
    ka, da = o.bunch_keys[s], o.bunch_dist[s]
    kb, db = o.bunch_keys[t], o.bunch_dist[t]
    i = j = 0
    best = INF
    while i < len(ka) and j < len(kb):
        if ka[i] == kb[j]:
            cand = da[i] + db[j]
            if cand < best:
                best = cand
            i += 1
            j += 1
        elif ka[i] < kb[j]:
            i += 1
        else:
            j += 1
    return best


def tz_query(o: TzOracle, s: int, t: int) -> float:
    """Modified query: bunch-intersection base case, then pivot ascent."""
    base = _bunch_intersection_min(o, s, t)
    if math.isfinite(base):
        return base
    u, v = s, t
    w = s
    i = 0
    du_w = 0.0
    while w not in set(o.bunch_keys[v]):
        i += 1
        if i >= o.k:
            return INF
        u, v = v, u
        w = int(o.pivot[i, u])
        du_w = float(o.pivot_dist[i, u])
        if w < 0:
            return INF
    keys = o.bunch_keys[v]
    pos = keys.index(w) if w in keys else -1
    if pos < 0:
        return du_w if u == v else INF
    return du_w + o.bunch_dist[v][pos]


def npsp_tz(g: Graph, q: PairQuerySet, k: int = 2, seed: int = 0) -> NpspResult:
    """Per-pair estimates within (2k-3)*d + 2*ceil(d/2) whp."""
    q.validate_size(g.n)
    oracle = build_tz_oracle(g, k, seed)
    answers = [tz_query(oracle, s, t) for s, t in q.pairs]
    return NpspResult(q.with_answers(answers), "tz",
                      {"k": k, "alpha": 2 * k - 3, "beta": "2*ceil(d/2)"},
                      seed=seed, edges_scanned=oracle.edges_scanned)


def npsp_spanner_compose(g: Graph, q: PairQuerySet, k: int = 2, seed: int = 0) -> NpspResult:
    """Oracle run on a (2k-1)-spanner; documented bound
    (2k-3)*(2k-1)*d + 2*ceil((2k-1)*d/2)."""
    q.validate_size(g.n)
    sp = spanner_2k_minus_1(g, k, seed=child_seed(seed, 1))
    inner = npsp_tz(sp.as_graph(), q, k, seed=child_seed(seed, 2))
    return NpspResult(q.with_answers(inner.answers), "spanner_compose",
                      {"k": k, "spanner_edges": sp.edge_count},
                      seed=seed, edges_scanned=inner.edges_scanned)


# -- dense-graph two-part algorithm ------------------------------------------


def _high_degree_safe_sample(g: Graph, seed: int) -> tuple[list[int], np.ndarray]:
    """Sample of ~3*sqrt(n)*ln n vertices such that every vertex outside the
    sample's neighborhood has degree <= sqrt(n); redrawn, then patched
    deterministically if randomness keeps failing."""
    n = g.n
    deg = g.degrees()
    thr = math.sqrt(n)
    want = min(n, math.ceil(3 * math.sqrt(n) * math.log(max(n, 2))))
    adj = g.adjacency
    attempt_seed = seed
    for attempt in range(10):
        rng = rng_from(attempt_seed, 17)
        sample = set(int(v) for v in rng.choice(n, size=want, replace=False))
        in_ns = np.zeros(n, dtype=bool)
        for s in sample:
            in_ns[s] = True
            for u, _, _ in adj[s]:
                in_ns[u] = True
        bad = [v for v in range(n) if not in_ns[v] and deg[v] > thr]
        if not bad:
            return sorted(sample), in_ns
        attempt_seed = child_seed(attempt_seed, 23, attempt)
    for v in bad:
        nb = min(u for u, _, _ in adj[v])
        sample.add(nb)
        in_ns[nb] = True
        for u, _, _ in adj[nb]:
            in_ns[u] = True
    return sorted(sample), in_ns


def npsp_2eps(g: Graph, q: PairQuerySet, eps: float = 0.5, seed: int = 0) -> NpspResult:
    """(2+eps, beta)-approximation: low-degree spanner estimate joined with
    hub routing through sampled vertices on a composite spanner."""
    if g.directed:
        raise GraphError("undirected graphs only")
    if g.has_edge_weights():
        raise GraphError("unweighted graphs only")
    if eps <= 0:
        raise GraphError("eps must be positive")
    q.validate_size(g.n)
    n = g.n
    sample, in_ns = _high_degree_safe_sample(g, child_seed(seed, 1))
    out_ids = {int(g.eids[i]) for i in range(g.m)
               if not in_ns[g.eu[i]] or not in_ns[g.ev[i]]}
    es_graph = restrict_edges(g, out_ids)
    scanned = 0
    if es_graph.m:
        p1 = spanner_near_additive(es_graph, eps / 2, seed=child_seed(seed, 2))
        beta1 = p1.beta
        inner = npsp_tz(p1.as_graph(), q, 2, seed=child_seed(seed, 3))
        d1 = inner.answers
        scanned += inner.edges_scanned
    else:
        beta1 = 0.0
        d1 = [INF] * len(q)
    comp = spanner_composite_2eps(g, eps, seed=child_seed(seed, 4))
    beta2 = comp.beta
    hs = comp.as_graph()
    dmat = _sp_dijkstra(hs.csr(), indices=sample)
    scanned += len(sample) * 2 * hs.m
    s_idx = np.asarray([s for s, _ in q.pairs])
    t_idx = np.asarray([t for _, t in q.pairs])
    if len(sample):
        d2 = np.min(dmat[:, s_idx] + dmat[:, t_idx], axis=0)
    else:
        d2 = np.full(len(q), INF)
    answers = [min(a, float(b)) for a, b in zip(d1, d2)]
    beta = max(2 * beta1 + 1, 4 + 2 * eps + 2 * beta2)
    return NpspResult(q.with_answers(answers), "2eps",
                      {"eps": eps, "alpha": 2 + eps, "beta": beta,
                       "beta_near_additive": beta1, "beta_composite": beta2},
                      seed=seed, edges_scanned=scanned)


# -- ST special case -----------------------------------------------------------


@dataclass
class StInstance:
    """Vertex sets S and T (each at most c*sqrt(n)) plus the ball edge budget."""

    S: list[int]
    T: list[int]
    r: int | None = None
    max_factor: int = 4


def _complete_ball(g: Graph, u: int, r: int) -> tuple[dict[int, float], int]:
    """Complete metric ball grown with ~2r scanned arcs, full shell included.

    A probe run finds the attained radius; a radius-bounded rerun finalizes
    every vertex through that radius, so non-membership of v certifies
    d(u, v) > radius >= every member distance.
    """
    probe = dijkstra(g, u, TruncationPolicy(edge_budget=2 * r))
    scanned = probe.edges_scanned
    if not probe.truncated:
        return {v: probe.dist[v] for v in probe.order}, scanned
    rho = max(probe.dist[v] for v in probe.order)
    full = dijkstra(g, u, TruncationPolicy(radius=rho))
    scanned += full.edges_scanned
    return {v: full.dist[v] for v in full.order}, scanned


def st_shortest_paths(g: Graph, inst: StInstance, seed: int = 0) -> NpspResult:
    """2-approximation for all pairs in S x T.

    Balls are trimmed to complete metric balls so joint membership certifies
    d(s,u), d(u,t) <= d(s,t); disjoint-ball pairs fall back to the sampled
    landmark set, whose full searches hit every ball whp.  Ball intersection
    uses a hash join over ball membership.
    """
    if g.directed:
        raise GraphError("undirected graphs only")
    n, m = g.n, g.m
    cap = inst.max_factor * math.sqrt(n)
    if len(inst.S) > cap or len(inst.T) > cap:
        raise GraphError(f"|S| and |T| must be at most {inst.max_factor}*sqrt(n)")
    r = inst.r if inst.r is not None else max(1, math.ceil(m / n ** 0.4))
    r = min(r, max(1, 2 * m))
    scanned = 0
    balls_s = {}
    for s in inst.S:
        balls_s[s], sc = _complete_ball(g, s, r)
        scanned += sc
    balls_t = {}
    for t in inst.T:
        balls_t[t], sc = _complete_ball(g, t, r)
        scanned += sc
    best: dict[tuple[int, int], float] = {(s, t): INF for s in inst.S for t in inst.T}
    # direct edges give the pair distance outright on unweighted inputs
    t_set = set(inst.T)
    for i in range(m):
        a, b = int(g.eu[i]), int(g.ev[i])
        w = int(g.ew[i])
        for x, y in ((a, b), (b, a)):
            if x in balls_s and y in t_set:
                key = (x, y)
                if w < best[key]:
                    best[key] = float(w)
    # case 2a: the other endpoint is inside the ball -> exact
    for s, ball in balls_s.items():
        for t in inst.T:
            if t in ball:
                best[(s, t)] = min(best[(s, t)], ball[t])
    for t, ball in balls_t.items():
        for s in inst.S:
            if s in ball:
                best[(s, t)] = min(best[(s, t)], ball[s])
    # case 2b: hash join on common ball vertices
    owners_s: dict[int, list[tuple[int, float]]] = {}
    for s, ball in balls_s.items():
        for v, d in ball.items():
            owners_s.setdefault(v, []).append((s, d))
    for t, ball in balls_t.items():
        for v, d in ball.items():
            for s, ds in owners_s.get(v, ()):
                key = (s, t)
                cand = ds + d
                if cand < best[key]:
                    best[key] = cand
    # case 1: landmark sample covering every ball
    if m:
        sample = sample_hitting(g, "edges", min(r, m), child_seed(seed, 5))
        landmarks = sorted({int(g.eu[i]) for i in sample.ids} |
                           {int(g.ev[i]) for i in sample.ids})
        if landmarks:
            dmat = _sp_dijkstra(g.csr(), indices=landmarks)
            scanned += len(landmarks) * 2 * m
            s_pos = {s: i for i, s in enumerate(inst.S)}
            t_pos = {t: i for i, t in enumerate(inst.T)}
            via = np.full((len(inst.S), len(inst.T)), INF)
            for lo in range(0, len(landmarks), 32):
                chunk = dmat[lo:lo + 32]
                cand = chunk[:, inst.S][:, :, None] + chunk[:, inst.T][:, None, :]
                via = np.minimum(via, np.min(cand, axis=0))
            for (s, t) in best:
                cand = float(via[s_pos[s], t_pos[t]])
                if cand < best[(s, t)]:
                    best[(s, t)] = cand
    pairs = [(s, t) for s in inst.S for t in inst.T]
    answers = [best[p] for p in pairs]
    qs = PairQuerySet(pairs, max_factor=10**9)
    return NpspResult(qs.with_answers(answers), "st",
                      {"r": r, "alpha": 2, "beta": 0},
                      seed=seed, edges_scanned=scanned)


# -- reduction ------------------------------------------------------------------


def reduce_npsp_to_ansc(g: Graph, q: PairQuerySet) -> tuple[Graph, list[int]]:
    """One new vertex per pair with two heavy edges to the pair endpoints;
    the shortest cycle through the new vertex is 2*10*n*M + d(s, t)."""
    if g.directed:
        raise GraphError("undirected graphs only")
    heavy = 10 * g.n * max(1, g.max_weight)
    edges = [(int(g.eu[i]), int(g.ev[i]), int(g.ew[i])) for i in range(g.m)]
    new_ids = []
    n = g.n
    for s, t in q.pairs:
        vi = n
        n += 1
        new_ids.append(vi)
        edges.append((vi, s, heavy))
        edges.append((vi, t, heavy))
    return Graph(n, edges), new_ids


def recover_reduced_distances(g: Graph, ansc_values, new_ids) -> list[float]:
    heavy = 10 * g.n * max(1, g.max_weight)
    longest_real = (g.n - 1) * max(1, g.max_weight)
    out = []
    for vi in new_ids:
        sc = ansc_values[vi]
        val = sc - 2 * heavy if math.isfinite(sc) else INF
        # a disconnected pair can still close a cycle through other added
        # vertices, at cost >= 2 more heavy edges; no real path gets that long
        out.append(val if val <= longest_real else INF)
    return out
