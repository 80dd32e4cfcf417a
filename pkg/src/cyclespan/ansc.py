"""Exact oracles and approximation algorithms for all-nodes shortest
cycles on undirected graphs (directed exact oracle via vertex doubling).

Every algorithm returns an :class:`AnscResult` whose estimates are sound
(each finite value is the length of a real cycle through that vertex) and
satisfy the documented upper bound against the exact values with high
probability.  Work is tracked as scanned arcs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

from ._util import child_seed
from .cycle_est import CycleEstimates, cycle_estimation_run, merge
from .graph import Graph, GraphError, VertexMap, degree_uniformize, restrict_edges, INF
from .spanners import fault_tolerant_spanner, spanner_composite_2eps, \
    spanner_k_kminus1, spanner_near_additive
from .sssp import NO_TRUNCATION, TruncationPolicy, multi_source_dijkstra, \
    sample_hitting, _run as _raw_run

__all__ = [
    "AnscResult",
    "EdgeBallIndex",
    "ansc_2approx",
    "ansc_2eps",
    "ansc_6_1",
    "ansc_k2",
    "ansc_k_approx",
    "ansc_near_opt",
    "ansc_small_cycles",
    "edge_ball_index",
    "exact_ansc",
    "exact_ansc_directed",
]


@dataclass
class AnscResult:
    """Per-vertex shortest-cycle estimates plus run metadata."""

    estimates: np.ndarray
    algorithm: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    edges_scanned: int = 0
    exact: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.estimates)

    def with_exact(self, exact: np.ndarray) -> "AnscResult":
        self.exact = np.asarray(exact, dtype=np.float64)
        return self

    def ratios(self) -> np.ndarray:
        """Per-vertex estimate / exact where both finite; NaN elsewhere."""
        if self.exact is None:
            raise GraphError("no exact values attached")
        out = np.full(self.n, np.nan)
        ok = np.isfinite(self.exact) & (self.exact > 0)
        out[ok] = self.estimates[ok] / self.exact[ok]
        return out

    def csv_rows(self):
        params = ";".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        for v in range(self.n):
            est = self.estimates[v]
            ex = "" if self.exact is None or not np.isfinite(self.exact[v]) else int(self.exact[v])
            if self.exact is not None and np.isfinite(self.exact[v]) and np.isfinite(est):
                ratio = f"{est / self.exact[v]:.6g}"
            else:
                ratio = ""
            yield [v, "inf" if not np.isfinite(est) else int(est), ex, ratio,
                   self.algorithm, params, self.seed]


# -- exact oracles -------------------------------------------------------


def _branch_labels(n: int, src: int, pred_row, order) -> np.ndarray:
    """First hop out of src on the tree path to each vertex (-1 at src)."""
    branch = np.full(n, -1, dtype=np.int64)
    for x in order:
        p = pred_row[x]
        if p < 0:
            continue
        branch[x] = x if p == src else branch[p]
    return branch


def exact_ansc(g: Graph, method: str = "branch") -> AnscResult:
    """Exact shortest cycle through every vertex of an undirected graph.

    ``branch`` runs one Dijkstra per vertex and scans edges whose endpoints
    hang off different root branches (plus incident edges whose tree path
    avoids them); both candidate families are simple cycles and together
    they realize min over incident edges e=(v,u) of w(e) + d_{G-e}(v,u).
    ``punctured`` computes that defining formula literally, one punctured
    Dijkstra per edge side.
    """
    if g.directed:
        raise GraphError("exact_ansc expects an undirected graph")
    if method not in ("branch", "punctured"):
        raise GraphError(f"unknown method {method!r}")
    n, m = g.n, g.m
    best = np.full(n, INF)
    if m == 0 or n == 0:
        return AnscResult(best, "exact", {"method": method})
    if method == "punctured":
        scanned = 0
        for i in range(m):
            u, v, w = int(g.eu[i]), int(g.ev[i]), int(g.ew[i])
            keep = np.ones(m, dtype=bool)
            keep[i] = False
            rows = np.concatenate([g.eu[keep], g.ev[keep]])
            cols = np.concatenate([g.ev[keep], g.eu[keep]])
            data = np.concatenate([g.ew[keep], g.ew[keep]])
            punct = csr_matrix((data, (rows, cols)), shape=(n, n))
            d = _sp_dijkstra(punct, indices=u)
            scanned += 2 * (m - 1)
            if np.isfinite(d[v]):
                cyc = w + d[v]
                best[u] = min(best[u], cyc)
                best[v] = min(best[v], cyc)
        return AnscResult(best, "exact", {"method": method}, edges_scanned=scanned)

    dist, pred = _sp_dijkstra(g.csr(), indices=np.arange(n), return_predecessors=True)
    eu, ev, ew = g.eu, g.ev, g.ew
    adj = g.adjacency
    for v in range(n):
        drow = dist[v]
        finite = np.isfinite(drow)
        order = np.argsort(drow, kind="stable")
        order = order[finite[order]]
        branch = _branch_labels(n, v, pred[v], order)
        ok = finite[eu] & finite[ev] & (eu != v) & (ev != v) & (branch[eu] != branch[ev])
        if ok.any():
            vals = drow[eu[ok]] + ew[ok] + drow[ev[ok]]
            best[v] = min(best[v], float(vals.min()))
        for u, w, eid in adj[v]:
            if branch[u] != u and finite[u]:
                best[v] = min(best[v], w + drow[u])
    return AnscResult(best, "exact", {"method": method},
                      edges_scanned=int(n * 2 * m))


def exact_ansc_directed(g: Graph) -> AnscResult:
    """Exact directed shortest cycles via the two-copy reduction.

    Each vertex v gets an out-copy v and an in-copy n+v; every arc (u, x)
    yields arcs u->x and u->(n+x).  The distance from v to n+v equals the
    shortest directed cycle through v.
    """
    if not g.directed:
        raise GraphError("exact_ansc_directed expects a directed graph")
    n, m = g.n, g.m
    best = np.full(n, INF)
    if m == 0:
        return AnscResult(best, "exact-directed")
    rows = np.concatenate([g.eu, g.eu])
    cols = np.concatenate([g.ev, g.ev + n])
    data = np.concatenate([g.ew, g.ew])
    doubled = csr_matrix((data, (rows, cols)), shape=(2 * n, 2 * n))
    d = _sp_dijkstra(doubled, indices=np.arange(n))
    diag = d[np.arange(n), np.arange(n) + n]
    best = np.where(np.isfinite(diag), diag, INF)
    return AnscResult(best, "exact-directed", edges_scanned=int(n * 2 * m))


# -- warm-up 2-approximation ----------------------------------------------


def _endpoints_of_edge_sample(g: Graph, ids) -> list[int]:
    out = set()
    for i in ids:
        out.add(int(g.eu[i]))
        out.add(int(g.ev[i]))
    return sorted(out)


def ansc_2approx(g: Graph, seed: int = 0) -> AnscResult:
    """2-approximation: full runs from a hitting edge sample's endpoints
    plus an edge-budget truncated run from every vertex."""
    if g.directed:
        raise GraphError("undirected graphs only")
    n, m = g.n, g.m
    acc = CycleEstimates.empty(n)
    scanned = 0
    if m:
        x = max(1, math.ceil(m / math.sqrt(max(n, 1))))
        sample = sample_hitting(g, "edges", min(x, m), seed)
        for s in _endpoints_of_edge_sample(g, sample.ids):
            run = cycle_estimation_run(g, s)
            acc = merge(acc, run.estimates)
            scanned += run.edges_scanned
        budget = x
        pol = TruncationPolicy(edge_budget=budget)
        for v in range(n):
            run = cycle_estimation_run(g, v, pol)
            acc = merge(acc, run.estimates)
            scanned += run.edges_scanned
    return AnscResult(acc.values, "2approx",
                      {"alpha": 2, "beta": 0, "work_constant": 16},
                      seed=seed, edges_scanned=scanned)


# -- (k+eps)-approximation -------------------------------------------------


def ansc_k_approx(g: Graph, k: int, eps: float = 0.25, seed: int = 0) -> AnscResult:
    """Scale-laddered label-filtered approximation with multiplicative
    bound k*(1+eps)^3.

    Degree-uniformizes, takes full runs from a vertex sample hitting every
    n^((k-1)/k) neighborhood, then per distance scale D grows label-filtered
    truncated runs from still-on original vertices, switching vertices off
    once their estimate is settled for that scale.
    """
    if g.directed:
        raise GraphError("undirected graphs only")
    if k < 3:
        raise GraphError("k must be >= 3")
    if eps <= 0:
        raise GraphError("eps must be positive")
    n0, m0 = g.n, g.m
    if m0 == 0:
        return AnscResult(np.full(n0, INF), "k_approx", {"k": k, "eps": eps}, seed=seed)
    cap = max(2, math.ceil(2 * m0 / max(n0, 1)))
    h, vmap = degree_uniformize(g, None, cap=cap)
    n = h.n
    acc = CycleEstimates.empty(n)
    scanned = 0

    x_cover = min(n, max(1, math.ceil(n ** ((k - 1) / k))))
    sample = sample_hitting(h, "vertices", x_cover, child_seed(seed, 1))
    sources = sorted(int(v) for v in sample.ids)
    for s in sources:
        run = cycle_estimation_run(h, s)
        acc = merge(acc, run.estimates)
        scanned += run.edges_scanned
    ms = multi_source_dijkstra(h, sources)
    scanned += ms.edges_scanned
    d_s = ms.dist

    max_cycle = n * max(1, g.max_weight)
    i_max = math.ceil(math.log(max_cycle) / math.log(1 + eps)) if max_cycle > 1 else 1
    # scales with D/(1+eps) < 3 cover no feasible cycle length
    i_start = max(0, math.floor(math.log(3) / math.log(1 + eps)))
    milestones = [min(n, max(2, math.ceil(n ** (j / k)))) for j in range(k + 1)]
    original = vmap.original_mask
    finite_ds = [d for d in d_s if d < INF]
    ds_max = max(finite_ds) if finite_ds else 0.0
    all_sampled = len(finite_ds) == n

    for i in range(i_start, i_max + 1):
        D = (1 + eps) ** i
        if all_sampled and (k - 1) * D / 2 >= ds_max:
            break  # every vertex is off at this and all coarser scales
        on = [d_s[v] > (k - 1) * D / 2 for v in range(n)]
        filt = on.__getitem__
        for v in range(n):
            if not original[v] or not on[v]:
                continue
            # grow the on-label ball until its radius outruns the scale
            j = 1
            while True:
                cnt = milestones[j] if j <= k else n + 1
                t = _probe(h, v, filt, cnt)
                scanned += t.edges_scanned
                exhausted = not t.truncated
                r_j = INF if exhausted else t.dist[t.order[-1]]
                if r_j >= max(1, j) * D / 2:
                    break
                j += 1
            radius = r_j if np.isfinite(r_j) else None
            pol = (TruncationPolicy(label_filter=filt, radius=radius)
                   if radius is not None else TruncationPolicy(label_filter=filt))
            run = cycle_estimation_run(h, v, pol)
            acc = merge(acc, run.estimates)
            scanned += run.edges_scanned
            if j > 1:
                ball = (j - 1) * D / 2
                for u in run.finalized.nonzero()[0]:
                    if run.dist[u] <= ball:
                        on[u] = False
            on[v] = False
    values = vmap.project(acc.values)
    bound_mult = k * (1 + eps) ** 3
    return AnscResult(values, "k_approx",
                      {"k": k, "eps": eps, "alpha": bound_mult, "beta": 0,
                       "work_constant": 64},
                      seed=seed, edges_scanned=scanned)


def _probe(h: Graph, v: int, filt, cnt: int):
    return _raw_run(h.adjacency, h.n, (v,),
                    TruncationPolicy(label_filter=filt, vertex_budget=cnt))


# -- near-optimal additive approximation ----------------------------------


@dataclass
class EdgeBallIndex:
    """Per-vertex largest radius whose edge ball stays within x, and the
    vertex ordering by decreasing radius."""

    r: np.ndarray
    order: np.ndarray
    x: int


def edge_ball_index(g: Graph, x: int) -> EdgeBallIndex:
    n, m = g.n, g.m
    d = _sp_dijkstra(g.csr(), indices=np.arange(n))
    r = np.full(n, INF)
    for v in range(n):
        ed = np.minimum(d[v][g.eu], d[v][g.ev])
        ed = ed[np.isfinite(ed)]
        if len(ed) > x:
            kth = np.partition(ed, x)[x]
            r[v] = kth - 1
    order = np.lexsort((np.arange(n), -np.where(np.isfinite(r), r, n * 10 + 1)))
    return EdgeBallIndex(r, order.astype(np.int64), x)


def ansc_near_opt(g: Graph, k: int = 3, seed: int = 0) -> AnscResult:
    """Additive approximation: estimate <= SC(v) + 2*ceil(SC(v)/(2(k-1))).

    Full runs from a hitting edge sample's endpoints plus edge-budget
    truncated runs from every vertex inside prefix graphs ordered by
    decreasing edge-ball radius.
    """
    if g.directed:
        raise GraphError("undirected graphs only")
    if g.has_edge_weights():
        raise GraphError("unweighted graphs only")
    if k < 2:
        raise GraphError("k must be >= 2")
    n, m = g.n, g.m
    acc = CycleEstimates.empty(n)
    scanned = 0
    x = 0
    if m:
        x = max(2, round((m * m / max(n, 1)) ** (1 / k)))
        sample = sample_hitting(g, "edges", min(x, m), child_seed(seed, 1))
        for s in _endpoints_of_edge_sample(g, sample.ids):
            run = cycle_estimation_run(g, s)
            acc = merge(acc, run.estimates)
            scanned += run.edges_scanned
        index = edge_ball_index(g, x)
        rank = np.empty(n, dtype=np.int64)
        rank[index.order] = np.arange(n)
        budget = min(x ** (k - 1), 2 * m + 1)
        for pos in range(n):
            u_i = int(index.order[pos])
            filt = lambda w, p=pos: rank[w] <= p
            pol = TruncationPolicy(label_filter=filt, edge_budget=budget)
            run = cycle_estimation_run(g, u_i, pol)
            acc = merge(acc, run.estimates)
            scanned += run.edges_scanned
    return AnscResult(acc.values, "near_opt", {"k": k, "x": x},
                      seed=seed, edges_scanned=scanned)


# -- (6,1) and (2+eps, beta) ------------------------------------------------


def _low_degree_subgraph(g: Graph, thr: float) -> Graph:
    deg = g.degrees()
    low = deg <= thr
    ids = [int(g.eids[i]) for i in range(g.m) if low[g.eu[i]] or low[g.ev[i]]]
    return restrict_edges(g, set(ids))


def _overlay_runs(g: Graph, base_ids: set[int], groups: dict[int, list[int]],
                  radii: dict[int, float | None]) -> tuple[CycleEstimates, int]:
    """Cycle-estimation runs from each group key s inside base spanner plus
    the edges incident to the group's vertices."""
    n = g.n
    acc = CycleEstimates.empty(n)
    scanned = 0
    if len(base_ids) == g.m:
        # spanner saturated to the whole graph: overlays are all identical
        for s in sorted(groups):
            radius = radii.get(s)
            pol = TruncationPolicy(radius=radius) if radius is not None else None
            run = (cycle_estimation_run(g, s, pol) if pol is not None
                   else cycle_estimation_run(g, s))
            acc = merge(acc, run.estimates)
            scanned += run.edges_scanned
        return acc, scanned
    base_adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    extra_at: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n)]
    owner_of_vertex = {}
    for s, members in groups.items():
        for v in members:
            owner_of_vertex[v] = s
    per_source_extra: dict[int, list[tuple[int, int, int, int]]] = {s: [] for s in groups}
    for i in range(g.m):
        a, b, w, e = int(g.eu[i]), int(g.ev[i]), int(g.ew[i]), int(g.eids[i])
        if e in base_ids:
            base_adj[a].append((b, w, e))
            base_adj[b].append((a, w, e))
        else:
            seen = set()
            for end in (a, b):
                s = owner_of_vertex.get(end)
                if s is not None and s not in seen:
                    per_source_extra[s].append((a, b, w, e))
                    seen.add(s)
    for s in sorted(groups):
        extra = per_source_extra[s]
        touched: dict[int, list] = {}
        for a, b, w, e in extra:
            touched.setdefault(a, []).append((b, w, e))
            touched.setdefault(b, []).append((a, w, e))
        adjacency = list(base_adj)
        for v, arcs in touched.items():
            adjacency[v] = base_adj[v] + arcs
        radius = radii.get(s)
        pol = (TruncationPolicy(radius=radius) if radius is not None
               else NO_TRUNCATION)
        run = cycle_estimation_run(g, s, pol, adjacency=adjacency)
        acc = merge(acc, run.estimates)
        scanned += run.edges_scanned
    return acc, scanned


def ansc_6_1(g: Graph, seed: int = 0) -> AnscResult:
    """(6,1)-approximation: low-degree pass plus fault-tolerant-spanner
    overlay runs from a sample hitting high-degree neighborhoods."""
    if g.directed:
        raise GraphError("undirected graphs only")
    if g.has_edge_weights():
        raise GraphError("unweighted graphs only")
    n, m = g.n, g.m
    if m == 0:
        return AnscResult(np.full(n, INF), "6_1", {"alpha": 6, "beta": 1}, seed=seed)
    thr = math.sqrt(n)
    gp = _low_degree_subgraph(g, thr)
    part1 = (ansc_k_approx(gp, 3, eps=0.25, seed=child_seed(seed, 1))
             if gp.m else AnscResult(np.full(n, INF), "k_approx"))
    sp = fault_tolerant_spanner(g, 3, seed=child_seed(seed, 2))
    sample = sample_hitting(g, "vertices", max(1, math.ceil(thr)), child_seed(seed, 3))
    sources = sorted(int(v) for v in sample.ids)
    ms = multi_source_dijkstra(g, sources)
    groups: dict[int, list[int]] = {s: [] for s in sources}
    for v in range(n):
        s = ms.nearest_source[v]
        if s >= 0:
            groups[s].append(v)
    base_ids = set(int(e) for e in sp.edge_ids)
    acc, scanned2 = _overlay_runs(g, base_ids, groups, {})
    values = np.minimum(part1.estimates, acc.values)
    scanned = part1.edges_scanned + ms.edges_scanned + scanned2
    return AnscResult(values, "6_1", {"alpha": 6, "beta": 1},
                      seed=seed, edges_scanned=scanned)


def ansc_small_cycles(g: Graph, k: int = 4, seed: int = 0) -> AnscResult:
    """Short-cycle estimator built on a 1-fault-tolerant (2k-1)-spanner,
    spanner-degree uniformization, and level samples with radius-truncated
    overlay runs; bound (2k-1)*2^(k-2)*SC(v) + 2^(k-1) for k >= 4."""
    if g.directed:
        raise GraphError("undirected graphs only")
    if g.has_edge_weights():
        raise GraphError("unweighted graphs only")
    if k < 2:
        raise GraphError("k must be >= 2")
    n0, m0 = g.n, g.m
    if m0 == 0:
        return AnscResult(np.full(n0, INF), "small_cycles", {"k": k}, seed=seed)
    sp = fault_tolerant_spanner(g, k, seed=child_seed(seed, 1))
    cap = max(2, math.ceil(n0 ** (1 / k)))
    h, vmap = degree_uniformize(g, set(int(e) for e in sp.edge_ids), cap=cap)
    base = max(int(g.eids.max(initial=-1)) + 1, g.m)
    spanner_h_ids = set(int(e) for e in sp.edge_ids) | \
        {int(e) for e in h.eids if int(e) >= base}
    # low-degree vertices keep all their edges inside the spanner pass
    deg = g.degrees()
    gpos = g.eid_pos()
    for i in range(h.m):
        e = int(h.eids[i])
        if e < base:
            j = gpos[e]
            if deg[g.eu[j]] <= cap or deg[g.ev[j]] <= cap:
                spanner_h_ids.add(e)
    p2 = restrict_edges(h, spanner_h_ids)
    if k >= 3:
        low_pass = ansc_k_approx(p2, k, eps=0.25, seed=child_seed(seed, 2))
    else:
        low_pass = ansc_2approx(p2, seed=child_seed(seed, 2))
    acc = CycleEstimates.empty(h.n)
    scanned = low_pass.edges_scanned
    nh = h.n
    level_sources: dict[int, list[int]] = {}
    level_ms = {}
    for i in range(1, k):
        x = min(nh, max(1, math.ceil(nh ** (i / k))))
        sample = sample_hitting(h, "vertices", x, child_seed(seed, 10 + i))
        level_sources[i] = sorted(int(v) for v in sample.ids)
        level_ms[i] = multi_source_dijkstra(h, level_sources[i])
        scanned += level_ms[i].edges_scanned
    for i in range(1, k):
        ms = level_ms[i]
        groups: dict[int, list[int]] = {s: [] for s in level_sources[i]}
        for v in range(nh):
            s = ms.nearest_source[v]
            if s >= 0:
                groups[s].append(v)
        radii: dict[int, float | None] = {}
        if i + 1 < k:
            nxt = level_ms[i + 1]
            for s in level_sources[i]:
                d_next = nxt.dist[s]
                radii[s] = max(0.0, d_next - 1) if np.isfinite(d_next) else None
        got, sc = _overlay_runs(h, spanner_h_ids, groups, radii)
        acc = merge(acc, got)
        scanned += sc
    values = np.minimum(vmap.project(acc.values), vmap.project(low_pass.estimates))
    alpha = (2 * k - 1) * 2 ** (k - 2)
    beta = 2 ** (k - 1)
    return AnscResult(values, "small_cycles",
                      {"k": k, "alpha": alpha, "beta": beta},
                      seed=seed, edges_scanned=scanned)


def ansc_2eps(g: Graph, eps: float = 0.5, seed: int = 0) -> AnscResult:
    """(2+eps, beta)-approximation; beta is computed from the recorded
    spanner surpluses via the closing formula and reported in params."""
    if g.directed:
        raise GraphError("undirected graphs only")
    if g.has_edge_weights():
        raise GraphError("unweighted graphs only")
    if eps <= 0:
        raise GraphError("eps must be positive")
    n, m = g.n, g.m
    if m == 0:
        return AnscResult(np.full(n, INF), "2eps", {"eps": eps, "beta": 0}, seed=seed)
    eps_p = eps / 2
    thr = math.sqrt(n)
    gp = _low_degree_subgraph(g, thr)
    if gp.m:
        p1_spanner = spanner_near_additive(gp, eps_p, seed=child_seed(seed, 1))
        beta1 = p1_spanner.beta
        part1 = ansc_2approx(p1_spanner.as_graph(), seed=child_seed(seed, 2))
        est1 = part1.estimates
        sc1 = part1.edges_scanned
    else:
        beta1 = 0.0
        est1 = np.full(n, INF)
        sc1 = 0
    comp = spanner_composite_2eps(g, eps, seed=child_seed(seed, 3))
    beta2 = comp.beta
    hgraph = comp.as_graph()
    sample = sample_hitting(g, "vertices", max(1, math.ceil(thr)), child_seed(seed, 4))
    est2 = CycleEstimates.empty(n)
    sc2 = 0
    for s in sorted(int(v) for v in sample.ids):
        run = cycle_estimation_run(hgraph, s)
        est2 = merge(est2, run.estimates)
        sc2 += run.edges_scanned
    part3 = ansc_small_cycles(g, 4, seed=child_seed(seed, 5))
    values = np.minimum(np.minimum(est1, est2.values), part3.estimates)
    alpha = 2 + eps
    bmax = max(beta1, beta2)
    beta = max(28 * math.ceil(alpha + 2) * (alpha + bmax + 1) + 8,
               2 * math.ceil(2 + eps_p) * beta1,
               math.ceil(5 + eps) * beta2 + 2)
    scanned = sc1 + sc2 + part3.edges_scanned
    return AnscResult(values, "2eps",
                      {"eps": eps, "alpha": alpha, "beta": beta,
                       "beta_near_additive": beta1, "beta_composite": beta2},
                      seed=seed, edges_scanned=scanned)


def ansc_k2(g: Graph, k: int = 3, seed: int = 0) -> AnscResult:
    """(k^2, k^3*2^(k+1))-approximation: scale-laddered pass over a
    (k, k-1)-spanner merged with the short-cycle estimator."""
    if g.directed:
        raise GraphError("undirected graphs only")
    if g.has_edge_weights():
        raise GraphError("unweighted graphs only")
    if k < 2:
        raise GraphError("k must be >= 2")
    n, m = g.n, g.m
    if m == 0:
        return AnscResult(np.full(n, INF), "k2", {"k": k}, seed=seed)
    sp = spanner_k_kminus1(g, k, seed=child_seed(seed, 1))
    sub = sp.as_graph()
    if k >= 3:
        part1 = ansc_k_approx(sub, k, eps=0.25, seed=child_seed(seed, 2))
    else:
        part1 = ansc_2approx(sub, seed=child_seed(seed, 2))
    part2 = ansc_small_cycles(g, k, seed=child_seed(seed, 3))
    values = np.minimum(part1.estimates, part2.estimates)
    return AnscResult(values, "k2",
                      {"k": k, "alpha": k * k, "beta": k ** 3 * 2 ** (k + 1)},
                      seed=seed,
                      edges_scanned=part1.edges_scanned + part2.edges_scanned)
