"""Generators for hardness-reduction instances: each gadget emits a graph,
a query set (pairs or target vertices), and the provable yes/no distance
thresholds a correct solver must separate.

Every generator also computes the base instance's ground truth by brute
force at desk scale, so instances double as adversarial fixtures for the
approximation algorithms.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._util import rng_from
from .ansc import exact_ansc
from .graph import Graph, GraphError, PairQuerySet, dumps_graph, INF
from .npsp import exact_npsp

__all__ = [
    "GadgetInstance",
    "gadget_clique_reduction",
    "gadget_layered",
    "planted_base",
    "LAYERED_KINDS",
]

LAYERED_KINDS = ("triangle3", "triangle4", "simplicial_pairs", "kcycle",
                 "edge_subdiv_triangle", "simplicial_cycle", "disjointness",
                 "girth_triangle")


@dataclass
class GadgetInstance:
    """Generated hardness graph plus its query set and thresholds."""

    graph: Graph
    kind: str
    query_kind: str   # pair-min-distance | pair-diameter | ansc-girth | ansc-cycle-diameter
    yes_value: float
    no_value: float
    pairs: PairQuerySet | None = None
    targets: list[int] | None = None
    ground_truth: str | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.yes_value < self.no_value:
            raise GraphError("thresholds must satisfy yes < no")

    def solve_exact(self) -> float:
        """Aggregate answer of the exact solver for this instance's query."""
        if self.query_kind == "pair-min-distance":
            ans = exact_npsp(self.graph, self.pairs).answers
            return min(ans) if ans else INF
        if self.query_kind == "pair-diameter":
            ans = exact_npsp(self.graph, self.pairs).answers
            return max(ans) if ans else INF
        sc = exact_ansc(self.graph).estimates
        if self.query_kind == "ansc-girth":
            pool = self.targets if self.targets is not None else range(self.graph.n)
            return float(min(sc[v] for v in pool))
        if self.query_kind == "ansc-cycle-diameter":
            return float(max(sc))
        raise GraphError(f"unknown query kind {self.query_kind!r}")

    def classify(self, value: float) -> str:
        if value <= self.yes_value:
            return "yes"
        if value >= self.no_value:
            return "no"
        raise GraphError(
            f"value {value} falls in the forbidden gap ({self.yes_value}, {self.no_value})")

    def save(self, prefix: str) -> None:
        with open(f"{prefix}.graph", "w") as fh:
            fh.write(dumps_graph(self.graph))
        if self.pairs is not None:
            self.pairs.save(f"{prefix}.pairs")
        sidecar = {
            "kind": self.kind,
            "query_kind": self.query_kind,
            "yes_value": self.yes_value if math.isfinite(self.yes_value) else "inf",
            "no_value": self.no_value if math.isfinite(self.no_value) else "inf",
            "targets": self.targets,
            "ground_truth": self.ground_truth,
            "meta": self.meta,
        }
        with open(f"{prefix}.json", "w") as fh:
            json.dump(sidecar, fh, indent=1, sort_keys=True)


# -- brute-force base predicates ------------------------------------------


def _adj_sets(g: Graph):
    out = [set() for _ in range(g.n)]
    for i in range(g.m):
        a, b = int(g.eu[i]), int(g.ev[i])
        out[a].add(b)
        out[b].add(a)
    return out

def _has_triangle(g: Graph) -> bool:
    adj = _adj_sets(g)
    for i in range(g.m):
        a, b = int(g.eu[i]), int(g.ev[i])
        if adj[a] & adj[b]:
            return True
    return False


def _has_simplicial(g: Graph) -> bool:
    adj = _adj_sets(g)
    for v in range(g.n):
        nb = sorted(adj[v])
        if all(b in adj[a] for a, b in itertools.combinations(nb, 2)):
            return True
    return False


# -- clique reduction ---------------------------------------------------------


def _hyperedges_from_base(base, r: int):
    if r == 2:
        if not isinstance(base, Graph) or base.directed:
            raise GraphError("r=2 expects an undirected Graph base")
        n0 = base.n
        pairs = {frozenset((int(base.eu[i]), int(base.ev[i]))) for i in range(base.m)}
        return n0, pairs
    if r == 3:
        n0, triples = base
        return n0, {frozenset(t) for t in triples}
    raise GraphError("only r in {2, 3} is supported")


def _window_is_clique(vals, hyper, r) -> bool:
    if len(set(vals)) != len(vals):
        return False
    for sub in itertools.combinations(vals, r):
        if frozenset(sub) not in hyper:
            return False
    return True


def _base_has_k_clique(n0: int, hyper, k: int, r: int) -> bool:
    for combo in itertools.combinations(range(n0), k):
        if all(frozenset(sub) in hyper for sub in itertools.combinations(combo, r)):
            return True
    return False


def gadget_clique_reduction(base, k: int, t: int, r: int = 2) -> GadgetInstance:
    """Layered (k+1)-partite minimum-distance instance from a k-(hyper)clique
    base; yes threshold k, no threshold D = 2r(t+1) - (2r-3)k."""
    if not (k - 1 >= t + 1 >= r >= 2):
        raise GraphError("parameters must satisfy k-1 >= t+1 >= r >= 2")
    D = 2 * r * (t + 1) - (2 * r - 3) * k
    if not k < D:
        raise GraphError(f"need k < D, got k={k}, D={D}")
    n0, hyper = _hyperedges_from_base(base, r)
    width = n0 ** t
    n_parts = k + 1

    def tuple_id(part: int, vals) -> int:
        acc = 0
        for j, a in enumerate(vals):
            acc += a * (n0 ** j)
        return part * width + acc

    edges = []
    for i in range(k):
        # window V_i..V_{i+t} with part indices of V taken mod k
        for vals in itertools.product(range(n0), repeat=t + 1):
            if not _window_is_clique(vals, hyper, r):
                continue
            a = tuple_id(i, vals[:t])
            b = tuple_id(i + 1, vals[1:])
            edges.append((a, b, 1))
    dedup = {}
    for a, b, w in edges:
        dedup[(min(a, b), max(a, b))] = w
    g = Graph(n_parts * width, [(a, b, w) for (a, b), w in dedup.items()])
    pairs = PairQuerySet([(tuple_id(0, vals), tuple_id(k, vals))
                          for vals in itertools.product(range(n0), repeat=t)],
                         max_factor=10**9)
    truth = "yes" if _base_has_k_clique(n0, hyper, k, r) else "no"
    return GadgetInstance(g, "clique_reduction", "pair-min-distance",
                          yes_value=k, no_value=D, pairs=pairs,
                          ground_truth=truth,
                          meta={"k": k, "t": t, "r": r, "n0": n0, "D": D})


# -- layered gadgets ------------------------------------------------------------


def gadget_layered(kind: str, base, k: int | None = None, seed: int = 0,
                   include_padding: bool = False, colors=None) -> GadgetInstance:
    """Layered hardness gadget of the given kind; see LAYERED_KINDS."""
    if kind == "triangle3":
        return _triangle3(base, include_padding)
    if kind == "triangle4":
        return _triangle4(base)
    if kind == "simplicial_pairs":
        return _simplicial_pairs(base)
    if kind == "kcycle":
        if k is None:
            raise GraphError("kcycle needs k")
        return _kcycle(base, k, seed, colors)
    if kind == "edge_subdiv_triangle":
        return _edge_subdiv_triangle(base)
    if kind == "simplicial_cycle":
        return _simplicial_cycle(base)
    if kind == "disjointness":
        x, y = base
        return _disjointness(x, y)
    if kind == "girth_triangle":
        return _girth_triangle(base)
    raise GraphError(f"unknown gadget kind {kind!r}")


def _require_simple_base(base, min_n=2) -> Graph:
    if not isinstance(base, Graph) or base.directed:
        raise GraphError("this gadget needs an undirected Graph base")
    if base.n < min_n:
        raise GraphError(f"degenerate base (n < {min_n}) rejected")
    return base


def _both_dir_edges(base: Graph):
    for i in range(base.m):
        u, v = int(base.eu[i]), int(base.ev[i])
        yield u, v
        yield v, u


def _triangle3(base, include_padding: bool) -> GadgetInstance:
    base = _require_simple_base(base)
    n0 = base.n
    pad = n0 * n0 if include_padding else 0
    edges = []
    for u, v in _both_dir_edges(base):
        edges.append((u, n0 + v, 1))          # V1 - V2
        edges.append((n0 + u, 2 * n0 + v, 1))  # V2 - V3
    dedup = {(min(a, b), max(a, b)): w for a, b, w in edges}
    g = Graph(3 * n0 + pad, [(a, b, w) for (a, b), w in dedup.items()])
    # query the base's edge pairs: distance 2 certifies a triangle on that
    # edge; querying non-adjacent pairs would only certify a common neighbor
    pairs = PairQuerySet([(int(base.eu[i]), 2 * n0 + int(base.ev[i]))
                          for i in range(base.m)], max_factor=10**9)
    truth = "yes" if _has_triangle(base) else "no"
    return GadgetInstance(g, "triangle3", "pair-min-distance", 2, 4,
                          pairs=pairs, ground_truth=truth,
                          meta={"n0": n0, "padding": pad})


def _triangle4(base) -> GadgetInstance:
    base = _require_simple_base(base)
    n0 = base.n
    edges = []
    for u, v in _both_dir_edges(base):
        edges.append((u, n0 + v, 1))
        edges.append((n0 + u, 2 * n0 + v, 1))
        edges.append((2 * n0 + u, 3 * n0 + v, 1))
    dedup = {(min(a, b), max(a, b)): w for a, b, w in edges}
    g = Graph(4 * n0, [(a, b, w) for (a, b), w in dedup.items()])
    pairs = PairQuerySet([(v, 3 * n0 + v) for v in range(n0)], max_factor=10**9)
    truth = "yes" if _has_triangle(base) else "no"
    return GadgetInstance(g, "triangle4", "pair-min-distance", 3, 5,
                          pairs=pairs, ground_truth=truth, meta={"n0": n0})


def _simplicial_pairs(base) -> GadgetInstance:
    base = _require_simple_base(base, min_n=3)
    n0 = base.n
    adj = _adj_sets(base)
    edges = []
    for u, v in _both_dir_edges(base):
        edges.append((u, n0 + v, 1))              # V1 - V2
        edges.append((2 * n0 + u, 3 * n0 + v, 1))  # V3 - V4
    for u in range(n0):
        for v in range(n0):
            if u != v and v not in adj[u]:
                edges.append((n0 + u, 2 * n0 + v, 1))  # V2 - V3 on non-adjacency
    dedup = {(min(a, b), max(a, b)): w for a, b, w in edges}
    g = Graph(4 * n0, [(a, b, w) for (a, b), w in dedup.items()])
    pairs = PairQuerySet([(v, 3 * n0 + v) for v in range(n0)], max_factor=10**9)
    truth = "yes" if not _has_simplicial(base) else "no"
    return GadgetInstance(g, "simplicial_pairs", "pair-diameter", 3, 5,
                          pairs=pairs, ground_truth=truth, meta={"n0": n0})


def _kcycle(base, k: int, seed: int, colors=None) -> GadgetInstance:
    if not isinstance(base, Graph) or not base.directed:
        raise GraphError("kcycle needs a directed Graph base")
    if k < 2:
        raise GraphError("k must be >= 2")
    n0 = base.n
    if colors is None:
        rng = rng_from(seed)
        colors = rng.integers(0, k, size=n0)
    else:
        colors = np.asarray(colors, dtype=np.int64)
        if len(colors) != n0 or colors.min(initial=0) < 0 or colors.max(initial=0) >= k:
            raise GraphError("colors must map every vertex into [0, k)")
    edges = []
    for i in range(base.m):
        u, v = int(base.eu[i]), int(base.ev[i])
        cu, cv = int(colors[u]), int(colors[v])
        if (cu + 1) % k == cv:
            if cu < k - 1:
                edges.append((cu * n0 + u, (cu + 1) * n0 + v, 1))
            else:
                edges.append(((k - 1) * n0 + u, k * n0 + v, 1))
    g = Graph((k + 1) * n0, edges, directed=True)
    pairs = PairQuerySet([(v, k * n0 + v) for v in range(n0)
                          if colors[v] == 0], max_factor=10**9)
    if not pairs.pairs:
        pairs = PairQuerySet([(0, k * n0)], max_factor=10**9)
    # ground truth: properly colored k-cycle
    truth = "no"
    for s, tgt in pairs.pairs:
        d = exact_npsp(g, PairQuerySet([(s, tgt)], max_factor=10**9)).answers[0]
        if math.isfinite(d):
            truth = "yes"
            break
    return GadgetInstance(g, "kcycle", "pair-min-distance", k, INF,
                          pairs=pairs, ground_truth=truth,
                          meta={"k": k, "n0": n0, "colors": colors.tolist()})


def _edge_subdiv_triangle(base) -> GadgetInstance:
    base = _require_simple_base(base)
    n0 = base.n
    edges = []
    subdividers = []
    nxt = 3 * n0
    for u, v in _both_dir_edges(base):
        edges.append((n0 + u, 2 * n0 + v, 1))   # V2 - V3
        edges.append((2 * n0 + u, v, 1))        # V3 - V1
    for u, v in _both_dir_edges(base):
        w = nxt
        nxt += 1
        edges.append((u, w, 1))                 # V1 -(sub)- V2
        edges.append((w, n0 + v, 1))
        subdividers.append(w)
    dedup = {(min(a, b), max(a, b)): w for a, b, w in edges}
    g = Graph(nxt, [(a, b, w) for (a, b), w in dedup.items()])
    adj = _adj_sets(base)
    truth = "no"
    for i in range(base.m):
        a, b = int(base.eu[i]), int(base.ev[i])
        if adj[a] & adj[b]:
            truth = "yes"
            break
    return GadgetInstance(g, "edge_subdiv_triangle", "ansc-girth", 4, 6,
                          targets=subdividers, ground_truth=truth,
                          meta={"n0": n0})


def _simplicial_cycle(base) -> GadgetInstance:
    base = _require_simple_base(base, min_n=3)
    n0 = base.n
    adj = _adj_sets(base)
    L = [i * n0 for i in range(5)]
    z = 5 * n0
    edges = []
    for u, v in _both_dir_edges(base):
        edges.append((L[3] + u, L[4] + v, 1))  # V4 - V5
        edges.append((L[1] + u, L[0] + v, 1))  # V2 - V1
    for u in range(n0):
        for v in range(n0):
            if u != v and v not in adj[u]:
                edges.append((L[0] + u, L[4] + v, 1))  # V1 - V5 on non-adjacency
    for v in range(n0):
        edges.append((L[1] + v, L[2] + v, 1))
        edges.append((L[2] + v, L[3] + v, 1))
    for v in range(n0):
        edges.append((z, L[0] + v, 1))
        edges.append((z + 1, L[0] + v, 1))
        edges.append((z + 2, L[4] + v, 1))
        edges.append((z + 3, L[4] + v, 1))
    edges.append((z, z + 1, 1))
    edges.append((z + 2, z + 3, 1))
    dedup = {(min(a, b), max(a, b)): w for a, b, w in edges}
    g = Graph(5 * n0 + 4, [(a, b, w) for (a, b), w in dedup.items()])
    truth = "yes" if not _has_simplicial(base) else "no"
    return GadgetInstance(g, "simplicial_cycle", "ansc-cycle-diameter", 5, 7,
                          ground_truth=truth, meta={"n0": n0})


def _disjointness(x, y) -> GadgetInstance:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape or x.ndim != 2:
        raise GraphError("disjointness needs two (n, n) 0/1 arrays")
    rows, width = x.shape
    # nodes: a_0..a_{width-1}, then (u_i, v_i, w_i) per row
    edges = []
    targets = []
    base = width
    for i in range(rows):
        u, v, w = base, base + 1, base + 2
        base += 3
        edges.append((u, w, 1))
        edges.append((v, w, 1))
        for j in range(width):
            if x[i, j]:
                edges.append((u, j, 1))
            if y[i, j]:
                edges.append((v, j, 1))
        targets.append(w)
    g = Graph(base, edges)
    truth = "yes" if int((x * y).sum()) >= 1 else "no"
    return GadgetInstance(g, "disjointness", "ansc-girth", 4, 6,
                          targets=targets, ground_truth=truth,
                          meta={"rows": rows, "width": width})


def _girth_triangle(base) -> GadgetInstance:
    base = _require_simple_base(base)
    if base.has_edge_weights():
        raise GraphError("girth gadget needs an unweighted base")
    truth = "yes" if _has_triangle(base) else "no"
    return GadgetInstance(base, "girth_triangle", "ansc-girth", 3, 4,
                          ground_truth=truth, meta={"n0": base.n})


# -- planted bases ---------------------------------------------------------------


def planted_base(kind: str, n0: int, seed: int = 0, k: int | None = None,
                 density: float = 0.3):
    """A base instance whose ground truth lands on the yes side."""
    rng = rng_from(seed)

    def random_graph(extra_edges=()):
        edges = set()
        for u in range(n0):
            for v in range(u + 1, n0):
                if rng.random() < density:
                    edges.add((u, v))
        for e in extra_edges:
            edges.add((min(e), max(e)))
        return Graph(n0, [(u, v, 1) for u, v in sorted(edges)])

    if kind in ("triangle3", "triangle4", "girth_triangle", "edge_subdiv_triangle"):
        a, b, c = rng.choice(n0, size=3, replace=False)
        return random_graph([(a, b), (b, c), (a, c)])
    if kind in ("simplicial_pairs", "simplicial_cycle"):
        # no simplicial vertex: a chordless cycle has none for n >= 4
        if n0 < 4:
            raise GraphError("need n0 >= 4")
        return Graph(n0, [(i, (i + 1) % n0, 1) for i in range(n0)])
    if kind == "kcycle":
        if k is None:
            raise GraphError("kcycle needs k")
        edges = set()
        for u in range(n0):
            for v in range(n0):
                if u != v and rng.random() < density / 2:
                    edges.add((u, v))
        cyc = rng.choice(n0, size=k, replace=False)
        for i in range(k):
            edges.add((int(cyc[i]), int(cyc[(i + 1) % k])))
        colors = rng.integers(0, k, size=n0)
        for i in range(k):
            colors[cyc[i]] = i
        return Graph(n0, [(u, v, 1) for u, v in sorted(edges)], directed=True), colors
    if kind == "disjointness":
        x = (rng.random((n0, n0)) < 0.4).astype(int)
        y = (rng.random((n0, n0)) < 0.4).astype(int)
        i = int(rng.integers(0, n0))
        j = int(rng.integers(0, n0))
        x[i, j] = 1
        y[i, j] = 1
        return x, y
    if kind == "clique":
        if k is None:
            raise GraphError("clique needs k")
        picks = rng.choice(n0, size=k, replace=False)
        return random_graph([(int(a), int(b))
                             for a, b in itertools.combinations(sorted(picks), 2)])
    raise GraphError(f"no planted mode for {kind!r}")
