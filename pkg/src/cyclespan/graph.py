"""Immutable graph container, edge-list I/O, random generation, and
structural transforms (edge subsetting, degree uniformization).

Edge-list text format: first line ``n m f`` with ``f`` in {u, d}; then m
lines ``u v w`` with 0-based vertex ids and integer weight w >= 1.  Lines
starting with ``#`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix

INF = float("inf")

__all__ = [
    "INF",
    "Graph",
    "GraphError",
    "ParseError",
    "PairQuerySet",
    "VertexMap",
    "degree_uniformize",
    "gen_random",
    "load_graph",
    "loads_graph",
    "restrict_edges",
    "save_graph",
]


class GraphError(ValueError):
    """Structural problem with a graph (bad weights, parallel edges, ...)."""


class ParseError(GraphError):
    """Malformed edge-list input; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Immutable simple graph with non-negative integer edge weights.

    Undirected edges are stored once and expanded to two arcs sharing one
    edge id.  Vertex ids are dense in [0, n).  Zero weights are only legal
    on edges created by :func:`degree_uniformize`.
    """

    __slots__ = ("directed", "n", "m", "eu", "ev", "ew", "eids",
                 "max_weight", "_adj", "_csr", "_eidpos")

    def __init__(self, n: int, edges: Sequence[tuple[int, int, int]],
                 directed: bool = False, allow_zero: bool = False,
                 eids: Sequence[int] | None = None):
        if n < 0:
            raise GraphError("negative vertex count")
        m = len(edges)
        eu = np.empty(m, dtype=np.int64)
        ev = np.empty(m, dtype=np.int64)
        ew = np.empty(m, dtype=np.int64)
        for i, (u, v, w) in enumerate(edges):
            eu[i], ev[i], ew[i] = u, v, w
        if m:
            if eu.min(initial=0) < 0 or ev.min(initial=0) < 0 \
                    or eu.max(initial=0) >= n or ev.max(initial=0) >= n:
                raise GraphError("vertex id out of range")
            if (eu == ev).any():
                raise GraphError("self-loops are not allowed")
            if ew.min(initial=0) < 0:
                raise GraphError("negative weight")
            if not allow_zero and m and ew.min() == 0:
                raise GraphError("zero weight only allowed on uniformization edges")
            key = eu * n + ev if directed else np.minimum(eu, ev) * n + np.maximum(eu, ev)
            if len(np.unique(key)) != m:
                raise GraphError("parallel edges are not allowed")
        self.directed = directed
        self.n = n
        self.m = m
        self.eu, self.ev, self.ew = eu, ev, ew
        self.eids = (np.asarray(eids, dtype=np.int64) if eids is not None
                     else np.arange(m, dtype=np.int64))
        if len(self.eids) != m:
            raise GraphError("edge-id array length mismatch")
        self.max_weight = int(ew.max()) if m else 1
        self._adj = None
        self._csr = None
        self._eidpos = None

    # -- views ---------------------------------------------------------

    @property
    def adjacency(self) -> list[list[tuple[int, int, int]]]:
        """Per-vertex list of (neighbor, weight, edge-id) arcs."""
        if self._adj is None:
            adj: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
            eids = self.eids
            for i in range(self.m):
                u, v, w = int(self.eu[i]), int(self.ev[i]), int(self.ew[i])
                e = int(eids[i])
                adj[u].append((v, w, e))
                if not self.directed:
                    adj[v].append((u, w, e))
            self._adj = adj
        return self._adj

    def csr(self) -> csr_matrix:
        """Sparse adjacency matrix (symmetric when undirected)."""
        if self._csr is None:
            if self.directed:
                rows, cols, data = self.eu, self.ev, self.ew
            else:
                rows = np.concatenate([self.eu, self.ev])
                cols = np.concatenate([self.ev, self.eu])
                data = np.concatenate([self.ew, self.ew])
            # explicit stored zeros are honored by scipy.sparse.csgraph
            self._csr = csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._csr

    def eid_pos(self) -> dict[int, int]:
        """Cached edge-id -> storage-index map."""
        if self._eidpos is None:
            self._eidpos = {int(e): i for i, e in enumerate(self.eids)}
        return self._eidpos

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.eu, 1)
        if not self.directed:
            np.add.at(deg, self.ev, 1)
        return deg

    def edges(self) -> Iterable[tuple[int, int, int, int]]:
        """Yield (u, v, w, edge-id) tuples."""
        for i in range(self.m):
            yield int(self.eu[i]), int(self.ev[i]), int(self.ew[i]), int(self.eids[i])

    def has_edge_weights(self) -> bool:
        """True when some edge weight differs from 1 (M > 1 or zero weights)."""
        return self.m > 0 and (self.ew.min() < 1 or self.ew.max() > 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.directed == other.directed and self.n == other.n
                and self.m == other.m
                and np.array_equal(self._canonical(), other._canonical()))

    def __hash__(self):  # identity hash; equality is structural but rare
        return id(self)

    def _canonical(self) -> np.ndarray:
        if self.directed:
            a, b = self.eu, self.ev
        else:
            a = np.minimum(self.eu, self.ev)
            b = np.maximum(self.eu, self.ev)
        order = np.lexsort((self.ew, b, a))
        return np.stack([a[order], b[order], self.ew[order]])

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={self.n}, m={self.m}, M={self.max_weight})"


# -- serialization -----------------------------------------------------


def loads_graph(text: str) -> Graph:
    """Parse the edge-list format; raises :class:`ParseError` on bad input."""
    header = None
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    n = m = 0
    directed = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[2] not in ("u", "d"):
                raise ParseError(line_no, f"malformed header {line!r}")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(line_no, f"malformed header {line!r}") from None
            if n < 0 or m < 0:
                raise ParseError(line_no, "negative count in header")
            directed = parts[2] == "d"
            header = (n, m)
            continue
        if len(parts) != 3:
            raise ParseError(line_no, f"expected 'u v w', got {line!r}")
        try:
            u, v, w = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(line_no, f"non-integer field in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(line_no, f"vertex id out of range in {line!r}")
        if u == v:
            raise ParseError(line_no, "self-loop")
        if w < 1:
            raise ParseError(line_no, f"weight must be >= 1, got {w}")
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(line_no, f"duplicate edge {key}")
        seen.add(key)
        edges.append((u, v, w))
    if header is None:
        raise ParseError(0, "empty input")
    if len(edges) != m:
        raise ParseError(0, f"header announced {m} edges, found {len(edges)}")
    return Graph(n, edges, directed=directed)


def load_graph(source) -> Graph:
    """Load a graph from a path or a binary/text stream."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    if isinstance(data, bytes):
        data = data.decode("ascii")
    return loads_graph(data)


def dumps_graph(g: Graph) -> str:
    """Serialize in canonical edge order (min endpoint, max endpoint, weight)."""
    if g.ew.min(initial=1) < 1:
        raise GraphError("graphs with zero-weight edges are internal and not serializable")
    lines = [f"{g.n} {g.m} {'d' if g.directed else 'u'}"]
    if g.directed:
        order = np.lexsort((g.ew, g.ev, g.eu))
        for i in order:
            lines.append(f"{g.eu[i]} {g.ev[i]} {g.ew[i]}")
    else:
        a = np.minimum(g.eu, g.ev)
        b = np.maximum(g.eu, g.ev)
        order = np.lexsort((g.ew, b, a))
        for i in order:
            lines.append(f"{a[i]} {b[i]} {g.ew[i]}")
    return "\n".join(lines) + "\n"


def save_graph(g: Graph, target) -> None:
    text = dumps_graph(g)
    if hasattr(target, "write"):
        out = target
        data = text if not isinstance(out, (bytes, bytearray)) else text.encode()
        try:
            out.write(text)
        except TypeError:
            out.write(text.encode("ascii"))
        return
    with open(target, "w") as fh:
        fh.write(text)


# -- generation --------------------------------------------------------


def gen_random(n: int, m: int, max_weight: int = 1, directed: bool = False,
               seed: int = 0) -> Graph:
    """Uniform simple random graph with m edges and weights in [1, max_weight]."""
    cap = n * (n - 1) if directed else n * (n - 1) // 2
    if m > cap:
        raise GraphError(f"m={m} infeasible for n={n}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    picks = rng.choice(cap, size=m, replace=False) if m else np.empty(0, dtype=np.int64)
    picks = np.sort(picks)
    if directed:
        u = picks // (n - 1)
        r = picks % (n - 1)
        v = np.where(r >= u, r + 1, r)
    else:
        # decode the index of a pair (u, v), u < v, in colex order
        v = np.floor((1 + np.sqrt(1 + 8 * picks.astype(np.float64))) / 2).astype(np.int64)
        v = np.maximum(v, 1)
        # fix off-by-one from float sqrt
        lo = v * (v - 1) // 2
        v = np.where(picks < lo, v - 1, v)
        v = np.where(picks >= (v + 1) * v // 2, v + 1, v)
        u = picks - v * (v - 1) // 2
    w = rng.integers(1, max_weight + 1, size=m) if max_weight > 1 else np.ones(m, dtype=np.int64)
    edges = list(zip(u.tolist(), v.tolist(), w.tolist()))
    return Graph(n, edges, directed=directed)


# -- transforms --------------------------------------------------------


@dataclass
class VertexMap:
    """Maps transformed-graph vertices back to original ones.

    ``image[v]`` is the (unique) transformed vertex marked original for the
    input vertex v; ``origin[x]`` is the input vertex a transformed vertex x
    descends from.  A cycle through any node of v's replacement tree
    contracts to a cycle through v, so per-vertex cycle values on the
    transformed graph map back via :meth:`project`.
    """

    image: np.ndarray
    origin: np.ndarray
    original_mask: np.ndarray

    @classmethod
    def identity(cls, n: int) -> "VertexMap":
        ids = np.arange(n, dtype=np.int64)
        return cls(ids, ids.copy(), np.ones(n, dtype=bool))

    @property
    def n_original(self) -> int:
        return len(self.image)

    def project(self, values: np.ndarray) -> np.ndarray:
        """Fold transformed-vertex values back: min over each vertex's tree."""
        out = np.full(self.n_original, INF)
        np.minimum.at(out, self.origin, np.asarray(values, dtype=np.float64))
        return out


def degree_uniformize(g: Graph, protected_edges: set[int] | None = None,
                      cap: int = 2) -> tuple[Graph, VertexMap]:
    """Split vertices whose protected-edge degree exceeds ``cap`` into
    balanced binary trees of zero-weight edges.

    Each over-cap vertex becomes the root of a tree whose leaves each carry
    at most ``cap`` of its protected edges; unprotected edges stay on the
    root.  The added edges weigh 0 and the added structure is acyclic, so
    cycles correspond one-to-one between the graphs with equal weight; a
    transformed cycle touches v's tree exactly where the original touched v,
    and per-vertex cycle values fold back through ``VertexMap.project``.
    """
    if cap < 2:
        raise GraphError("cap must be >= 2")
    if g.directed:
        raise GraphError("degree_uniformize is defined for undirected graphs")
    protected = None if protected_edges is None else set(protected_edges)

    def is_protected(eid: int) -> bool:
        return protected is None or eid in protected

    pdeg = np.zeros(g.n, dtype=np.int64)
    for i in range(g.m):
        if is_protected(int(g.eids[i])):
            pdeg[g.eu[i]] += 1
            pdeg[g.ev[i]] += 1
    if not (pdeg > cap).any():
        return g, VertexMap.identity(g.n)

    next_id = g.n
    # per over-cap vertex: list of leaf ids (round-robin attachment targets)
    slot_of: dict[int, list[int]] = {}
    tree_edges: list[tuple[int, int, int]] = []
    for v in range(g.n):
        if pdeg[v] <= cap:
            continue
        n_leaves = int(np.ceil(pdeg[v] / cap))
        leaves = list(range(next_id, next_id + n_leaves))
        next_id += n_leaves
        # binary tree over the leaves with v as root
        level = leaves
        while len(level) > 2:
            nxt = []
            for j in range(0, len(level), 2):
                if j + 1 < len(level):
                    parent = next_id
                    next_id += 1
                    tree_edges.append((parent, level[j], 0))
                    tree_edges.append((parent, level[j + 1], 0))
                    nxt.append(parent)
                else:
                    nxt.append(level[j])
            level = nxt
        for x in level:
            tree_edges.append((v, x, 0))
        slot_of[v] = leaves

    counters = {v: 0 for v in slot_of}

    def attach(v: int, eid: int) -> int:
        if v not in slot_of or not is_protected(eid):
            return v
        leaves = slot_of[v]
        c = counters[v]
        counters[v] = c + 1
        return leaves[c % len(leaves)]

    new_edges: list[tuple[int, int, int]] = []
    new_eids: list[int] = []
    for u, v, w, eid in g.edges():
        new_edges.append((attach(u, eid), attach(v, eid), w))
        new_eids.append(eid)
    base = max(int(g.eids.max(initial=-1)) + 1, g.m)
    for j, e in enumerate(tree_edges):
        new_edges.append(e)
        new_eids.append(base + j)

    out = Graph(next_id, new_edges, directed=False, allow_zero=True, eids=new_eids)
    image = np.arange(next_id, dtype=np.int64)[: g.n]
    origin = np.empty(next_id, dtype=np.int64)
    origin[: g.n] = np.arange(g.n)
    origin[g.n:] = -1
    # helper nodes inherit the origin of the tree root they hang off
    adj_tmp: dict[int, list[int]] = {}
    for a, b, _ in tree_edges:
        adj_tmp.setdefault(a, []).append(b)
        adj_tmp.setdefault(b, []).append(a)
    for v in slot_of:
        stack = [v]
        seen = {v}
        while stack:
            x = stack.pop()
            for y in adj_tmp.get(x, []):
                if y not in seen:
                    seen.add(y)
                    if y >= g.n:
                        origin[y] = v
                    stack.append(y)
    return out, VertexMap(image, origin, np.concatenate(
        [np.ones(g.n, dtype=bool), np.zeros(next_id - g.n, dtype=bool)]))


def restrict_edges(g: Graph, keep: Callable[[int], bool] | Iterable[int]) -> Graph:
    """Subgraph on the same vertex set; edge-ids are preserved."""
    if callable(keep):
        mask = np.fromiter((keep(int(e)) for e in g.eids), dtype=bool, count=g.m)
    else:
        keep_set = set(int(e) for e in keep)
        mask = np.fromiter((int(e) in keep_set for e in g.eids), dtype=bool, count=g.m)
    edges = [(int(g.eu[i]), int(g.ev[i]), int(g.ew[i])) for i in range(g.m) if mask[i]]
    eids = [int(g.eids[i]) for i in range(g.m) if mask[i]]
    return Graph(g.n, edges, directed=g.directed,
                 allow_zero=bool(g.m) and int(g.ew.min(initial=1)) < 1, eids=eids)


# -- pair query sets ---------------------------------------------------


@dataclass
class PairQuerySet:
    """O(n) (s, t) query pairs plus per-pair answer slots."""

    pairs: list[tuple[int, int]]
    answers: list[float] = field(default_factory=list)
    max_factor: int = 4

    def __post_init__(self):
        for s, t in self.pairs:
            if s == t:
                raise GraphError(f"pair ({s}, {t}) has equal endpoints")

    def validate_size(self, n: int) -> None:
        if len(self.pairs) > self.max_factor * n:
            raise GraphError(
                f"{len(self.pairs)} pairs exceeds {self.max_factor}*n = {self.max_factor * n}")

    def with_answers(self, answers: Sequence[float]) -> "PairQuerySet":
        if len(answers) != len(self.pairs):
            raise GraphError("answer count mismatch")
        return PairQuerySet(list(self.pairs), [float(a) for a in answers], self.max_factor)

    def __len__(self):
        return len(self.pairs)

    @classmethod
    def generate(cls, n: int, count: int, seed: int = 0, max_factor: int = 4) -> "PairQuerySet":
        if n < 2:
            raise GraphError("need at least two vertices to form pairs")
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        pairs = []
        while len(pairs) < count:
            s, t = rng.integers(0, n, size=2)
            if s != t:
                pairs.append((int(s), int(t)))
        q = cls(pairs, max_factor=max_factor)
        q.validate_size(n)
        return q

    @classmethod
    def load(cls, source, max_factor: int = 10**9) -> "PairQuerySet":
        if hasattr(source, "read"):
            text = source.read()
        else:
            with open(source) as fh:
                text = fh.read()
        if isinstance(text, bytes):
            text = text.decode("ascii")
        pairs = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(line_no, f"expected 's t', got {line!r}")
            pairs.append((int(parts[0]), int(parts[1])))
        return cls(pairs, max_factor=max_factor)

    def save(self, target) -> None:
        text = "".join(f"{s} {t}\n" for s, t in self.pairs)
        if hasattr(target, "write"):
            target.write(text)
        else:
            with open(target, "w") as fh:
                fh.write(text)
