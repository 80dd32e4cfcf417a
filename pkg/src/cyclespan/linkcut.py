"""Dynamic-tree structure for path-minimum assignment updates and point
queries over a fixed forest.

``path_min_update(v1, v2, x)`` performs c_u <- min(c_u, x) for every vertex
u on the v1..v2 tree path; ``query(v)`` returns c_v.  The default engine is
a splay-based link-cut tree with lazy min-assign tags; a naive parent-walk
engine (O(path length) per update) is selectable and doubles as the test
oracle.
"""

from __future__ import annotations

from collections import deque

from .graph import GraphError, INF

__all__ = ["PathMinForest"]


class PathMinForest:
    """Forest with per-vertex weights supporting path-min-assign updates.

    Topology is fixed after construction; only weights change, and they are
    non-increasing over time.
    """

    def __init__(self, n: int, tree_edges, engine: str = "splay"):
        if engine not in ("splay", "naive"):
            raise GraphError(f"unknown engine {engine!r}")
        self.n = n
        self.engine = engine
        self.rotations = 0
        adj: list[list[int]] = [[] for _ in range(n)]
        ecount = 0
        for a, b in tree_edges:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"vertex out of range in tree edge ({a}, {b})")
            adj[a].append(b)
            adj[b].append(a)
            ecount += 1
        # BFS rooting; also detects cycles (an edge closing a visited pair)
        self._tree_parent = [-1] * n
        self._depth = [0] * n
        self._comp = [-1] * n
        comp = 0
        visited_edges = 0
        for root in range(n):
            if self._comp[root] >= 0:
                continue
            self._comp[root] = comp
            q = deque([root])
            while q:
                u = q.popleft()
                for v in adj[u]:
                    if self._comp[v] >= 0:
                        continue
                    self._comp[v] = comp
                    self._tree_parent[v] = u
                    self._depth[v] = self._depth[u] + 1
                    q.append(v)
                    visited_edges += 1
            comp += 1
        if visited_edges != ecount:
            raise GraphError("cycle in tree edge set")
        self.val = [INF] * n
        if engine == "splay":
            self._pa = list(self._tree_parent)  # splay parent or path parent
            self._lc = [-1] * n
            self._rc = [-1] * n
            self._tag = [INF] * n
            self._rev = [False] * n

    # -- naive engine ----------------------------------------------------

    def _naive_update(self, a: int, b: int, x: float) -> None:
        depth, parent, val = self._depth, self._tree_parent, self.val
        while depth[a] > depth[b]:
            if x < val[a]:
                val[a] = x
            a = parent[a]
        while depth[b] > depth[a]:
            if x < val[b]:
                val[b] = x
            b = parent[b]
        while a != b:
            if x < val[a]:
                val[a] = x
            if x < val[b]:
                val[b] = x
            a = parent[a]
            b = parent[b]
        if x < val[a]:
            val[a] = x

    # -- splay engine ------------------------------------------------------

    def _is_root(self, x: int) -> bool:
        p = self._pa[x]
        return p == -1 or (self._lc[p] != x and self._rc[p] != x)

    def _apply_tag(self, x: int, t: float) -> None:
        if t < self.val[x]:
            self.val[x] = t
        if t < self._tag[x]:
            self._tag[x] = t

    def _apply_rev(self, x: int) -> None:
        self._lc[x], self._rc[x] = self._rc[x], self._lc[x]
        self._rev[x] = not self._rev[x]

    def _push(self, x: int) -> None:
        if self._rev[x]:
            if self._lc[x] != -1:
                self._apply_rev(self._lc[x])
            if self._rc[x] != -1:
                self._apply_rev(self._rc[x])
            self._rev[x] = False
        t = self._tag[x]
        if t < INF:
            if self._lc[x] != -1:
                self._apply_tag(self._lc[x], t)
            if self._rc[x] != -1:
                self._apply_tag(self._rc[x], t)
            self._tag[x] = INF

    def _rotate(self, x: int) -> None:
        p = self._pa[x]
        g = self._pa[p]
        self.rotations += 1
        if self._lc[p] == x:
            self._lc[p] = self._rc[x]
            if self._rc[x] != -1:
                self._pa[self._rc[x]] = p
            self._rc[x] = p
        else:
            self._rc[p] = self._lc[x]
            if self._lc[x] != -1:
                self._pa[self._lc[x]] = p
            self._lc[x] = p
        if g != -1:
            if self._lc[g] == p:
                self._lc[g] = x
            elif self._rc[g] == p:
                self._rc[g] = x
        self._pa[p] = x
        self._pa[x] = g

    def _splay(self, x: int) -> None:
        stack = [x]
        y = x
        while not self._is_root(y):
            y = self._pa[y]
            stack.append(y)
        for y in reversed(stack):
            self._push(y)
        while not self._is_root(x):
            p = self._pa[x]
            if not self._is_root(p):
                g = self._pa[p]
                if (self._lc[g] == p) == (self._lc[p] == x):
                    self._rotate(p)
                else:
                    self._rotate(x)
            self._rotate(x)

    def _access(self, x: int) -> None:
        last = -1
        y = x
        while y != -1:
            self._splay(y)
            self._rc[y] = last
            last = y
            y = self._pa[y]
        self._splay(x)

    def _make_root(self, x: int) -> None:
        self._access(x)
        self._apply_rev(x)

    # -- public interface ------------------------------------------------

    def same_tree(self, a: int, b: int) -> bool:
        return self._comp[a] == self._comp[b]

    def path_min_update(self, v1: int, v2: int, x: float) -> None:
        """Apply c_u <- min(c_u, x) to every vertex on the v1..v2 path."""
        self._check(v1)
        self._check(v2)
        if self._comp[v1] != self._comp[v2]:
            raise GraphError(f"vertices {v1} and {v2} are in different trees")
        if self.engine == "naive":
            self._naive_update(v1, v2, x)
            return
        if v1 == v2:
            self._splay(v1)
            if x < self.val[v1]:
                self.val[v1] = x
            return
        self._make_root(v1)
        self._access(v2)
        self._apply_tag(v2, x)

    def query(self, v: int) -> float:
        """Current weight c_v."""
        self._check(v)
        if self.engine == "naive":
            return self.val[v]
        self._splay(v)
        return self.val[v]

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range")
