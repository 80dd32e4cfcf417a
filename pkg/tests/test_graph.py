import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclespan import (Graph, GraphError, ParseError, PairQuerySet,
                       degree_uniformize, dumps_graph, gen_random,
                       loads_graph, restrict_edges, INF)
from cyclespan.graph import load_graph, save_graph

from oracles import enum_ansc_undirected, punctured_ansc


def test_load_triangle():
    g = loads_graph("3 3 u\n0 1 1\n1 2 1\n2 0 1")
    assert g.n == 3 and g.m == 3 and not g.directed
    assert sorted(len(a) for a in g.adjacency) == [2, 2, 2]


def test_load_directed_arc():
    g = loads_graph("2 1 d\n0 1 5")
    assert g.directed and g.n == 2 and g.m == 1
    assert g.adjacency[0] == [(1, 5, 0)] and g.adjacency[1] == []


@pytest.mark.parametrize("text,fragment", [
    ("3 3 x\n", "header"),
    ("nope\n", "header"),
    ("2 1 u\n0 5 1", "out of range"),
    ("2 1 u\n0 1 -2", "weight"),
    ("2 1 u\n0 0 1", "self-loop"),
    ("3 2 u\n0 1 1\n1 0 2", "duplicate"),
    ("3 2 u\n0 1 1", "announced"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        loads_graph(text)


def test_roundtrip_file(tmp_path):
    g = gen_random(20, 40, 5, directed=False, seed=3)
    p = tmp_path / "g.txt"
    save_graph(g, p)
    assert load_graph(p) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_roundtrip_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 40))
    cap = n * (n - 1) // 2
    m = int(rng.integers(0, cap + 1))
    directed = bool(rng.integers(0, 2))
    if directed:
        cap = n * (n - 1)
        m = int(rng.integers(0, cap + 1))
    g = gen_random(n, m, int(rng.integers(1, 9)), directed=directed, seed=seed)
    assert loads_graph(dumps_graph(g)) == g


def test_gen_random_k4_forced():
    g = gen_random(4, 6, 1, directed=False, seed=11)
    assert g.m == 6
    assert sorted(len(a) for a in g.adjacency) == [3, 3, 3, 3]


def test_gen_random_deterministic():
    a = gen_random(30, 90, 7, directed=False, seed=42)
    b = gen_random(30, 90, 7, directed=False, seed=42)
    assert a == b
    c = gen_random(30, 90, 7, directed=False, seed=43)
    assert a != c


def test_gen_random_counts():
    g = gen_random(100, 300, 10, directed=False, seed=7)
    assert g.m == 300
    deg = g.degrees()
    assert deg.max() <= 99
    assert 1 <= g.ew.min() and g.ew.max() <= 10


def test_gen_random_infeasible():
    with pytest.raises(GraphError):
        gen_random(4, 7, 1, directed=False, seed=0)


def test_restrict_edges_identity_and_empty():
    g = gen_random(15, 30, 3, directed=False, seed=5)
    same = restrict_edges(g, lambda e: True)
    assert same == g
    empty = restrict_edges(g, lambda e: False)
    assert empty.n == 15 and empty.m == 0


def test_restrict_edges_drop_one():
    g = loads_graph("3 3 u\n0 1 1\n1 2 1\n2 0 1")
    for drop in range(3):
        h = restrict_edges(g, lambda e, d=drop: e != d)
        assert h.m == 2
        assert enum_ansc_undirected(h) == [INF, INF, INF]
    kept = restrict_edges(g, [0, 2])
    assert set(int(e) for e in kept.eids) == {0, 2}


def test_restrict_then_uniformize_on_preserved_ids():
    g = gen_random(25, 80, 3, directed=False, seed=13)
    keep = set(range(0, g.m, 2))
    h = restrict_edges(g, keep)
    assert h.m == len(keep)
    assert set(int(e) for e in h.eids) == keep


def test_degree_uniformize_identity_on_triangle():
    g = loads_graph("3 3 u\n0 1 1\n1 2 1\n2 0 1")
    h, vmap = degree_uniformize(g, cap=3)
    assert h is g
    assert vmap.image.tolist() == [0, 1, 2]


def test_degree_uniformize_star_plus_edge():
    # star K_{1,9} center 0, plus one leaf-leaf edge closing a triangle
    edges = [(0, i, 1) for i in range(1, 10)] + [(1, 2, 1)]
    g = Graph(10, edges)
    h, vmap = degree_uniformize(g, cap=3)
    sc_in = enum_ansc_undirected(g)
    folded = vmap.project(np.asarray(punctured_ansc(h)))
    assert folded[0] == sc_in[0] == 3
    assert folded.tolist() == sc_in


def test_degree_uniformize_preserves_cycles_random():
    g = gen_random(40, 140, 4, directed=False, seed=9)
    h, vmap = degree_uniformize(g, cap=4)
    assert h.n > g.n
    deg_over_protected = np.zeros(h.n, dtype=int)
    for u, v, w, eid in h.edges():
        if eid < g.m:  # original (protected) edges
            deg_over_protected[u] += 1
            deg_over_protected[v] += 1
    assert deg_over_protected.max() <= 4
    sc_in = punctured_ansc(g)
    folded = vmap.project(np.asarray(punctured_ansc(h)))
    assert folded.tolist() == sc_in
    # size bound: O(n + m/cap)
    assert h.n - g.n <= 2 * (g.n + g.m // 4 + 1)


def test_pair_query_set():
    q = PairQuerySet.generate(50, 120, seed=1)
    assert len(q) == 120
    assert all(s != t for s, t in q.pairs)
    with pytest.raises(GraphError):
        PairQuerySet([(3, 3)])
    big = PairQuerySet.generate(10, 40, seed=2)
    with pytest.raises(GraphError):
        PairQuerySet(big.pairs + [(0, 1)]).validate_size(10)


def test_pair_query_set_io(tmp_path):
    q = PairQuerySet.generate(30, 60, seed=4)
    p = tmp_path / "pairs.txt"
    q.save(p)
    r = PairQuerySet.load(p)
    assert r.pairs == q.pairs


def test_zero_weight_rejected_at_load():
    with pytest.raises(ParseError, match="weight"):
        loads_graph("2 1 u\n0 1 0")
