import math

import numpy as np
import pytest

from cyclespan import Graph, PairQuerySet, exact_ansc, gen_random, INF
from cyclespan.graph import GraphError
from cyclespan.npsp import (StInstance, build_tz_oracle, exact_npsp,
                            npsp_2eps, npsp_spanner_compose, npsp_tz,
                            recover_reduced_distances, reduce_npsp_to_ansc,
                            st_shortest_paths)

from oracles import bf_distances


def path_graph(k):
    return Graph(k, [(i, i + 1, 1) for i in range(k - 1)])


def random_instance(seed, n_lo=50, n_hi=120, weighted=False, pair_factor=4):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_lo, n_hi))
    m = int(rng.integers(2 * n, min(4 * n, n * (n - 1) // 2)))
    mw = int(rng.integers(2, 9)) if weighted else 1
    g = gen_random(n, m, mw, directed=False, seed=seed + 7)
    q = PairQuerySet.generate(n, pair_factor * n, seed=seed + 13)
    return g, q


def exact_answers(g, q):
    return exact_npsp(g, q).answers


def test_exact_npsp_path_and_disconnected():
    g = path_graph(6)
    q = PairQuerySet([(0, 5), (1, 3)])
    assert exact_npsp(g, q).answers == [5, 2]
    g2 = Graph(4, [(0, 1, 1), (2, 3, 1)])
    q2 = PairQuerySet([(0, 3)])
    assert exact_npsp(g2, q2).answers == [INF]


def test_exact_npsp_vs_bellman_ford():
    for seed in range(10):
        g, q = random_instance(seed, 20, 50, weighted=True)
        got = exact_answers(g, q)
        for (s, t), d in zip(q.pairs, got):
            assert d == bf_distances(g, s)[t]


def test_tz_oracle_structure():
    g, _ = random_instance(3, 80, 120)
    o = build_tz_oracle(g, 2, seed=1)
    n = g.n
    # pivots are nearest sampled vertices with lowest-id ties
    lvl1 = o.levels[1]
    if lvl1:
        d = np.min([bf_distances(g, s) for s in lvl1], axis=0)
        for v in range(n):
            if np.isfinite(d[v]):
                assert o.pivot_dist[1, v] == d[v]
    # bunch distances are exact
    for v in range(0, n, 7):
        for w, dv in zip(o.bunch_keys[v], o.bunch_dist[v]):
            assert bf_distances(g, v)[w] == dv
    assert o.bunch_size_total() <= 3 * n ** 1.5 * math.log(n)


@pytest.mark.parametrize("k", [2, 3])
def test_tz_sandwich_unweighted(k):
    # the 2*ceil(d/2) additive term needs unit edge steps (midpoint argument)
    for seed in range(6):
        g, q = random_instance(seed + 40, weighted=False)
        res = npsp_tz(g, q, k, seed=seed)
        exact = exact_answers(g, q)
        for d_hat, d in zip(res.answers, exact):
            if not math.isfinite(d):
                assert not math.isfinite(d_hat)
                continue
            assert d <= d_hat <= (2 * k - 3) * d + 2 * math.ceil(d / 2) + 1e-9


@pytest.mark.parametrize("k", [2, 3])
def test_tz_weighted_classic_stretch(k):
    # on weighted inputs the classic multiplicative guarantee holds
    for seed in range(4):
        g, q = random_instance(seed + 46, weighted=True)
        res = npsp_tz(g, q, k, seed=seed)
        exact = exact_answers(g, q)
        for d_hat, d in zip(res.answers, exact):
            if math.isfinite(d):
                assert d <= d_hat <= (2 * k - 1) * d + 1e-9


def test_tz_adjacent_pair_bound():
    g, _ = random_instance(8, 60, 90)
    i = 0
    s, t = int(g.eu[i]), int(g.ev[i])
    q = PairQuerySet([(s, t)])
    res = npsp_tz(g, q, 2, seed=4)
    assert 1 <= res.answers[0] <= 3


def test_tz_rejects_k1():
    g, q = random_instance(1, 20, 30)
    with pytest.raises(GraphError):
        npsp_tz(g, q, 1)


def test_spanner_compose_tree():
    # tree input: spanner keeps every edge, so the oracle sandwich applies
    # with spanner distances equal to true distances
    t = path_graph(30)
    q = PairQuerySet.generate(30, 60, seed=2)
    res = npsp_spanner_compose(t, q, 2, seed=3)
    assert res.params["spanner_edges"] == t.m
    for d_hat, d in zip(res.answers, exact_answers(t, q)):
        assert d <= d_hat <= d + 2 * math.ceil(d / 2)


def test_spanner_compose_bound_and_size():
    for seed in range(6):
        g, q = random_instance(seed + 60, weighted=False)
        res = npsp_spanner_compose(g, q, 2, seed=seed)
        exact = exact_answers(g, q)
        assert res.params["spanner_edges"] <= 4 * 2 * g.n ** 1.5
        for d_hat, d in zip(res.answers, exact):
            if math.isfinite(d):
                assert d <= d_hat <= 6 * d + 2 * math.ceil(3 * d / 2) + 1e-9


def test_spanner_compose_weighted_classic_stretch():
    for seed in range(3):
        g, q = random_instance(seed + 66, weighted=True)
        res = npsp_spanner_compose(g, q, 2, seed=seed)
        exact = exact_answers(g, q)
        for d_hat, d in zip(res.answers, exact):
            if math.isfinite(d):
                assert d <= d_hat <= 9 * d + 1e-9


def test_2eps_low_degree_path_is_tight():
    g = path_graph(40)
    q = PairQuerySet([(0, 10), (5, 30)])
    res = npsp_2eps(g, q, 0.5, seed=1)
    exact = exact_answers(g, q)
    b1 = res.params["beta_near_additive"]
    for d_hat, d in zip(res.answers, exact):
        assert d <= d_hat <= d + 2 * b1 + 1


def test_2eps_hub_and_spoke():
    # every s-t shortest path crosses the hub
    n = 60
    edges = [(0, i, 1) for i in range(1, n)]
    g = Graph(n, edges)
    q = PairQuerySet([(i, i + 1) for i in range(1, n - 1, 2)])
    res = npsp_2eps(g, q, 0.5, seed=2)
    exact = exact_answers(g, q)
    b2 = res.params["beta_composite"]
    for d_hat, d in zip(res.answers, exact):
        assert d <= d_hat <= 2.5 * d + (4 + 2 * 0.5 + 2 * b2) + 1e-9


def test_2eps_bound_random():
    for seed in range(5):
        g, q = random_instance(seed + 80)
        res = npsp_2eps(g, q, 0.5, seed=seed)
        exact = exact_answers(g, q)
        beta = res.params["beta"]
        for d_hat, d in zip(res.answers, exact):
            if math.isfinite(d):
                assert d <= d_hat <= 2.5 * d + beta + 1e-9


def test_2eps_rejects_weighted():
    g, q = random_instance(5, weighted=True)
    with pytest.raises(GraphError):
        npsp_2eps(g, q, 0.5)


def test_st_ball_containment_exact():
    g = path_graph(30)
    inst = StInstance([0, 1], [3, 4], r=200)
    res = st_shortest_paths(g, inst, seed=0)
    want = {(s, t): abs(s - t) for s in (0, 1) for t in (3, 4)}
    for (s, t), d in zip(res.queries.pairs, res.answers):
        assert d == want[(s, t)]


def test_st_two_cliques():
    # two K_12 cliques joined by one edge
    edges = []
    for i in range(12):
        for j in range(i + 1, 12):
            edges.append((i, j, 1))
            edges.append((12 + i, 12 + j, 1))
    edges.append((0, 12, 1))
    g = Graph(24, edges)
    inst = StInstance(list(range(4)), list(range(12, 16)))
    res = st_shortest_paths(g, inst, seed=1)
    exact = exact_npsp(g, res.queries).answers
    for d_hat, d in zip(res.answers, exact):
        assert d <= d_hat <= 2 * d


def test_st_random_ratio():
    for seed in range(6):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(60, 140))
        m = int(rng.integers(2 * n, 4 * n))
        g = gen_random(n, m, 1, directed=False, seed=seed + 100)
        size = math.ceil(math.sqrt(n))
        picks = rng.choice(n, size=2 * size, replace=False)
        inst = StInstance(sorted(int(v) for v in picks[:size]),
                          sorted(int(v) for v in picks[size:]))
        res = st_shortest_paths(g, inst, seed=seed)
        exact = exact_npsp(g, res.queries).answers
        for d_hat, d in zip(res.answers, exact):
            if math.isfinite(d):
                assert d <= d_hat <= 2 * d
            else:
                assert not math.isfinite(d_hat)


def test_st_oversize_rejected():
    g = gen_random(25, 60, 1, directed=False, seed=0)
    with pytest.raises(GraphError):
        st_shortest_paths(g, StInstance(list(range(22)), [0]))


def test_reduction_roundtrip_single_pair():
    g = path_graph(8)
    q = PairQuerySet([(1, 6)])
    gg, ids = reduce_npsp_to_ansc(g, q)
    sc = exact_ansc(gg).estimates
    got = recover_reduced_distances(g, sc, ids)
    assert got == [5]


def test_reduction_roundtrip_k4():
    g = gen_random(4, 6, 1, directed=False, seed=0)
    q = PairQuerySet([(i, j) for i in range(4) for j in range(i + 1, 4)])
    gg, ids = reduce_npsp_to_ansc(g, q)
    sc = exact_ansc(gg).estimates
    assert recover_reduced_distances(g, sc, ids) == [1.0] * 6


def test_reduction_roundtrip_random():
    for seed in range(6):
        g, q = random_instance(seed + 120, 20, 50, weighted=True, pair_factor=2)
        gg, ids = reduce_npsp_to_ansc(g, q)
        sc = exact_ansc(gg).estimates
        got = recover_reduced_distances(g, sc, ids)
        assert got == exact_answers(g, q)


def test_csv_rows():
    g, q = random_instance(9, 30, 50)
    res = npsp_tz(g, q, 2, seed=1).with_exact(exact_answers(g, q))
    rows = list(res.csv_rows())
    assert len(rows) == len(q)
    assert rows[0][5] == "tz"
