import numpy as np
import pytest
from scipy.sparse.csgraph import dijkstra as sp_dijkstra

from cyclespan import Graph, gen_random, restrict_edges, INF
from cyclespan.graph import GraphError
from cyclespan.spanners import (Spanner, _bridges, fault_tolerant_spanner,
                                spanner_2k_minus_1, spanner_composite_2eps,
                                spanner_k_kminus1, spanner_near_additive)

from oracles import punctured_ansc


def all_pairs(g):
    return sp_dijkstra(g.csr())


def max_violation(g, sp, alpha, beta):
    """Worst surplus d_P - (alpha*d_G + beta) over all pairs."""
    dg = all_pairs(g)
    dp = all_pairs(sp.as_graph())
    mask = np.isfinite(dg)
    return float((dp - (alpha * dg + beta))[mask].max(initial=-INF))


def random_tree(n, seed):
    rng = np.random.default_rng(seed)
    edges = [(int(rng.integers(0, v)), v, int(rng.integers(1, 5))) for v in range(1, n)]
    return Graph(n, edges)


def cycle_graph(k):
    return Graph(k, [(i, (i + 1) % k, 1) for i in range(k)])


def grid_graph(r, c):
    edges = []
    for i in range(r):
        for j in range(c):
            v = i * c + j
            if j + 1 < c:
                edges.append((v, v + 1, 1))
            if i + 1 < r:
                edges.append((v, v + c, 1))
    return Graph(r * c, edges)


def test_tree_is_its_own_spanner():
    t = random_tree(40, 1)
    sp = spanner_2k_minus_1(t, 2, seed=3)
    assert sp.edge_count == t.m
    t1 = random_tree(25, 2)
    # unweighted tree for the additive constructions
    t1u = Graph(25, [(int(t1.eu[i]), int(t1.ev[i]), 1) for i in range(t1.m)])
    for sp in (spanner_k_kminus1(t1u, 2), spanner_near_additive(t1u, 0.5),
               spanner_composite_2eps(t1u, 0.5)):
        assert sp.edge_count == t1u.m
    assert spanner_near_additive(t1u, 0.5).beta == 0


def test_k1_rejected():
    g = gen_random(10, 20, 3, directed=False, seed=0)
    with pytest.raises(GraphError):
        spanner_2k_minus_1(g, 1)


def test_weighted_rejected_by_unweighted_constructions():
    g = gen_random(20, 50, 5, directed=False, seed=1)
    with pytest.raises(GraphError):
        spanner_k_kminus1(g, 2)
    with pytest.raises(GraphError):
        spanner_near_additive(g, 0.5)


@pytest.mark.parametrize("k", [2, 3])
def test_2k_minus_1_stretch(k):
    for seed in range(10):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(30, 90))
        m = int(rng.integers(2 * n, min(5 * n, n * (n - 1) // 2)))
        g = gen_random(n, m, int(rng.integers(1, 8)), directed=False, seed=seed + 10)
        sp = spanner_2k_minus_1(g, k, seed=seed)
        assert sp.edge_count <= sp.claimed_edge_bound
        assert max_violation(g, sp, 2 * k - 1, 0) <= 0


@pytest.mark.parametrize("k", [2, 3])
def test_k_kminus1_stretch(k):
    for seed in range(10):
        rng = np.random.default_rng(100 + seed)
        n = int(rng.integers(30, 90))
        m = int(rng.integers(2 * n, min(6 * n, n * (n - 1) // 2)))
        g = gen_random(n, m, 1, directed=False, seed=seed + 20)
        sp = spanner_k_kminus1(g, k, seed=seed)
        assert sp.edge_count <= sp.claimed_edge_bound
        assert max_violation(g, sp, k, k - 1) <= 0


def test_k_kminus1_on_c5():
    sp = spanner_k_kminus1(cycle_graph(5), 2, seed=0)
    assert max_violation(cycle_graph(5), sp, 2, 1) <= 0


def test_k2_size_on_complete_graph():
    n = 40
    edges = [(i, j, 1) for i in range(n) for j in range(i + 1, n)]
    g = Graph(n, edges)
    sp = spanner_k_kminus1(g, 2, seed=5)
    assert sp.edge_count <= 4 * 2 * n ** 1.5


def test_near_additive_grid_30x30():
    g = grid_graph(30, 30)
    sp = spanner_near_additive(g, 0.5, seed=0)
    # sampled-pair stretch within (1.5, recorded beta)
    srcs = list(range(0, 900, 30))
    dg = sp_dijkstra(g.csr(), indices=srcs)
    dp = sp_dijkstra(sp.as_graph().csr(), indices=srcs)
    mask = np.isfinite(dg)
    assert (dp[mask] - (1.5 * dg[mask] + sp.beta)).max() <= 0


def test_near_additive_dense_random():
    for seed in range(5):
        g = gen_random(60, 700, 1, directed=False, seed=seed + 40)
        sp = spanner_near_additive(g, 0.5, seed=seed)
        assert sp.edge_count <= sp.claimed_edge_bound
        assert sp.meta["weaker_bound"]
        # provable additive surplus of the construction is 2
        assert max_violation(g, sp, 1.0, 2) <= 0
        assert max_violation(g, sp, 1.5, sp.beta) <= 0


def test_composite_contract():
    for seed in range(5):
        g = gen_random(50, 400, 1, directed=False, seed=seed + 60)
        sp = spanner_composite_2eps(g, 0.5, seed=seed)
        assert sp.alpha == 2.5
        assert sp.beta == 2 * sp.meta["inner_beta"] + 1
        # provable: (2,1) composed with (1,2) gives 2d + 5
        assert max_violation(g, sp, 2, 5) <= 0
        assert max_violation(g, sp, 2.5, max(sp.beta, 5)) <= 0


def test_fault_tolerant_c4_forced():
    sp = fault_tolerant_spanner(cycle_graph(4), 2, seed=0)
    assert sp.edge_count == 4


def test_fault_tolerant_contract_sampled():
    for seed in range(4):
        rng = np.random.default_rng(seed)
        n = 50
        g = gen_random(n, 180, 1, directed=False, seed=seed + 80)
        sp = fault_tolerant_spanner(g, 2, seed=seed)
        assert sp.fault_tolerance == 1
        assert sp.edge_count <= sp.claimed_edge_bound
        sg = sp.as_graph()
        for _ in range(60):
            i = int(rng.integers(0, g.m))
            e = int(g.eids[i])
            gp = restrict_edges(g, lambda x, e=e: x != e)
            pp = restrict_edges(sg, lambda x, e=e: x != e)
            dg = all_pairs(gp)
            dp = all_pairs(pp)
            u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
            if np.isfinite(dg[u, v]):
                assert dp[u, v] <= 3 * dg[u, v]


def test_fault_tolerant_cycle_property():
    # spanner + v's incident edges contains a cycle through v of length
    # <= (2k-1) * SC(v)
    from cyclespan import cycle_estimation_dijkstra
    for seed in range(3):
        g = gen_random(40, 140, 1, directed=False, seed=seed + 95)
        sc = punctured_ansc(g)
        k = 2
        sp = fault_tolerant_spanner(g, k, seed=seed)
        base = set(int(e) for e in sp.edge_ids)
        for v in range(g.n):
            if sc[v] == INF:
                continue
            inc = {int(g.eids[i]) for i in range(g.m)
                   if v in (int(g.eu[i]), int(g.ev[i]))}
            aug = restrict_edges(g, base | inc)
            est = cycle_estimation_dijkstra(aug, v)
            assert est[v] <= (2 * k - 1) * sc[v]


def big_cycle_with_tail(n_cycle, tail):
    edges = [(i, (i + 1) % n_cycle, 1) for i in range(n_cycle)]
    prev = 0
    for j in range(tail):
        edges.append((prev, n_cycle + j, 1))
        prev = n_cycle + j
    return Graph(n_cycle + tail, edges)


def qualifying_vertices(exact, alpha, beta):
    thr = np.ceil(alpha + 2) * (alpha + beta + 1)
    return [v for v in range(len(exact)) if np.isfinite(exact[v]) and exact[v] > thr]


def test_cycle_spanner_general_property():
    # vertices whose shortest cycle beats the threshold keep a cycle of
    # length <= alpha*SC + ceil(alpha+2)*beta inside the spanner
    from cyclespan import exact_ansc
    cases = [big_cycle_with_tail(40, 5), big_cycle_with_tail(60, 0)]
    for seed in range(4):
        cases.append(gen_random(60, 150, 1, directed=False, seed=seed + 400))
    for g in cases:
        exact = exact_ansc(g).estimates
        for sp in (spanner_k_kminus1(g, 2, seed=1),
                   spanner_near_additive(g, 0.5, seed=1)):
            sub_exact = exact_ansc(sp.as_graph()).estimates
            a, b = sp.alpha, sp.beta
            for v in qualifying_vertices(exact, a, b):
                assert sub_exact[v] <= a * exact[v] + np.ceil(a + 2) * b + 1e-9


def test_spanner_u_property():
    # cycle-estimation from a witness cycle vertex u inside the spanner
    # reaches v within alpha*SC(v) + ceil(alpha+3)*beta
    from cyclespan import cycle_estimation_dijkstra, exact_ansc
    g = big_cycle_with_tail(50, 4)
    exact = exact_ansc(g).estimates
    sp = spanner_k_kminus1(g, 2, seed=2)
    a, b = sp.alpha, sp.beta
    sub = sp.as_graph()
    for v in qualifying_vertices(exact, a, b):
        u = (v + 3) % 50 if v < 50 else 0  # any vertex on the big cycle
        est = cycle_estimation_dijkstra(sub, u)
        assert est[v] <= a * exact[v] + np.ceil(a + 3) * b + 1e-9


def test_bridges():
    # two triangles joined by a bridge
    g = Graph(6, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 1),
                  (3, 4, 1), (4, 5, 1), (5, 3, 1)])
    assert _bridges(g) == {3}
    assert _bridges(cycle_graph(5)) == set()


def test_spanner_serialize(tmp_path):
    g = gen_random(30, 90, 1, directed=False, seed=7)
    sp = spanner_k_kminus1(g, 2, seed=1)
    p = tmp_path / "sp.txt"
    sp.save(p)
    lines = [l for l in p.read_text().splitlines() if not l.startswith("#")]
    assert sorted(int(x) for x in lines) == sorted(int(e) for e in sp.edge_ids)


def test_deterministic_given_seed():
    g = gen_random(40, 160, 1, directed=False, seed=3)
    a = fault_tolerant_spanner(g, 2, seed=9)
    b = fault_tolerant_spanner(g, 2, seed=9)
    assert np.array_equal(a.edge_ids, b.edge_ids)
    c = spanner_2k_minus_1(g, 2, seed=1)
    d = spanner_2k_minus_1(g, 2, seed=2)
    assert not np.array_equal(c.edge_ids, d.edge_ids) or c.edge_count == g.m
