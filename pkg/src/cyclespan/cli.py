"""Command-line entry point: generation, solving, oracle comparison, and
benchmark sweeps with CSV output and figures rendered alongside.

All randomness flows from --seed through a splittable generator, and CSV
outputs are byte-identical for identical seeds and flags.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ._util import child_seed
from .ansc import (ansc_2approx, ansc_2eps, ansc_6_1, ansc_k2, ansc_k_approx,
                   ansc_near_opt, ansc_small_cycles, exact_ansc,
                   exact_ansc_directed)
from .gadgets import gadget_clique_reduction, gadget_layered, planted_base, LAYERED_KINDS
from .graph import (Graph, GraphError, PairQuerySet, gen_random, load_graph,
                    save_graph, INF)
from .npsp import (StInstance, exact_npsp, npsp_2eps, npsp_spanner_compose,
                   npsp_tz, st_shortest_paths)
from .report import (ANSC_HEADER, BENCH_HEADER, NPSP_HEADER, RunReport,
                     render_bench_figure, render_compare_figure)

ANSC_ALGOS = {
    "exact": lambda g, a: exact_ansc(g),
    "exact_directed": lambda g, a: exact_ansc_directed(g),
    "2approx": lambda g, a: ansc_2approx(g, seed=a.seed),
    "k_approx": lambda g, a: ansc_k_approx(g, a.k or 3, a.eps or 0.5, seed=a.seed),
    "near_opt": lambda g, a: ansc_near_opt(g, a.k or 3, seed=a.seed),
    "6_1": lambda g, a: ansc_6_1(g, seed=a.seed),
    "small_cycles": lambda g, a: ansc_small_cycles(g, a.k or 4, seed=a.seed),
    "2eps": lambda g, a: ansc_2eps(g, a.eps or 0.5, seed=a.seed),
    "k2": lambda g, a: ansc_k2(g, a.k or 3, seed=a.seed),
}

NPSP_ALGOS = {
    "npsp_exact": lambda g, q, a: exact_npsp(g, q),
    "tz": lambda g, q, a: npsp_tz(g, q, a.k or 2, seed=a.seed),
    "spanner_compose": lambda g, q, a: npsp_spanner_compose(g, q, a.k or 2, seed=a.seed),
    "npsp_2eps": lambda g, q, a: npsp_2eps(g, q, a.eps or 0.5, seed=a.seed),
    "st": lambda g, q, a: _run_st(g, q, a),
}

# documented per-algorithm guarantees for --assert-bounds, as functions of
# the exact value and the result's params
ANSC_BOUNDS = {
    "2approx": lambda sc, p: 2 * sc,
    "k_approx": lambda sc, p: p["alpha"] * sc,
    "near_opt": lambda sc, p: sc + 2 * math.ceil(sc / (2 * (p["k"] - 1))),
    "6_1": lambda sc, p: 6 * sc + 1,
    "small_cycles": lambda sc, p: max(p["alpha"], 15) * sc + p["beta"],
    "2eps": lambda sc, p: p["alpha"] * sc + p["beta"],
    "k2": lambda sc, p: p["alpha"] * sc + p["beta"],
}

NPSP_BOUNDS = {
    "tz": lambda d, p: (2 * p["k"] - 3) * d + 2 * math.ceil(d / 2),
    "spanner_compose": lambda d, p: (2 * p["k"] - 3) * (2 * p["k"] - 1) * d
        + 2 * math.ceil((2 * p["k"] - 1) * d / 2),
    "npsp_2eps": lambda d, p: p["alpha"] * d + p["beta"],
    "st": lambda d, p: 2 * d,
}


def _run_st(g, q, a):
    size = math.ceil(math.sqrt(g.n))
    rng = np.random.default_rng(np.random.SeedSequence(a.seed))
    picks = rng.choice(g.n, size=min(g.n, 2 * size), replace=False)
    inst = StInstance(sorted(int(v) for v in picks[:size]),
                      sorted(int(v) for v in picks[size:]))
    return st_shortest_paths(g, inst, seed=a.seed)


def _load_pairs(args, g) -> PairQuerySet:
    if args.pairs:
        return PairQuerySet.load(args.pairs)
    return PairQuerySet.generate(g.n, 4 * g.n, seed=child_seed(args.seed, 99))


def _fail(msg: str, code: int = 2):
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(code)


def cmd_gen(args) -> int:
    if args.what == "graph":
        g = gen_random(args.n, args.m, args.max_weight, args.directed, args.seed)
        save_graph(g, args.output)
        print(f"wrote {args.output}: n={g.n} m={g.m}")
    elif args.what == "pairs":
        g = load_graph(args.graph)
        q = PairQuerySet.generate(g.n, args.count or 4 * g.n, seed=args.seed)
        q.save(args.output)
        print(f"wrote {args.output}: {len(q)} pairs")
    elif args.what == "gadget":
        if args.kind == "clique_reduction":
            base = planted_base("clique", args.n0, seed=args.seed, k=args.k) \
                if args.planted else gen_random(args.n0, args.m0, 1, False, args.seed)
            inst = gadget_clique_reduction(base, args.k, args.t, args.r)
        elif args.kind == "kcycle":
            base, colors = planted_base("kcycle", args.n0, seed=args.seed, k=args.k)
            if not args.planted:
                base = gen_random(args.n0, args.m0, 1, True, args.seed)
                colors = None
            inst = gadget_layered("kcycle", base, k=args.k, seed=args.seed, colors=colors)
        elif args.kind == "disjointness":
            x, y = planted_base("disjointness", args.n0, seed=args.seed)
            inst = gadget_layered("disjointness", (x, y))
        else:
            base = planted_base(args.kind, args.n0, seed=args.seed) if args.planted \
                else gen_random(args.n0, args.m0, 1, False, args.seed)
            inst = gadget_layered(args.kind, base)
        inst.save(args.output)
        print(f"wrote {args.output}.graph/.json: kind={inst.kind} "
              f"yes={inst.yes_value} no={inst.no_value} truth={inst.ground_truth}")
    return 0


def _solve_one(algo: str, g: Graph, args, with_exact: bool):
    t0 = time.perf_counter()
    if algo in ANSC_ALGOS:
        if algo == "exact_directed" and not g.directed:
            _fail("exact_directed needs a directed graph")
        res = ANSC_ALGOS[algo](g, args)
        if with_exact:
            oracle = exact_ansc_directed(g) if g.directed else exact_ansc(g)
            res.with_exact(oracle.estimates)
        rows = [list(r) for r in res.csv_rows()]
        header = ANSC_HEADER
    elif algo in NPSP_ALGOS:
        q = _load_pairs(args, g)
        res = NPSP_ALGOS[algo](g, q, args)
        if with_exact:
            res.with_exact(exact_npsp(g, res.queries).answers)
        rows = [list(r) for r in res.csv_rows()]
        header = NPSP_HEADER
    else:
        _fail(f"unknown algorithm {algo!r}; choose from "
              f"{sorted(ANSC_ALGOS) + sorted(NPSP_ALGOS)}")
    wall = time.perf_counter() - t0
    report = RunReport(algo, res.params, args.seed, header, rows, wall)
    return res, report


def _check_bounds(algo: str, res) -> list[str]:
    violations = []
    table = ANSC_BOUNDS if algo in ANSC_BOUNDS else NPSP_BOUNDS
    if algo not in table:
        return violations
    bound = table[algo]
    if hasattr(res, "estimates"):
        pairs = enumerate(res.estimates)
        exact = res.exact
        label = "vertex"
    else:
        pairs = enumerate(res.answers)
        exact = res.exact
        label = "pair"
    for i, est in pairs:
        ex = exact[i]
        if not math.isfinite(ex):
            if math.isfinite(est):
                violations.append(f"{label} {i}: estimate {est} but exact is inf")
            continue
        if est < ex - 1e-9:
            violations.append(f"{label} {i}: estimate {est} below exact {ex}")
        elif est > bound(ex, res.params) + 1e-9:
            violations.append(f"{label} {i}: estimate {est} above bound "
                              f"{bound(ex, res.params)} for exact {ex}")
    return violations


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    res, report = _solve_one(args.algo, g, args, with_exact=args.assert_bounds)
    if args.output:
        report.write_csv(args.output)
    else:
        report.write_csv(sys.stdout)
    agg = report.aggregates()
    print(f"# {args.algo}: items={agg['items']} scans={res.edges_scanned} "
          f"wall={agg['wall_time']:.3f}s", file=sys.stderr)
    if args.assert_bounds:
        bad = _check_bounds(args.algo, res)
        if bad:
            for b in bad[:20]:
                print(f"BOUND VIOLATION: {b}", file=sys.stderr)
            return 3
    return 0


def cmd_compare(args) -> int:
    g = load_graph(args.graph)
    res, report = _solve_one(args.algo, g, args, with_exact=True)
    if args.output:
        report.write_csv(args.output)
        if args.plot:
            png = args.output.rsplit(".", 1)[0] + ".png"
            render_compare_figure(report, png)
            print(f"# figure: {png}", file=sys.stderr)
    else:
        report.write_csv(sys.stdout)
    agg = report.aggregates()
    print(f"# {args.algo}: max_ratio={agg['max_ratio']:.4f} "
          f"mean_ratio={agg['mean_ratio']:.4f} max_surplus={agg['max_surplus']}",
          file=sys.stderr)
    if args.assert_bounds:
        bad = _check_bounds(args.algo, res)
        if bad:
            for b in bad[:20]:
                print(f"BOUND VIOLATION: {b}", file=sys.stderr)
            return 3
    return 0


def _bench_task(spec):
    algo, n, m, seed, args = spec
    g = gen_random(n, m, args.max_weight, False, seed)
    res, _ = _solve_one(algo, g, args, with_exact=False)
    if algo in ANSC_ALGOS:
        exact = exact_ansc(g).estimates
        res.with_exact(exact)
        est = res.estimates
        ok = np.isfinite(exact) & (exact > 0)
        ratios = est[ok] / exact[ok]
        surplus = est[ok] - exact[ok]
    else:
        exact = np.asarray(exact_npsp(g, res.queries).answers)
        est = np.asarray(res.answers)
        ok = np.isfinite(exact) & (exact > 0)
        ratios = est[ok] / exact[ok]
        surplus = est[ok] - exact[ok]
    return [algo, n, m, args.k or "", args.eps or "", seed, res.edges_scanned,
            f"{ratios.max():.6g}" if len(ratios) else "",
            f"{ratios.mean():.6g}" if len(ratios) else "",
            f"{surplus.max():.6g}" if len(surplus) else ""]


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    algos = args.algos.split(",")
    for a in algos:
        if a not in ANSC_ALGOS and a not in NPSP_ALGOS:
            _fail(f"unknown algorithm {a!r}")
    ks = [int(x) for x in args.ks.split(",")] if args.ks else [args.k]
    epss = [float(x) for x in args.eps_grid.split(",")] if args.eps_grid else [args.eps]
    specs = []
    for n in sizes:
        m = int(round(n ** args.m_exponent)) if args.m_exponent else args.m_factor * n
        m = min(m, n * (n - 1) // 2)
        for algo in algos:
            for kk in ks:
                for ee in epss:
                    sub = argparse.Namespace(**vars(args))
                    sub.k = kk
                    sub.eps = ee
                    for rep in range(args.reps):
                        specs.append((algo, n, m,
                                      child_seed(args.seed, n, rep, kk or 0,
                                                 int((ee or 0) * 1000)), sub))
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(_bench_task, specs))
    else:
        rows = [_bench_task(s) for s in specs]
    rows.sort(key=lambda r: (str(r[0]), int(r[1]), str(r[3]), str(r[4]), int(r[5])))
    report = RunReport("bench", {}, args.seed, BENCH_HEADER, rows)
    if args.output:
        report.write_csv(args.output)
        if args.plot:
            png = args.output.rsplit(".", 1)[0] + ".png"
            render_bench_figure(rows, png)
            print(f"# figure: {png}", file=sys.stderr)
    else:
        report.write_csv(sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclespan",
                                description="shortest-cycle and pair-distance toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--k", type=int, default=None)
        sp.add_argument("--eps", type=float, default=None)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--output", default=None)

    g = sub.add_parser("gen", help="generate graphs, pair sets, gadgets")
    gsub = g.add_subparsers(dest="what", required=True)
    gg = gsub.add_parser("graph")
    gg.add_argument("--n", type=int, required=True)
    gg.add_argument("--m", type=int, required=True)
    gg.add_argument("--max-weight", type=int, default=1)
    gg.add_argument("--directed", action="store_true")
    gg.add_argument("--seed", type=int, default=0)
    gg.add_argument("--output", required=True)
    gp = gsub.add_parser("pairs")
    gp.add_argument("--graph", required=True)
    gp.add_argument("--count", type=int, default=None)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--output", required=True)
    gd = gsub.add_parser("gadget")
    gd.add_argument("--kind", required=True,
                    choices=("clique_reduction",) + LAYERED_KINDS)
    gd.add_argument("--n0", type=int, default=6)
    gd.add_argument("--m0", type=int, default=9)
    gd.add_argument("--k", type=int, default=4)
    gd.add_argument("--t", type=int, default=2)
    gd.add_argument("--r", type=int, default=2)
    gd.add_argument("--planted", action="store_true")
    gd.add_argument("--seed", type=int, default=0)
    gd.add_argument("--output", required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run an algorithm on a graph")
    s.add_argument("--algo", required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--pairs", default=None)
    s.add_argument("--assert-bounds", action="store_true")
    common(s)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("compare", help="run an algorithm plus the exact oracle")
    c.add_argument("--algo", required=True)
    c.add_argument("--graph", required=True)
    c.add_argument("--pairs", default=None)
    c.add_argument("--assert-bounds", action="store_true")
    c.add_argument("--no-plot", dest="plot", action="store_false")
    common(c)
    c.set_defaults(func=cmd_compare)

    b = sub.add_parser("bench", help="sweep sizes and emit work counters")
    b.add_argument("--algos", required=True)
    b.add_argument("--sizes", required=True)
    b.add_argument("--m-exponent", type=float, default=1.3)
    b.add_argument("--m-factor", type=int, default=None)
    b.add_argument("--max-weight", type=int, default=1)
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--ks", default=None, help="comma list of k values to sweep")
    b.add_argument("--eps-grid", default=None, help="comma list of eps values")
    b.add_argument("--no-plot", dest="plot", action="store_false")
    common(b)
    b.set_defaults(func=cmd_bench, pairs=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphError as exc:
        _fail(str(exc))
    except FileNotFoundError as exc:
        _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
