"""Acceptance suite: one test per criterion, each recording a pass/fail line.

The summary printed at the end of the run (see ``conftest.py``) lists every
criterion with the measured quantity behind its verdict.
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS, random_dag
from fuzzypath.bench import alpha_profile, default_levels, run_scaling, size_grid
from fuzzypath.cli import main
from fuzzypath.datasets import hasuike_network
from fuzzypath.errors import Unreachable
from fuzzypath.ggfn import Ggfn, add, fold_sum, scale
from fuzzypath.montecarlo import replicate, run_scenarios, sample_costs
from fuzzypath.network import HeightRegime, generate_instance, induced_subgraph, max_reachable, write_edge_list
from fuzzypath.ranking import RiskParams, cost_weights, r_benefit, r_cost
from fuzzypath.solver import (
    all_simple_paths,
    dijkstra_crisp,
    dijkstra_ranked,
    enumerate_best,
    path_aggregate,
    path_from_nodes,
    path_weight,
)


def _record(k, ok, detail):
    ACCEPTANCE_RESULTS[k] = (bool(ok), detail)
    assert ok, detail


# -- 1 -----------------------------------------------------------------------

A, B, C = Ggfn(15, 3, 0.6), Ggfn(5, 1, 0.7), Ggfn(5, 1, 0.9)

# (c, sigma, h, R_benefit, R_cost) at four decimals
ARITH_ROWS = [
    ("A", lambda: A, (15, 3, 0.6000, 14.3345, 15.6655)),
    ("B", lambda: B, (5, 1, 0.7000, 4.8451, 5.1549)),
    ("C", lambda: C, (5, 1, 0.9000, 4.9542, 5.0458)),
    ("A+B", lambda: add(A, B), (20, 4, 0.6236, 19.1796, 20.8204)),
    ("A+C", lambda: add(A, C), (20, 4, 0.6640, 19.2887, 20.7113)),
    ("2B", lambda: scale(2, B), (10, 2, 0.7000, 9.6902, 10.3098)),
    ("B+C", lambda: add(B, C), (10, 2, 0.7937, 9.7993, 10.2007)),
    ("2C", lambda: scale(2, C), (10, 2, 0.9000, 9.9085, 10.0915)),
]


def test_criterion_01_arithmetic_golden_rows():
    t0 = time.perf_counter()
    bad = []
    for name, make, want in ARITH_ROWS:
        g = make()
        got = tuple(round(v, 4) for v in (g.c, g.sigma, g.h, r_benefit(g), r_cost(g)))
        if got != want:
            bad.append(f"{name}: {got} != {want}")
    sums = [add(add(A, B), C), add(A, add(B, C)), add(add(A, C), B), fold_sum([A, B, C])]
    heights = [round(s.h, 7) for s in sums]
    if heights != [0.6710561] * 4:
        bad.append(f"associativity heights {heights}")
    # doubling by self-addition agrees with scalar multiplication
    if add(B, B) != scale(2, B) or add(C, C) != scale(2, C):
        bad.append("self-addition differs from scaling")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1.0
    _record(1, ok, f"8 rows + 4 sums at 4/7 dp, {elapsed * 1e3:.1f} ms" + ("; " + "; ".join(bad) if bad else ""))


# -- 2 -----------------------------------------------------------------------

PATH_WORDS = ("ABEG", "ABDEG", "ABDFG", "ACDEG", "ACDFG", "ACFG")
R_COST_CELLS = {
    "high": (61.14, 63.54, 62.56, 65.34, 64.37, 71.26),
    "moderate": (62.13, 64.43, 63.59, 66.50, 65.66, 72.14),
    "low": (66.18, 69.54, 70.17, 69.28, 69.91, 75.93),
    "mixed": (62.24, 65.42, 63.52, 66.56, 64.66, 71.71),
    "mixed-a": (66.16, 67.33, 64.45, 66.94, 64.06, 71.98),
    "mixed-b": (64.62, 65.65, 62.08, 69.59, 66.01, 74.22),
}
BEST_PATH = {
    "high": "ABEG",
    "moderate": "ABEG",
    "low": "ABEG",
    "mixed": "ABEG",
    "mixed-a": "ACDFG",
    "mixed-b": "ABDFG",
}


def test_criterion_02_reference_network_golden():
    t0 = time.perf_counter()
    off_cells, wrong_paths, worst = [], [], 0.0
    for regime, cells in R_COST_CELLS.items():
        net = hasuike_network(regime)
        for word, want in zip(PATH_WORDS, cells):
            got = path_aggregate(net, path_from_nodes(net, [net.node(ch) for ch in word])).score
            err = abs(got - want)
            worst = max(worst, err)
            if err > 0.01:
                off_cells.append(f"{regime}/{word} {got:.4f} vs {want:.2f}")
        path, _ = dijkstra_ranked(net, net.node("A"), net.node("G"))
        if "".join(path.labels(net)) != BEST_PATH[regime]:
            wrong_paths.append(f"{regime}: {''.join(path.labels(net))}")
    elapsed = time.perf_counter() - t0
    ok = not off_cells and not wrong_paths and elapsed < 1.0
    detail = (
        f"6/6 path selections {'ok' if not wrong_paths else 'WRONG ' + str(wrong_paths)}; "
        f"{36 - len(off_cells)}/36 score cells within 0.01 (max err {worst:.4f}); {elapsed * 1e3:.1f} ms"
    )
    if off_cells:
        detail += "; off: " + ", ".join(off_cells)
    _record(2, ok, detail)


# -- 3 -----------------------------------------------------------------------


def test_criterion_03_ranking_algebra():
    rng = np.random.default_rng(303)
    n = 1200
    c = 100.0 - rng.uniform(0, 100, (n, 2))
    s = 20.0 - rng.uniform(0, 20, (n, 2))
    h = 1.0 - rng.uniform(0, 1, (n, 2))
    ks = 100.0 - rng.uniform(0, 100, n)
    fails = {"additivity": 0, "homogeneity": 0, "dR/dc>0": 0, "dR/dsigma>=0": 0, "dR/dh<=0": 0, "dR/dkappa>=0": 0}
    worst = 0.0
    for kappa in (0.0, 0.5, 1.0, 2.0):
        rp = RiskParams(kappa)
        for i in range(n):
            a = Ggfn(c[i, 0], s[i, 0], h[i, 0])
            b = Ggfn(c[i, 1], s[i, 1], h[i, 1])
            lhs, rhs = r_cost(add(a, b), rp), r_cost(a, rp) + r_cost(b, rp)
            rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
            worst = max(worst, rel)
            fails["additivity"] += int(rel > 1e-12)
            lhs, rhs = r_cost(scale(ks[i], a), rp), ks[i] * r_cost(a, rp)
            rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
            worst = max(worst, rel)
            fails["homogeneity"] += int(rel > 1e-12)
            base = r_cost(a, rp)
            d = 1e-3
            fails["dR/dc>0"] += not r_cost(Ggfn(a.c + d, a.sigma, a.h), rp) > base
            fails["dR/dsigma>=0"] += not r_cost(Ggfn(a.c, a.sigma + d, a.h), rp) >= base
            hp = min(1.0, a.h + d)
            fails["dR/dh<=0"] += not r_cost(Ggfn(a.c, a.sigma, hp), rp) <= base
            # strictness where the penalty is active
            if kappa > 0 and a.h < 1 - d and a.sigma > 1e-6:
                fails["dR/dsigma>=0"] += not r_cost(Ggfn(a.c, a.sigma + d, a.h), rp) > base
                fails["dR/dh<=0"] += not r_cost(Ggfn(a.c, a.sigma, a.h + d), rp) < base
            fails["dR/dkappa>=0"] += not r_cost(a, RiskParams(kappa + d)) >= base
    ok = not any(fails.values())
    _record(3, ok, f"{n} GGFN pairs x 4 kappas, max rel err {worst:.2e}, failures {fails}")


# -- 4 -----------------------------------------------------------------------


def test_criterion_04_oracle_equivalence():
    rng = np.random.default_rng(404)
    t0 = time.perf_counter()
    mismatches, checked = [], 0
    for k in range(200):
        n = int(rng.integers(2, 11))
        net = random_dag(rng, n, 0.4, integer=(k % 2 == 1))
        s, t = 0, n - 1
        try:
            want_p, want_w = enumerate_best(net, s, t, RiskParams(1.0))
        except Unreachable:
            with pytest.raises(Unreachable):
                dijkstra_ranked(net, s, t)
            continue
        checked += 1
        got_p, _ = dijkstra_ranked(net, s, t, RiskParams(1.0))
        w = cost_weights(net.core, net.sigma, net.height, RiskParams(1.0)).tolist()
        if got_p != want_p or path_weight(got_p, w) != want_w:
            mismatches.append(f"dag {k} ranked")
        want_p, want_w = enumerate_best(net, s, t, "core")
        got_p, got_w = dijkstra_crisp(net, net.core, s, t)
        if got_p != want_p or got_w != want_w:
            mismatches.append(f"dag {k} core")
    elapsed = time.perf_counter() - t0
    ok = not mismatches and elapsed < 30
    _record(4, ok, f"200 DAGs ({checked} reachable, half integer-valued for ties), {len(mismatches)} mismatches, {elapsed:.2f} s")


# -- 5 -----------------------------------------------------------------------


def _moments(x):
    n = len(x)
    m = x.mean()
    v = x.var(ddof=1)
    m4 = np.mean((x - m) ** 4)
    return m, v, math.sqrt(v / n), math.sqrt(max(m4 - v * v, 0.0) / n)


def test_criterion_05_sampler_height_invariance():
    n = 100_000
    stats, outside = {}, 0
    for h, seed in ((0.4, 51), (0.8, 52)):
        x, u = sample_costs(np.full(n, 10.0), np.full(n, 2.0), np.full(n, h), np.random.default_rng(seed),
                            return_levels=True)
        half = 2.0 * np.sqrt(-2.0 * np.log(u / h))
        tol = 1e-12 * 10.0
        outside += int(np.count_nonzero((x < 10.0 - half - tol) | (x > 10.0 + half + tol)))
        stats[h] = _moments(x)
    (m1, v1, sem1, sev1), (m2, v2, sem2, sev2) = stats[0.4], stats[0.8]
    z_mean = abs(m1 - m2) / math.hypot(sem1, sem2)
    z_var = abs(v1 - v2) / math.hypot(sev1, sev2)
    ok = z_mean < 3 and z_var < 3 and outside == 0
    _record(5, ok, f"mean {m1:.4f}/{m2:.4f} (z={z_mean:.2f}), var {v1:.4f}/{v2:.4f} (z={z_var:.2f}), "
                   f"{outside} draws outside their cut")


# -- 6 -----------------------------------------------------------------------

TARGET_DEV = {"high": 5.37, "moderate": 6.50, "low": 10.08, "mixed": 5.99}


def test_criterion_06_regime_ordering():
    t0 = time.perf_counter()
    means = {}
    for name in TARGET_DEV:
        net = hasuike_network(name)
        rep = replicate(net, 0, 6, RiskParams(1.0), n_rep=10, n_iters=1000, seed=42,
                        regime=HeightRegime.named(name, eps=0.2))
        means[name] = rep.grand["objective"].mean_dev
    elapsed = time.perf_counter() - t0
    order = means["high"] < means["moderate"] < means["low"]
    bands = {k: abs(means[k] - TARGET_DEV[k]) <= 1.5 for k in TARGET_DEV}
    ok = order and all(bands.values()) and elapsed < 120
    text = ", ".join(f"{k} {means[k]:.2f}% (target {TARGET_DEV[k]:.2f})" for k in TARGET_DEV)
    _record(6, ok, f"{text}; order {'ok' if order else 'BROKEN'}; {elapsed:.1f} s")


# -- 7 -----------------------------------------------------------------------


def test_criterion_07_scaling_shape():
    net = generate_instance((1226, 2615), HeightRegime.named("mixed"), seed=42)
    t0 = time.perf_counter()
    dijkstra_ranked(net, 0, max_reachable(net, 0))
    full = time.perf_counter() - t0
    rows = run_scaling(net, parts=8, repeats=5)
    grid = [r.n_nodes for r in rows]
    edges_ok = all(
        r.m_edges == sum(1 for e in net.edges if e.src < r.n_nodes and e.dst < r.n_nodes) for r in rows
    )
    dst_ok = all(r.t_dst == max_reachable(induced_subgraph(net, r.n_nodes), 0) for r in rows)
    ns = np.array(grid, dtype=float)
    ts = np.array([r.t_median_s for r in rows])
    slope = float(np.polyfit(np.log(ns), np.log(ts), 1)[0])
    ok = grid == size_grid(1226, 8) and edges_ok and dst_ok and full < 1.0 and slope < 2.0
    _record(7, ok, f"grid {grid}, edge counts {'ok' if edges_ok else 'WRONG'}, targets {'ok' if dst_ok else 'WRONG'}, "
                   f"full solve {full * 1e3:.1f} ms, log-log time slope {slope:.2f}")


# -- 8 -----------------------------------------------------------------------


def test_criterion_08_alpha_profiles():
    rng = np.random.default_rng(808)
    levels = default_levels()
    checked, bad = 0, []
    nets = [hasuike_network(k) for k in R_COST_CELLS] + [random_dag(rng, 9, 0.5) for _ in range(60)]
    for k, net in enumerate(nets):
        t = net.n_nodes - 1
        for p in all_simple_paths(net, 0, t)[:20]:
            lab = path_aggregate(net, p)
            if len(p.edges) < 2 or lab.sigma_p <= 0:
                continue
            checked += 1
            rel = alpha_profile(net, p, levels, "lower", relative=True).costs
            if not all(b > a for a, b in zip(rel, rel[1:])):
                bad.append(f"net {k} relative lower not strictly increasing")
            ab = alpha_profile(net, p, levels, "lower").costs
            below = [c for a, c in zip(levels, ab) if a < lab.h_p]
            if not all(b > a for a, b in zip(below, below[1:])) or not all(b >= a for a, b in zip(ab, ab[1:])):
                bad.append(f"net {k} absolute lower profile not monotone")
            mid = alpha_profile(net, p, levels, "midpoint").costs
            if set(mid) != {lab.c_p}:
                bad.append(f"net {k} midpoint not constant")
    ok = not bad and checked > 100
    _record(8, ok, f"{checked} multi-edge paths; strict increase (relative levels), strict below h_P and "
                   f"non-decreasing (absolute levels), midpoint = c_P; {len(bad)} violations")


# -- 9 -----------------------------------------------------------------------


def test_criterion_09_robustness_properties():
    problems = []
    premiums = {}
    base = generate_instance((1226, 2615), HeightRegime.named("high"), seed=42)
    t = max_reachable(base, 0)
    for name in ("high", "low"):
        net = generate_instance(base, HeightRegime.named(name), seed=42)
        run = run_scenarios(net, 0, t, RiskParams(1.0), n_scenarios=50, seed=42)
        for rec in run.records:
            if not (rec.opt_cost <= rec.rank_cost and rec.opt_cost <= rec.core_cost):
                problems.append(f"{name} scenario {rec.scenario_id} optimum above a baseline")
        for key, st in run.stats.items():
            if not 0.0 <= st.stability <= 1.0:
                problems.append(f"{name} {key} stability {st.stability}")
        dr = np.array([r.dev_rank for r in run.records])
        dc = np.array([r.dev_core for r in run.records])
        prem = run.stats["rank"].reliability_premium
        if abs(prem - float(np.mean(dc - dr))) > 1e-12:
            problems.append(f"{name} premium identity off")
        if run.coincide and prem != 0.0:
            problems.append(f"{name} coincident baselines with premium {prem}")
        premiums[name] = (prem, run.coincide)
    hs = run_scenarios(hasuike_network("high"), 0, 6, n_scenarios=1000, seed=42)
    if not hs.coincide or hs.stats["rank"].reliability_premium != 0.0:
        problems.append("reference network high regime: premium not exactly 0")
    ok = not problems
    text = ", ".join(f"{k} premium {p:.3f}% ({'coincide' if c else 'differ'})" for k, (p, c) in premiums.items())
    _record(9, ok, f"synthetic 1226-node instance, 50 scenarios: {text}; reference high premium "
                   f"{hs.stats['rank'].reliability_premium:.3f}; {len(problems)} violations")


# -- 10 ----------------------------------------------------------------------


def test_criterion_10_end_to_end_determinism(tmp_path):
    src = tmp_path / "net.csv"
    src.write_text(write_edge_list(hasuike_network("mixed")))
    outs = []
    for name in ("a", "b"):
        out = tmp_path / f"{name}.csv"
        code = main(["simulate", "--input", str(src), "--source", "A", "--target", "G", "--out", str(out),
                     "--stats-out", str(tmp_path / "stats.json"), "--n-rep", "3", "--n-iters", "200",
                     "--regime", "mixed", "--seed", "7"])
        assert code == 0
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1]
    _record(10, ok, f"two simulate runs, {len(outs[0])} bytes each, identical={ok}")
