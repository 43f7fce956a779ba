# -*- coding: utf-8 -*-
"""
Acceptance Report
ارزیابی پذیرش: اجرای هدف‌های مونت‌کارلو و چاپ گزارش

    python scripts/acceptance_report.py            # desk scale (minutes)
    python scripts/acceptance_report.py --full     # full targets (parallel, much longer)

Exit code 0 when every check passes, 1 otherwise.
"""

import argparse
import math
import sys
from pathlib import Path

import numpy as np
from scipy import optimize

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from branching.constants import solve_constants
from branching.coupling import coupling_tv, first_layer_law
from branching.galton_watson import tail_decay_ratios
from dfa.automaton import m_step_law, random_dfa, run_word, tv_envelope, uniform_word_visit_law, walk_trajectory
from exploration.bfs import ibfs
from flags.detector import FlagParams, find_flags, validate_flag_bound
from graph_core.digraph import Digraph, Seed, generate, loop_vertex_probability, loop_vertices
from harness.config import build_config
from harness.export import render
from harness.sweep import run_sweep
from metrics.diameter import diameter, diameter_restricted, trivial_lower_bound
from stationary.bounds import validate_pimax_bound, validate_pimin_bound
from stationary.maze import build_maze, escape_probability, maze_hardness
from stationary.solvers import stationary, stationary_direct, stationary_power
from structure.scc import is_closed, scc_decompose
from utils.logging_config import setup_logging
from utils.stats import discrete_ks, proportion, within_se

MASTER_SEED = 20240101


def status(passed):
    return "🟢 PASS" if passed else "🔴 FAIL"


def closed_graphs(n, r, count, key):
    """Seeded D(n, r) instances whose D0 is closed"""
    found = []
    t = 0
    while len(found) < count and t < 20 * count:
        g = generate(n, r, Seed(MASTER_SEED).derive(key, n, t))
        dec = scc_decompose(g)
        if is_closed(g, dec):
            found.append((g, dec))
        t += 1
    return found


def check_constants(full):
    print(f"\n1️⃣  MODEL CONSTANTS:")
    worst_residual, worst_gap = 0.0, 0.0
    for r in range(2, 65):
        c = solve_constants(r)
        worst_residual = max(worst_residual, c.residual)
        worst_gap = max(worst_gap, abs(c.eta_r - c.eta_alt))
    oracle = optimize.brentq(lambda lam: 1 - lam - math.exp(-2 * lam), 0.5, 1 - 1e-12, xtol=1e-15)
    lam2 = solve_constants(2).lambda_r
    print(f"   λ_2 = {lam2:.10f} (oracle {oracle:.10f})")
    print(f"   max residual {worst_residual:.2e}, max η disagreement {worst_gap:.2e}")
    return worst_residual <= 1e-13 and worst_gap <= 1e-10 and abs(lam2 - oracle) <= 1e-6


def check_giant(full):
    print(f"\n2️⃣  GIANT COMPONENT:")
    n, seeds = (100_000, 20) if full else (20_000, 10)
    lam = solve_constants(2).lambda_r
    fractions, good = [], 0
    for t in range(seeds):
        dec = scc_decompose(generate(n, 2, Seed(MASTER_SEED).derive(2, t)))
        fractions.append(dec.d0_fraction)
        good += dec.attractive and dec.period == 1
    mean = float(np.mean(fractions))
    print(f"   n={n}: mean |D0|/n = {mean:.4f} (λ_2 = {lam:.4f}), attractive+aperiodic {good}/{seeds}")
    return abs(mean - lam) <= 0.01 and good >= math.ceil(0.95 * seeds)


def check_diameter(full):
    print(f"\n3️⃣  DIAMETER:")
    sizes, seeds = ([2 ** 12, 2 ** 14, 2 ** 16], 20) if full else ([2 ** 10, 2 ** 12], 5)
    medians, bound_ok = [], True
    for n in sizes:
        values = []
        for t in range(seeds):
            g = generate(n, 2, Seed(MASTER_SEED).derive(3, n, t))
            value = diameter(g).value
            bound_ok &= value >= trivial_lower_bound(n, 2)
            values.append(value / math.log2(n))
        medians.append(float(np.median(values)))
        print(f"   n={n}: median diam/log2 n = {medians[-1]:.3f}")
    trend = all(a >= b for a, b in zip(medians, medians[1:]))
    print(f"   target 1 + η_2 = {solve_constants(2).diameter_constant:.3f}, lower bound respected: {bound_ok}")
    bracket = 1.55 <= medians[-1] <= 2.05 if full else True
    return trend and bound_ok and bracket


def check_stationary(full):
    print(f"\n4️⃣  STATIONARY EXTREMES AND π_min BOUND:")
    sizes, seeds = ([2 ** 12, 2 ** 15], 20) if full else ([2 ** 10, 2 ** 12], 5)
    ok = True
    exp_min_means = []
    for n in sizes:
        exp_max, exp_min = [], []
        for g, dec in closed_graphs(n, 2, seeds, 4):
            profile = stationary(g, dec)
            ok &= profile.pi_max >= 1.0 / n
            d = diameter_restricted(g, dec.d0_vertices).value
            ok &= validate_pimin_bound(profile, d).holds
            exp_max.append(profile.exp_max)
            exp_min.append(profile.exp_min)
        exp_min_means.append(float(np.mean(exp_min)))
        print(f"   n={n}: -log_n π_max = {np.mean(exp_max):.3f}, -log_n π_min = {exp_min_means[-1]:.3f}")
        if full and n == sizes[-1]:
            ok &= 0.80 <= min(exp_max) and max(exp_max) <= 1.00
            ok &= 1.4 <= min(exp_min) and max(exp_min) <= 2.1
    target = solve_constants(2).diameter_constant
    if full:
        ok &= abs(exp_min_means[-1] - target) < abs(exp_min_means[0] - target)
    return ok


def check_solvers(full):
    print(f"\n5️⃣  SOLVER CORRECTNESS:")
    chain = Digraph(2, 2, [0, 1, 0, 0])
    pi = stationary_direct(chain, scc_decompose(chain)).pi
    ok = bool(np.allclose(pi, [2 / 3, 1 / 3], atol=1e-15))
    worst_residual, worst_gap = 0.0, 0.0
    for t in range(50):
        n = 50 + 9 * t
        for g, dec in closed_graphs(n, 2, 1, 5):
            direct = stationary_direct(g, dec)
            power = stationary_power(g, dec)
            worst_residual = max(worst_residual, direct.residual, power.residual)
            worst_gap = max(worst_gap, float(np.abs(direct.pi - power.pi).sum()))
    print(f"   two-state chain π = {pi.round(12).tolist()}")
    print(f"   max residual {worst_residual:.2e}, max power/direct l1 {worst_gap:.2e}")
    return ok and worst_residual <= 1e-10 and worst_gap <= 1e-8


def _exhaustive_hardness(g, maze, v):
    """Minimum single-exit count over all simple entrance-to-v paths inside the maze"""
    single = {int(u) for u, c in zip(maze.vertices, maze.inside_edges) if c == 1}
    best = math.inf

    def walk(u, seen, cost):
        nonlocal best
        if u == v:
            best = min(best, cost)
            return
        cost += u in single
        for w in set(int(x) for x in g.heads2d[u]):
            if maze.members[w] and w not in seen:
                walk(w, seen | {w}, cost)

    for u in maze.entrance:
        walk(int(u), {int(u)}, 0)
    return best


def check_mazes(full):
    print(f"\n6️⃣  MAZE BOUND:")
    n, instances = 1000, (100 if full else 20)
    k = math.ceil(math.log(math.log(n)))
    checked, violations, mismatches = 0, 0, 0
    for g, dec in closed_graphs(n, 2, instances, 6):
        profile = stationary(g, dec)
        for v in (profile.argmin, profile.argmax):
            if not ibfs(g, v, max_depth=k).layer(k).size:
                continue
            hardness = maze_hardness(g, v, k)
            report = validate_pimax_bound(profile, hardness, escape_probability(g, v, k))
            checked += 1
            violations += not report.holds
            maze = build_maze(g, v, k)
            if maze.size <= 12 and _exhaustive_hardness(g, maze, v) != hardness.hardness:
                mismatches += 1
    print(f"   k={k}: {checked} mazes, {violations} violations, {mismatches} hardness mismatches")
    return checked > 0 and violations == 0 and mismatches == 0


def check_coupling(full):
    print(f"\n7️⃣  GALTON-WATSON COUPLING:")
    trials = 100_000 if full else 10_000
    estimate = coupling_tv(10_000, 2, 2, trials, Seed(MASTER_SEED).derive(7))
    samples = [ibfs(generate(2000, 2, Seed(MASTER_SEED).derive(8, t)), 0, max_depth=1).layer(1).size
               for t in range(3000)]
    ks = discrete_ks(samples, first_layer_law(2000, 2), seed=1)
    print(f"   depth-2 shape TV = {estimate.tv:.4f} over {trials} pairs ({estimate.distinct_shapes} shapes)")
    print(f"   d_1 KS p-value = {ks.pvalue:.4f}")
    return estimate.tv <= (0.02 if full else 0.06) and ks.pvalue > 1e-3


def check_decay(full):
    print(f"\n8️⃣  TAIL DECAY RATE:")
    target = solve_constants(2).tail_rate
    frame = tail_decay_ratios(2, range(8, 15), 4, trials=1_000_000 if full else None,
                              seed=Seed(MASTER_SEED).derive(9))
    print(f"   ratios {frame['ratio'].round(4).tolist()} (target {target:.4f})")
    return bool((abs(frame['ratio'] / target - 1) <= 0.2).all())


def check_loops(full):
    print(f"\n9️⃣  LOOP VERTICES:")
    trials = 100_000 if full else 10_000
    hits = sum(bool(loop_vertices(generate(50, 2, Seed(MASTER_SEED).derive(10, t)))) for t in range(trials))
    freq, se = proportion(hits, trials)
    p = loop_vertex_probability(50, 2)
    print(f"   frequency {freq:.5f} ± {se:.5f}, formula {p:.5f}")
    return within_se(freq, p, se)


def check_flags(full):
    print(f"\n🔟 FLAGS:")
    n, seeds = (2 ** 16, 20) if full else (2 ** 12, 5)
    params = FlagParams.for_graph(n, 2, 0.2, threshold=math.ceil(math.log(n)),
                                  size_cap=math.ceil(math.log(n) ** 3))
    with_flags, all_in_d0, ok = 0, 0, True
    for g, dec in closed_graphs(n, 2, seeds, 11):
        flags = find_flags(g, params, dec)
        if not flags:
            continue
        with_flags += 1
        all_in_d0 += all(report.in_d0 for report in flags)
        profile = stationary(g, dec)
        for report in flags:
            ok &= maze_hardness(g, report.vertex, report.k1).hardness == report.k1
            ok &= validate_flag_bound(profile, report, g, params.k_star).holds
    print(f"   k*={params.k_star}, threshold={params.threshold}: flags in {with_flags}/{seeds} graphs, "
          f"all in D0 in {all_in_d0}")
    return ok and with_flags > seeds / 2 and all_in_d0 >= 0.95 * with_flags


def check_dfa(full):
    print(f"\n1️⃣1️⃣ RANDOM DFA:")
    d = random_dfa(100, 2, Seed(MASTER_SEED).derive(12))
    symbols, states = walk_trajectory(d, 50, seed=1)
    identical = run_word(d, symbols)[0] == states[-1]
    exact = m_step_law(d, 50)
    trials = 100_000 if full else 20_000
    empirical = uniform_word_visit_law(d, 50, trials, seed=2)
    tv = 0.5 * float(np.abs(empirical - exact).sum())
    envelope = tv_envelope(exact, trials)
    print(f"   trajectory replay identical: {identical}; TV {tv:.4f} (envelope {envelope:.4f})")
    return identical and tv <= envelope


def check_reproducibility(full):
    print(f"\n1️⃣2️⃣ REPRODUCIBILITY:")
    cfg = build_config({'n': '64,128', 'r': '2', 'trials': '3', 'seed': str(MASTER_SEED)},
                       {'measurements': 'scc,diam,stationary,gw', 'gw_trials': 200})
    identical = render(run_sweep(cfg)) == render(run_sweep(cfg))
    print(f"   byte-identical rerun: {identical}")
    return identical


CHECKS = (
    check_constants, check_giant, check_diameter, check_stationary, check_solvers, check_mazes,
    check_coupling, check_decay, check_loops, check_flags, check_dfa, check_reproducibility,
)


def analyze_project(full=False):
    print("=" * 70)
    print(f"🎯 ACCEPTANCE REPORT ({'full' if full else 'desk'} scale)")
    print("=" * 70)

    results = []
    for check in CHECKS:
        passed = bool(check(full))
        print(f"   📈 {status(passed)}")
        results.append(passed)

    print("\n" + "=" * 70)
    score = 100.0 * sum(results) / len(results)
    print(f"📊 {sum(results)}/{len(results)} checks passed ({score:.0f}%)")
    if all(results):
        print("🎉 همه معیارهای پذیرش برقرارند")
    else:
        print("💪 برخی معیارها برقرار نیستند")
    print("=" * 70)
    return all(results)


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Monte Carlo acceptance report')
    parser.add_argument('--full', action='store_true', help='run the full-size targets')
    parser.add_argument('--log-level', default='WARNING')
    args = parser.parse_args()
    setup_logging(args.log_level)
    sys.exit(0 if analyze_project(args.full) else 1)
