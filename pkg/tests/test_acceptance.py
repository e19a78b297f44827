"""Acceptance checks, one test per criterion, each with its runtime budget."""

import math
import time

import numpy as np
from scipy import stats

from hypermst import theory
from hypermst.harness import (
    ExperimentConfig,
    run_decay_experiment,
    run_experiment,
    run_giant_experiment,
    run_mst_experiment,
    run_prefix_curve,
    run_projection_experiment,
    run_sandwich_experiment,
    write_result,
)
from hypermst.process import WeightDistribution, as_rng, sorted_weights

ZETA3 = 1.2020569


def test_01_graph_case_mean_weight(criterion):
    started = time.perf_counter()
    result = run_mst_experiment(ExperimentConfig(kind="mst", n=300, t=2, trials=50, a=1.0, seed=0))
    elapsed = time.perf_counter() - started
    mean = result.summary["mean_A1"]
    rel = abs(mean - ZETA3) / ZETA3
    ok = rel <= 0.05 and elapsed < 30
    criterion(1, "t=2 mean A1 vs zeta(3)", ok, f"mean={mean:.5f} rel_err={rel:.4f} (<=0.05) time={elapsed:.1f}s")
    assert ok


def test_02_graph_case_constants(criterion):
    started = time.perf_counter()
    k = theory.bound_constants(2)
    elapsed = time.perf_counter() - started
    errs = (abs(k.L_t - ZETA3 / 2), abs(k.U_t - ZETA3), abs(k.gap_ratio - 2))
    ok = max(errs) <= 1e-6 and elapsed < 1
    criterion(2, "t=2 constants", ok, f"L2={k.L_t:.9f} U2={k.U_t:.9f} gap={k.gap_ratio:.9f} "
              f"max_err={max(errs):.1e} time={elapsed:.2f}s")
    assert ok


def test_03_sandwich_and_oracle(criterion):
    started = time.perf_counter()
    result = run_sandwich_experiment(ExperimentConfig(kind="sandwich", n=7, t=3, trials=200, seed=0), strict=False)
    elapsed = time.perf_counter() - started
    sandwiched = sum(r["lower"] <= r["exact"] + 1e-12 and r["exact"] <= r["A1"] + 1e-12 for r in result.rows)
    oracle = sum(abs(r["A2"] - r["oracle"]) <= 1e-9 for r in result.rows)
    ok = sandwiched == 200 and oracle == 200 and elapsed < 60
    criterion(3, "sandwich n=7 t=3", ok, f"sandwich {sandwiched}/200 oracle {oracle}/200 time={elapsed:.1f}s")
    assert ok


def test_04_giant_fraction(criterion):
    started = time.perf_counter()
    result = run_giant_experiment(
        ExperimentConfig(kind="giant", n=20000, t=3, trials=10, c_grid=(0.3, 0.5, 1.0), seed=0)
    )
    elapsed = time.perf_counter() - started
    diff, resid = result.summary["max_abs_diff"], result.summary["max_residual"]
    ok = diff <= 0.03 and resid <= 1e-10 and elapsed < 120
    criterion(4, "giant fraction vs beta(c)", ok, f"max|S/n-beta|={diff:.4f} (<=0.03) "
              f"max_residual={resid:.1e} time={elapsed:.1f}s")
    assert ok


def test_05_prefix_curves(criterion):
    started = time.perf_counter()
    graph = run_prefix_curve(ExperimentConfig(kind="prefix-curve", n=5000, t=2, trials=10, c_grid=(0.25,), seed=0))
    hyper = run_prefix_curve(
        ExperimentConfig(kind="prefix-curve", n=5000, t=3, trials=10, c_grid=(0.5, 1.0, 2.0), seed=0)
    )
    elapsed = time.perf_counter() - started
    graph_rel = abs(graph.rows[0]["mean_A1"] - 0.0625) / 0.0625
    hyper_rel = hyper.summary["max_rel_err_A1"]
    votes = ",".join(r["better_f2"] for r in hyper.rows)
    ok = graph_rel <= 0.05 and hyper_rel <= 0.05 and elapsed < 180
    criterion(5, "prefix curves", ok, f"t=2 rel_err={graph_rel:.4f} t=3 max_rel_err={hyper_rel:.4f} (<=0.05) "
              f"better_f2=[{votes}] time={elapsed:.1f}s")
    assert ok


def test_06_component_decay(criterion):
    started = time.perf_counter()
    result = run_decay_experiment(
        ExperimentConfig(kind="decay", n=10_000, t=3, trials=20, c_grid=(1, 2, 3, 4, 5, 6), seed=0)
    )
    elapsed = time.perf_counter() - started
    share, monotone = result.summary["min_share_within"], result.summary["monotone_all"]
    ok = share >= 0.95 and monotone and elapsed < 120
    criterion(6, "component decay", ok, f"min share within bound={share:.2f} (>=0.95) monotone={monotone} "
              f"log_slope={result.summary['log_slope']:.2f} time={elapsed:.1f}s")
    assert ok


def test_07_projection_dominance(criterion):
    started = time.perf_counter()
    n = 10_000
    result = run_projection_experiment(
        ExperimentConfig(kind="projection", n=n, t=3, trials=20, m_grid=(2 * n,), seed=0)
    )
    elapsed = time.perf_counter() - started
    held = sum(r["dominates"] for r in result.rows)
    ok = held == 20 and elapsed < 60
    criterion(7, "projection dominance", ok, f"{held}/20 trials C(graph)>=C(hypergraph) time={elapsed:.1f}s")
    assert ok


def test_08_order_statistics(criterion):
    started = time.perf_counter()
    N, m, reps = 10, 10, 10_000
    dist = WeightDistribution.power(2)
    rng = as_rng(2718)
    ours = np.array([sorted_weights(N, m, dist, rng) for _ in range(reps)])
    full = np.sort(as_rng(3141).random((reps, N)), axis=1)[:, :m]
    critical = 1.6276 * math.sqrt(2 / reps)
    worst = max(stats.ks_2samp(ours[:, j], full[:, j]).statistic for j in range(m))
    elapsed = time.perf_counter() - started
    ok = worst < critical and elapsed < 30
    criterion(8, "order statistics vs full sort", ok, f"max KS D={worst:.4f} (<{critical:.4f}) time={elapsed:.1f}s")
    assert ok


def test_09_gap_ratio_table(criterion):
    started = time.perf_counter()
    table = theory.gap_table(range(2, 11))
    elapsed = time.perf_counter() - started
    ratios = [k.gap_ratio for k in table]
    monotone = all(b >= a for a, b in zip(ratios, ratios[1:]))
    scaled = max(k.gap_ratio / math.log(k.t + 1) for k in table)
    ok = monotone and scaled <= 3 and elapsed < 10
    criterion(9, "gap ratio table", ok, f"monotone={monotone} max gap/ln(t+1)={scaled:.3f} (<=3) "
              f"time={elapsed:.1f}s")
    assert ok


def test_10_determinism(criterion, tmp_path):
    configs = [
        ExperimentConfig(kind="mst", n=200, t=3, trials=3, seed=7),
        ExperimentConfig(kind="prefix-curve", n=500, t=3, trials=3, c_grid=(0.5, 1.0), seed=7),
        ExperimentConfig(kind="giant", n=500, t=3, trials=3, c_grid=(0.3, 1.0), seed=7),
        ExperimentConfig(kind="decay", n=500, t=3, trials=3, c_grid=(1, 2), seed=7),
        ExperimentConfig(kind="projection", n=500, t=3, trials=3, m_grid=(1000,), seed=7),
        ExperimentConfig(kind="sandwich", n=7, t=3, trials=10, seed=7),
    ]
    same = 0
    for config in configs:
        first = write_result(run_experiment(config), tmp_path / f"{config.kind}-1.csv").read_bytes()
        second = write_result(run_experiment(config), tmp_path / f"{config.kind}-2.csv").read_bytes()
        same += first == second
    ok = same == len(configs)
    criterion(10, "determinism", ok, f"{same}/{len(configs)} experiment kinds byte-identical on rerun")
    assert ok
