"""Monte Carlo experiments comparing simulated traces with the limit theory.

Every experiment is a pure function of its ExperimentConfig: trial ``i``
draws from the substream ``(seed, i)`` and results are reduced in trial
order, so the worker count never changes the output.
"""

from __future__ import annotations

import configparser
import csv
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from statistics import fmean, stdev
from typing import Any, Callable, Sequence

import numpy as np

from . import theory
from .algorithms import brute_force_msp, clique_expand_oracle, clique_lower, kruskal_upper
from .core import DisjointSetForest
from .errors import DomainError, VerificationError
from .process import (
    ProcessConfig,
    WeightDistribution,
    as_rng,
    default_m_max,
    generate_trace,
    sample_edge_array,
    trial_seed,
)

log = logging.getLogger(__name__)

KINDS = ("mst", "prefix-curve", "giant", "decay", "projection", "sandwich")
MST_COLUMNS = ["trial", "n", "t", "a", "m", "A1", "A2", "lower", "connected", "seed"]


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str = "mst"
    n: int = 1000
    t: int = 3
    trials: int = 10
    seed: int = 0
    c_grid: tuple[float, ...] = ()
    m_grid: tuple[int, ...] = ()
    dist: str = "power"
    a: float = 1.0
    m_max: int | None = None
    out: str | None = None
    workers: int = 1
    sigmas: float = 3.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise DomainError("trials must be at least 1")
        if self.t < 2 or self.n < self.t:
            raise DomainError(f"need 2 <= t <= n, got t={self.t}, n={self.n}")
        for name in ("c_grid", "m_grid"):
            grid = getattr(self, name)
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise DomainError(f"{name} must be strictly increasing")
        if any(c < 0 for c in self.c_grid) or any(m < 0 for m in self.m_grid):
            raise DomainError("grid values must be non-negative")
        self.distribution()

    def distribution(self) -> WeightDistribution:
        if self.dist == "power":
            return WeightDistribution.power(self.t, self.a)
        if self.dist in ("exp", "exponential"):
            if self.t != 2:
                raise DomainError("exponential weights are only admissible for t = 2")
            return WeightDistribution.exponential(1.0 / self.a)
        raise DomainError(f"unknown distribution {self.dist!r}")

    def steps(self, c: float) -> int:
        return math.ceil(c * self.n - 1e-9)

    def process(self, trial: int, m_max: int | None = None) -> ProcessConfig:
        return ProcessConfig(
            n=self.n,
            t=self.t,
            m_max=m_max if m_max is not None else self.m_max,
            distribution=self.distribution(),
            seed=trial_seed(self.seed, trial),
        )


@dataclass
class ExperimentResult:
    kind: str
    columns: list[str]
    rows: list[dict[str, Any]]
    summary: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.summary.get("passed", True))


def _map_trials(fn: Callable[[ExperimentConfig, int], Any], config: ExperimentConfig) -> list:
    if config.workers > 1 and config.trials > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(fn, [config] * config.trials, range(config.trials)))
    return [fn(config, i) for i in range(config.trials)]


def _sd(values: Sequence[float]) -> float:
    return stdev(values) if len(values) > 1 else 0.0


# ---------------------------------------------------------------------------
# mst

def _mst_trial(config: ExperimentConfig, trial: int) -> dict[str, Any]:
    started = time.perf_counter()
    trace = generate_trace(config.process(trial))
    a1 = kruskal_upper(trace).total
    a2 = clique_lower(trace).total
    return {
        "trial": trial,
        "n": config.n,
        "t": config.t,
        "a": config.a,
        "m": len(trace),
        "A1": a1,
        "A2": a2,
        "lower": a2 / (config.t - 1),
        "connected": trace.connected,
        "seed": config.seed,
        "wall_time": time.perf_counter() - started,
    }


def run_mst_experiment(config: ExperimentConfig) -> ExperimentResult:
    """A1, A2 and A2/(t-1) per trial on full-length traces, against a*L_t, a*U_t."""
    started = time.perf_counter()
    rows = _map_trials(_mst_trial, config)
    done = [r for r in rows if r["connected"]] or rows
    incomplete = sum(not r["connected"] for r in rows)
    consts = theory.bound_constants(config.t)
    a = config.a
    summary = {
        "trials": len(rows),
        "incomplete": incomplete,
        "mean_A1": fmean(r["A1"] for r in done),
        "sd_A1": _sd([r["A1"] for r in done]),
        "mean_A2": fmean(r["A2"] for r in done),
        "sd_A2": _sd([r["A2"] for r in done]),
        "mean_lower": fmean(r["lower"] for r in done),
        "sd_lower": _sd([r["lower"] for r in done]),
        "L_t": consts.L_t,
        "U_t": consts.U_t,
        "aL_t": a * consts.L_t,
        "aU_t": a * consts.U_t,
        "L_t_over_a": consts.L_t / a,
        "U_t_over_a": consts.U_t / a,
        "zeta3_over_a": theory.ZETA3 / a if config.t == 2 else None,
    }
    summary["in_bracket"] = (
        summary["aL_t"] - 0.1 <= summary["mean_lower"] and summary["mean_A1"] <= summary["aU_t"] + 0.1
    )
    if incomplete / len(rows) >= 0.01:
        log.warning("%d of %d traces were still disconnected at m_max", incomplete, len(rows))
    return ExperimentResult("mst", MST_COLUMNS, rows, summary, time.perf_counter() - started)


# ---------------------------------------------------------------------------
# prefix curve

PREFIX_COLUMNS = [
    "c", "n", "t", "m", "mean_A1", "sd_A1", "mean_A2", "sd_A2",
    "pred_A1", "pred_A2_lemma", "pred_A2_section3", "rel_err_A1", "better_f2",
]


def _prefix_trial(config: ExperimentConfig, trial: int) -> tuple[list[float], list[float]]:
    checkpoints = [config.steps(c) for c in config.c_grid]
    last = max(checkpoints)
    if last == 0:
        return [0.0] * len(checkpoints), [0.0] * len(checkpoints)
    trace = generate_trace(config.process(trial, m_max=last))
    return (
        kruskal_upper(trace, checkpoints).prefix_values,
        clique_lower(trace, checkpoints).prefix_values,
    )


def run_prefix_curve(config: ExperimentConfig) -> ExperimentResult:
    """Running totals A_c / a at each c, against both forms of the prefix integral."""
    started = time.perf_counter()
    results = _map_trials(_prefix_trial, config)
    t = config.t
    rows = []
    for j, c in enumerate(config.c_grid):
        a1 = [r[0][j] / config.a for r in results]
        a2 = [r[1][j] / config.a for r in results]
        pred1 = theory.prefix_integral(1, t, c)
        lemma = theory.prefix_integral(2, t, c, variant=theory.F2_LEMMA)
        section3 = theory.prefix_integral(2, t, c, variant=theory.F2_SECTION3)
        mean2 = fmean(a2)
        if abs(lemma - section3) <= 1e-12 * max(1.0, abs(lemma)):
            better = "tie"
        else:
            better = theory.F2_LEMMA if abs(mean2 - lemma) < abs(mean2 - section3) else theory.F2_SECTION3
        rows.append({
            "c": c,
            "n": config.n,
            "t": t,
            "m": config.steps(c),
            "mean_A1": fmean(a1),
            "sd_A1": _sd(a1),
            "mean_A2": mean2,
            "sd_A2": _sd(a2),
            "pred_A1": pred1,
            "pred_A2_lemma": lemma,
            "pred_A2_section3": section3,
            "rel_err_A1": abs(fmean(a1) - pred1) / pred1 if pred1 else 0.0,
            "better_f2": better,
        })
    verdicts = [r["better_f2"] for r in rows if r["better_f2"] != "tie"]
    summary = {
        "max_rel_err_A1": max((r["rel_err_A1"] for r in rows), default=0.0),
        "f2_votes_lemma": verdicts.count(theory.F2_LEMMA),
        "f2_votes_section3": verdicts.count(theory.F2_SECTION3),
    }
    return ExperimentResult("prefix-curve", PREFIX_COLUMNS, rows, summary, time.perf_counter() - started)


# ---------------------------------------------------------------------------
# giant component

GIANT_COLUMNS = ["c", "n", "t", "m", "mean_fraction", "sd_fraction", "beta", "residual", "abs_diff"]


def _giant_trial(config: ExperimentConfig, trial: int) -> list[float]:
    checkpoints = [min(config.steps(c), math.comb(config.n, config.t)) for c in config.c_grid]
    last = max(checkpoints)
    if last == 0:
        return [1.0 / config.n] * len(checkpoints)
    trace = generate_trace(config.process(trial, m_max=last))
    return [trace.largest_at(m) / config.n for m in checkpoints]


def run_giant_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Largest component fraction at m = ceil(cn) against beta(c)."""
    started = time.perf_counter()
    results = _map_trials(_giant_trial, config)
    rows = []
    for j, c in enumerate(config.c_grid):
        fractions = [r[j] for r in results]
        sol = theory.beta_of_c(config.t, c) if c > 0 else theory.BetaSolution(config.t, 0.0, 0.0, 0.0)
        mean = fmean(fractions)
        rows.append({
            "c": c,
            "n": config.n,
            "t": config.t,
            "m": config.steps(c),
            "mean_fraction": mean,
            "sd_fraction": _sd(fractions),
            "beta": sol.beta,
            "residual": sol.residual,
            "abs_diff": abs(mean - sol.beta),
        })
    summary = {
        "max_abs_diff": max((r["abs_diff"] for r in rows), default=0.0),
        "max_residual": max((r["residual"] for r in rows), default=0.0),
    }
    return ExperimentResult("giant", GIANT_COLUMNS, rows, summary, time.perf_counter() - started)


# ---------------------------------------------------------------------------
# component decay

DECAY_COLUMNS = [
    "c", "n", "t", "m", "mean_fraction", "sd_fraction", "surrogate", "allowance", "bound", "share_within",
]


def _decay_trial(config: ExperimentConfig, trial: int) -> tuple[list[float], bool]:
    checkpoints = [config.steps(c) for c in config.c_grid]
    last = max(checkpoints)
    if last == 0:
        return [1.0] * len(checkpoints), True
    trace = generate_trace(config.process(trial, m_max=last))
    monotone = bool(np.all(np.diff(trace.components_after) <= 0)) and trace.components_after[0] <= config.n
    return [trace.components_at(m) / config.n for m in checkpoints], monotone


def run_decay_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Normalised component counts C/n against the surrogate bound.

    The allowance n^(-1/5) stands in for the additive n^(4/5) term. The
    summary also carries a least-squares slope of ln(mean C/n - 1/n) over
    c >= 1, the 1/n being the giant's own share of the count.
    """
    started = time.perf_counter()
    results = _map_trials(_decay_trial, config)
    allowance = config.n ** -0.2
    rows = []
    for j, c in enumerate(config.c_grid):
        fractions = [r[0][j] for r in results]
        surrogate = theory.decay_surrogate(c) if c > 0 else 1.0
        bound = surrogate + allowance
        rows.append({
            "c": c,
            "n": config.n,
            "t": config.t,
            "m": config.steps(c),
            "mean_fraction": fmean(fractions),
            "sd_fraction": _sd(fractions),
            "surrogate": surrogate,
            "allowance": allowance,
            "bound": bound,
            "share_within": sum(f <= bound for f in fractions) / len(fractions),
        })
    fit = [(r["c"], r["mean_fraction"] - 1.0 / config.n) for r in rows if r["c"] >= 1]
    fit = [(c, math.log(y)) for c, y in fit if y > 0]
    slope = float(np.polyfit(*zip(*fit), 1)[0]) if len(fit) >= 2 else float("nan")
    summary = {
        "min_share_within": min((r["share_within"] for r in rows), default=1.0),
        "monotone_all": all(r[1] for r in results),
        "log_slope": slope,
    }
    summary["passed"] = summary["min_share_within"] >= 0.95 and summary["monotone_all"]
    return ExperimentResult("decay", DECAY_COLUMNS, rows, summary, time.perf_counter() - started)


# ---------------------------------------------------------------------------
# projection

PROJECTION_COLUMNS = [
    "trial", "n", "t", "m", "graph_edges", "distinct_pairs", "C_hypergraph", "C_graph", "degenerate", "dominates",
]


def _count_components(n: int, rows) -> int:
    forest = DisjointSetForest(n)
    for row in rows:
        forest.merge(row)
    return forest.component_count


def _projection_trial(config: ExperimentConfig, trial: int) -> list[dict[str, Any]]:
    grid = config.m_grid or (config.steps(2.0),)
    out = []
    for j, m in enumerate(grid):
        rng = as_rng(np.random.SeedSequence([config.seed, trial, j]))
        edges, _ = sample_edge_array(config.n, config.t, m, rng)
        c_hyper = _count_components(config.n, edges.tolist())
        # two distinct uniform positions = first two entries of a random shuffle
        first = rng.integers(0, config.t, size=m)
        second = rng.integers(0, config.t - 1, size=m)
        second = second + (second >= first)
        idx = np.arange(m)
        pairs = np.sort(np.stack([edges[idx, first], edges[idx, second]], axis=1), axis=1)
        distinct = np.unique(pairs, axis=0) if m else pairs
        half = m // 2
        degenerate = len(distinct) < half
        keep = distinct if degenerate else distinct[np.sort(rng.choice(len(distinct), half, replace=False))]
        c_graph = _count_components(config.n, keep.tolist())
        out.append({
            "trial": trial,
            "n": config.n,
            "t": config.t,
            "m": m,
            "graph_edges": len(keep),
            "distinct_pairs": len(distinct),
            "C_hypergraph": c_hyper,
            "C_graph": c_graph,
            "degenerate": degenerate,
            "dominates": c_graph >= c_hyper,
        })
    return out


def run_projection_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Project each hyperedge to two random vertices and keep floor(m/2) distinct pairs;
    the resulting graph can only have more components than the hypergraph."""
    started = time.perf_counter()
    rows = [row for trial_rows in _map_trials(_projection_trial, config) for row in trial_rows]
    summary = {
        "trials": config.trials,
        "dominance_violations": sum(not r["dominates"] for r in rows),
        "degenerate_rate": sum(r["degenerate"] for r in rows) / len(rows),
    }
    summary["passed"] = summary["dominance_violations"] == 0
    return ExperimentResult("projection", PROJECTION_COLUMNS, rows, summary, time.perf_counter() - started)


# ---------------------------------------------------------------------------
# sandwich

SANDWICH_COLUMNS = ["trial", "n", "t", "m", "lower", "exact", "A1", "A2", "oracle", "ok", "seed"]
ORACLE_TOL = 1e-9
ORDER_RTOL = 1e-12


def _sandwich_trial(config: ExperimentConfig, trial: int) -> dict[str, Any]:
    trace = generate_trace(config.process(trial))
    t = config.t
    a1 = kruskal_upper(trace).total
    a2 = clique_lower(trace).total
    weighted = [(row, float(w)) for row, w in zip(trace.edges.tolist(), trace.weights)]
    exact = brute_force_msp(config.n, weighted)
    oracle = clique_expand_oracle(weighted, config.n).weight
    lower = a2 / (t - 1)
    slack = ORDER_RTOL * max(1.0, a1)
    ok = lower <= exact + slack and exact <= a1 + slack and abs(a2 - oracle) <= ORACLE_TOL
    return {
        "trial": trial, "n": config.n, "t": t, "m": len(trace), "lower": lower, "exact": exact,
        "A1": a1, "A2": a2, "oracle": oracle, "ok": ok, "seed": config.seed,
    }


def run_sandwich_experiment(config: ExperimentConfig, strict: bool = True) -> ExperimentResult:
    """Check A2/(t-1) <= exact MSS <= A1 and A2 == clique-expansion MST on every trial.

    With ``strict`` the first violation raises VerificationError naming the
    seed and trial.
    """
    started = time.perf_counter()
    rows = _map_trials(_sandwich_trial, config)
    bad = [r for r in rows if not r["ok"]]
    if bad and strict:
        r = bad[0]
        raise VerificationError(
            f"sandwich violated at seed={config.seed} trial={r['trial']}: "
            f"lower={r['lower']!r} exact={r['exact']!r} A1={r['A1']!r} A2={r['A2']!r} oracle={r['oracle']!r}"
        )
    summary = {"trials": len(rows), "passes": len(rows) - len(bad), "passed": not bad}
    return ExperimentResult("sandwich", SANDWICH_COLUMNS, rows, summary, time.perf_counter() - started)


RUNNERS = {
    "mst": run_mst_experiment,
    "prefix-curve": run_prefix_curve,
    "giant": run_giant_experiment,
    "decay": run_decay_experiment,
    "projection": run_projection_experiment,
    "sandwich": run_sandwich_experiment,
}


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    return RUNNERS[config.kind](config)


# ---------------------------------------------------------------------------
# output and config files

def _format(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


def write_table(rows: Sequence[dict[str, Any]], path, columns: Sequence[str] | None = None) -> Path:
    """Write ``rows`` as comma-separated values with a header row.

    ``columns`` fixes the column order (defaulting to the first row's keys);
    keys not listed are dropped. Floats carry 12 significant digits.
    """
    path = Path(path)
    if columns is None:
        columns = list(rows[0]) if rows else []
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format(row.get(col)) for col in columns])
    except OSError as exc:
        raise OSError(f"cannot write table to {path}: {exc}") from exc
    return path


def write_result(result: ExperimentResult, path) -> Path:
    return write_table(result.rows, path, result.columns)


def parse_number(text: str) -> float:
    """Decimal or simple fraction such as ``1/6``."""
    return float(Fraction(text.strip()))


def parse_grid(text: str) -> tuple[float, ...]:
    return tuple(parse_number(part) for part in str(text).split(",") if part.strip())


_CONFIG_TYPES: dict[str, Callable[[str], Any]] = {
    "kind": str,
    "n": int,
    "t": int,
    "trials": int,
    "seed": int,
    "c_grid": parse_grid,
    "m_grid": lambda s: tuple(int(v) for v in parse_grid(s)),
    "dist": str,
    "a": parse_number,
    "m_max": int,
    "out": str,
    "workers": int,
    "sigmas": parse_number,
}


def load_config_file(path) -> dict[str, Any]:
    """Read flat ``key = value`` lines (``#`` comments allowed) into typed values."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    text = Path(path).read_text(encoding="utf-8")
    parser.read_string("[experiment]\n" + text, source=str(path))
    values = {}
    for key, raw in parser["experiment"].items():
        key = key.replace("-", "_")
        if key == "c":
            key = "c_grid"
        if key not in _CONFIG_TYPES:
            raise DomainError(f"unknown config key {key!r} in {path}")
        values[key] = _CONFIG_TYPES[key](raw)
    return values


def with_overrides(config: ExperimentConfig, **values) -> ExperimentConfig:
    return replace(config, **{k: v for k, v in values.items() if v is not None})


__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "default_m_max",
    "load_config_file",
    "run_decay_experiment",
    "run_experiment",
    "run_giant_experiment",
    "run_mst_experiment",
    "run_prefix_curve",
    "run_projection_experiment",
    "run_sandwich_experiment",
    "write_result",
    "write_table",
]
