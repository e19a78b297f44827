"""The ascending-weight random hypergraph process.

Because edge weights are iid, listing the edges of the complete t-uniform
hypergraph by increasing weight gives a uniformly random edge order paired
with the order statistics of N = C(n, t) weights. Both halves are drawn here
without ever materialising all N edges: distinct edges by rejection against
a seen-set, weights by the sequential minimum-spacing recursion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import DisjointSetForest, HyperEdge
from .errors import DistributionError, DomainError, ExhaustedUniverseError

POWER = "power"
EXPONENTIAL = "exponential"
EMPIRICAL = "empirical-inverse-cdf"


@dataclass(frozen=True)
class WeightDistribution:
    """Edge weight law with scale ``a`` such that x / F(x)^(1/(t-1)) -> a.

    Use the ``power``, ``exponential`` and ``empirical`` constructors rather
    than calling this directly.
    """

    kind: str
    a: float = 1.0
    t: int | None = None
    rate: float | None = None
    u_grid: tuple[float, ...] = field(default=(), repr=False)
    x_grid: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if not self.a > 0:
            raise DistributionError(f"scale a must be positive, got {self.a}")
        if self.kind == POWER:
            if self.t is None or self.t < 2:
                raise DistributionError("power distribution needs shape t >= 2")
        elif self.kind == EXPONENTIAL:
            if self.rate is None or not self.rate > 0:
                raise DistributionError("exponential distribution needs rate > 0")
            if self.t not in (None, 2):
                raise DistributionError(
                    "exponential weights only satisfy the scaling condition for t = 2"
                )
        elif self.kind == EMPIRICAL:
            u, x = np.asarray(self.u_grid), np.asarray(self.x_grid)
            if len(u) < 2 or len(u) != len(x):
                raise DistributionError("inverse-CDF table needs >= 2 matching points")
            if u[0] != 0.0 or u[-1] != 1.0 or np.any(np.diff(u) <= 0):
                raise DistributionError("u grid must increase strictly from 0 to 1")
            if np.any(np.diff(x) < 0) or x[0] < 0:
                raise DistributionError("tabulated quantiles must be non-negative and sorted")
        else:
            raise DistributionError(f"unknown distribution kind {self.kind!r}")

    @classmethod
    def power(cls, t: int, a: float = 1.0) -> "WeightDistribution":
        """F(x) = (x/a)^(t-1) on [0, a]."""
        return cls(POWER, a=float(a), t=int(t))

    @classmethod
    def exponential(cls, rate: float = 1.0) -> "WeightDistribution":
        return cls(EXPONENTIAL, a=1.0 / rate, t=2, rate=float(rate))

    @classmethod
    def empirical(
        cls, u_grid: Sequence[float], x_grid: Sequence[float], a: float = 1.0
    ) -> "WeightDistribution":
        """Piecewise-linear inverse CDF through ``(u_grid, x_grid)``.

        ``a`` is recorded as given; the caller is responsible for the table
        actually having that small-x scaling.
        """
        return cls(
            EMPIRICAL,
            a=float(a),
            u_grid=tuple(map(float, u_grid)),
            x_grid=tuple(map(float, x_grid)),
        )

    def check_uniformity(self, t: int) -> None:
        if self.kind == POWER and self.t != t:
            raise DistributionError(f"power shape t={self.t} does not match hypergraph t={t}")
        if self.kind == EXPONENTIAL and t != 2:
            raise DistributionError("exponential weights are only admissible for t = 2")

    def upper_support(self) -> float:
        if self.kind == POWER:
            return self.a
        if self.kind == EXPONENTIAL:
            return math.inf
        return self.x_grid[-1]


def inverse_cdf(dist: WeightDistribution, u):
    """F^{-1}(u) for scalar or array ``u`` in [0, 1]."""
    arr = np.asarray(u, dtype=float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError("u must lie in [0, 1]")
    if dist.kind == POWER:
        out = dist.a * arr ** (1.0 / (dist.t - 1))
    elif dist.kind == EXPONENTIAL:
        with np.errstate(divide="ignore"):
            out = -np.log1p(-arr) / dist.rate
    else:
        out = np.interp(arr, dist.u_grid, dist.x_grid)
    return float(out) if np.ndim(u) == 0 else out


def as_rng(seed) -> np.random.Generator:
    """Accept a Generator, a SeedSequence or anything SeedSequence takes."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence(seed))


def trial_seed(seed: int, trial: int) -> np.random.SeedSequence:
    """Independent substream for one Monte Carlo trial."""
    return np.random.SeedSequence([int(seed), int(trial)])


def default_m_max(n: int, t: int) -> int:
    return max(1, min(math.comb(n, t), math.ceil(2 * n * math.log(n))))


def _floyd_subsets(rng: np.random.Generator, n: int, t: int, size: int) -> np.ndarray:
    # Floyd's algorithm, vectorised over rows: each row is a uniform t-subset.
    out = np.empty((size, t), dtype=np.int64)
    for k in range(t):
        j = n - t + k
        r = rng.integers(0, j + 1, size=size)
        if k:
            taken = (out[:, :k] == r[:, None]).any(axis=1)
            r = np.where(taken, j, r)
        out[:, k] = r
    out.sort(axis=1)
    return out


def sample_edge_array(
    n: int, t: int, m: int, rng: np.random.Generator
) -> tuple[np.ndarray, int]:
    """Draw ``m`` distinct uniform t-subsets of ``range(n)`` in random order.

    Returns the ``(m, t)`` array of sorted rows and the number of candidate
    subsets drawn (equal to ``m`` plus the rejections).
    """
    total = math.comb(n, t)
    if m > total:
        raise ExhaustedUniverseError(f"asked for {m} distinct edges, only C({n},{t})={total} exist")
    if m == 0:
        return np.empty((0, t), dtype=np.int64), 0
    if 2 * m > total:
        everything = np.array(list(itertools.combinations(range(n), t)), dtype=np.int64)
        order = rng.permutation(total)[:m]
        return everything[order], m

    seen: set[tuple[int, ...]] = set()
    rows: list[tuple[int, ...]] = []
    draws = 0
    while len(rows) < m:
        need = m - len(rows)
        batch = _floyd_subsets(rng, n, t, need + need // 8 + 8)
        for row in map(tuple, batch.tolist()):
            draws += 1
            if row in seen:
                continue
            seen.add(row)
            rows.append(row)
            if len(rows) == m:
                break
    return np.array(rows, dtype=np.int64).reshape(m, t), draws


def sample_edge_stream(n: int, t: int, m_max: int, seed=0) -> list[HyperEdge]:
    edges, _ = sample_edge_array(n, t, m_max, as_rng(seed))
    return [HyperEdge(tuple(row)) for row in edges.tolist()]


def sorted_weights(N: int, m_max: int, dist: WeightDistribution, seed=0) -> np.ndarray:
    """First ``m_max`` order statistics of ``N`` iid draws from ``dist``.

    Uniform order statistics come from the recursion
    1 - U_(i) = (1 - U_(i-1)) * V_i^(1/(N-i+1)), run in log space so the
    smallest values keep full relative precision.
    """
    if m_max > N:
        raise ExhaustedUniverseError(f"m_max={m_max} exceeds N={N}")
    rng = as_rng(seed)
    v = 1.0 - rng.random(m_max)  # in (0, 1]
    remaining = float(N) - np.arange(m_max, dtype=float)
    log_survival = np.cumsum(np.log(v) / remaining)
    u = -np.expm1(log_survival)
    return inverse_cdf(dist, np.clip(u, 0.0, 1.0))


@dataclass(frozen=True)
class ProcessConfig:
    n: int
    t: int = 3
    m_max: int | None = None
    distribution: WeightDistribution | None = None
    seed: object = 0

    def __post_init__(self):
        if self.t < 2:
            raise DomainError("t must be at least 2")
        if self.n < self.t:
            raise DomainError(f"n={self.n} must be at least t={self.t}")
        if self.m_max is None:
            object.__setattr__(self, "m_max", default_m_max(self.n, self.t))
        if not 1 <= self.m_max <= self.N:
            raise ExhaustedUniverseError(f"m_max={self.m_max} outside [1, C(n,t)={self.N}]")
        if self.distribution is None:
            object.__setattr__(self, "distribution", WeightDistribution.power(self.t))
        self.distribution.check_uniformity(self.t)

    @property
    def N(self) -> int:
        return math.comb(self.n, self.t)


@dataclass
class ProcessTrace:
    """One realisation of the process, step i stored at index i - 1.

    ``k[i]`` is the number of components the edge touched in the previous
    hypergraph; ``components_after`` and ``largest_after`` describe the
    hypergraph once the edge is in.
    """

    n: int
    t: int
    edges: np.ndarray
    weights: np.ndarray
    k: np.ndarray
    components_after: np.ndarray
    largest_after: np.ndarray
    draws: int = 0

    def __len__(self) -> int:
        return len(self.weights)

    def edge(self, index: int) -> HyperEdge:
        return HyperEdge(tuple(int(v) for v in self.edges[index]))

    @property
    def connected(self) -> bool:
        return len(self) > 0 and int(self.components_after[-1]) == 1

    @property
    def connect_step(self) -> int | None:
        """Smallest step count after which the hypergraph is connected."""
        hits = np.flatnonzero(self.components_after == 1)
        return int(hits[0]) + 1 if len(hits) else None

    def components_at(self, m: int) -> int:
        return self.n if m == 0 else int(self.components_after[m - 1])

    def largest_at(self, m: int) -> int:
        return 1 if m == 0 else int(self.largest_after[m - 1])

    def weighted_edges(self) -> list[tuple[HyperEdge, float]]:
        return [(self.edge(i), float(w)) for i, w in enumerate(self.weights)]


def trace_from_edges(n: int, edges: np.ndarray, weights: np.ndarray, draws: int = 0) -> ProcessTrace:
    """Run a fresh forest over already-ordered edges and record the statistics."""
    edges = np.asarray(edges, dtype=np.int64)
    m = len(edges)
    t = edges.shape[1] if m else 0
    forest = DisjointSetForest(n)
    merge = forest.merge
    k = np.empty(m, dtype=np.int64)
    comps = np.empty(m, dtype=np.int64)
    largest = np.empty(m, dtype=np.int64)
    for i, row in enumerate(edges.tolist()):
        k[i] = merge(row)
        comps[i] = forest.component_count
        largest[i] = forest.largest
    return ProcessTrace(n, t, edges, np.asarray(weights, dtype=float), k, comps, largest, draws)


def generate_trace(config: ProcessConfig) -> ProcessTrace:
    edge_seq, weight_seq = fresh_seed_sequence(config.seed).spawn(2)
    edges, draws = sample_edge_array(config.n, config.t, config.m_max, as_rng(edge_seq))
    weights = sorted_weights(config.N, config.m_max, config.distribution, weight_seq)
    return trace_from_edges(config.n, edges, weights, draws)


def fresh_seed_sequence(seed) -> np.random.SeedSequence:
    """A SeedSequence with no children spawned yet, so spawning is repeatable."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(seed.entropy, spawn_key=seed.spawn_key)
    return np.random.SeedSequence(seed)
