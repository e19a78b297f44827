"""Greedy bound algorithms on a process trace, plus exact oracles.

Both greedy algorithms walk the trace once, in ascending weight order, and
charge each edge according to K, the number of components it touches:

* ``kruskal_upper`` charges w when K > 1. The charged edges form a connected
  spanning subgraph, so the total bounds the minimum spanning subgraph from
  above.
* ``clique_lower`` charges w * (K - 1). That is exactly the MST of the
  multigraph obtained by replacing every hyperedge with a clique, which is at
  most (t - 1) times the minimum spanning subgraph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .core import HyperEdge
from .errors import CapacityError, CheckpointRangeError, NoSpanningSubgraphError
from .process import ProcessTrace

# Roughly the size of the full power set of 24 edges.
BRUTE_FORCE_BUDGET = 1 << 24


@dataclass
class AlgorithmResult:
    total: float
    prefix_values: list[float] = field(default_factory=list)
    checkpoints: list[int] = field(default_factory=list)
    selected_steps: list[int] = field(default_factory=list)


def _run(trace: ProcessTrace, charge: np.ndarray, checkpoints: Iterable[int]) -> AlgorithmResult:
    checkpoints = [int(c) for c in checkpoints]
    for c in checkpoints:
        if not 0 <= c <= len(trace):
            raise CheckpointRangeError(f"checkpoint {c} outside [0, {len(trace)}]")
    increments = trace.weights * charge
    partial = np.cumsum(increments)
    prefix = [0.0 if c == 0 else float(partial[c - 1]) for c in checkpoints]
    total = float(partial[-1]) if len(partial) else 0.0
    selected = (np.flatnonzero(charge > 0) + 1).tolist()
    return AlgorithmResult(total, prefix, checkpoints, selected)


def kruskal_upper(trace: ProcessTrace, checkpoints: Sequence[int] = ()) -> AlgorithmResult:
    """Sum of weights of edges that join at least two components.

    ``selected_steps`` are 1-based step indices.
    """
    return _run(trace, (trace.k > 1).astype(float), checkpoints)


def clique_lower(trace: ProcessTrace, checkpoints: Sequence[int] = ()) -> AlgorithmResult:
    """Sum of w * (K - 1); divide by t - 1 for a lower bound on the MSS."""
    return _run(trace, (trace.k - 1).astype(float), checkpoints)


@dataclass(frozen=True)
class ForestWeight:
    weight: float
    connected: bool

    def __float__(self) -> float:
        return self.weight


def clique_expand_oracle(
    edges: Sequence[tuple[Sequence[int], float]], n: int | None = None
) -> ForestWeight:
    """Pairwise Kruskal on the clique expansion of weighted hyperedges.

    Every hyperedge becomes a clique of parallel-capable pair edges carrying
    its weight; the result is the minimum spanning forest weight. ``connected``
    is false when the expansion leaves more than one component over
    ``range(n)`` (or over the touched vertices when ``n`` is omitted).
    """
    best: dict[tuple[int, int], float] = {}
    touched: set[int] = set()
    for verts, w in edges:
        touched.update(verts)
        for pair in combinations(sorted(verts), 2):
            if pair not in best or w < best[pair]:
                best[pair] = float(w)
    universe = set(range(n)) if n is not None else touched
    label = {v: v for v in universe}

    def root(v):
        while label[v] != v:
            label[v] = label[label[v]]
            v = label[v]
        return v

    weight = 0.0
    joins = 0
    for (u, v), w in sorted(best.items(), key=lambda item: item[1]):
        ru, rv = root(u), root(v)
        if ru != rv:
            label[ru] = rv
            weight += w
            joins += 1
    return ForestWeight(weight, joins == len(universe) - 1)


def hypergraph_connected(n: int, edges: Iterable[Sequence[int]]) -> bool:
    """True iff the clique substitution of ``edges`` connects all ``n`` vertices."""
    # bitmask closure keeps this independent of DisjointSetForest
    components = [1 << v for v in range(n)]
    for e in edges:
        merged = sum(1 << v for v in e)
        rest = []
        for c in components:
            if c & merged:
                merged |= c
            else:
                rest.append(c)
        components = rest + [merged]
    return len(components) == 1


def brute_force_msp(
    n: int, edges: Sequence[tuple[Sequence[int], float]], budget: int = BRUTE_FORCE_BUDGET
) -> float:
    """Exact minimum spanning subgraph weight by exhaustive search.

    An inclusion-minimal connected spanning edge set has at most n - 1 edges
    (each edge must carry an edge of some spanning tree of the clique
    expansion), and at least ceil((n - 1) / (t - 1)). Only subsets in that
    size range are enumerated, depth first over edges in ascending weight
    order, abandoning a branch once even its cheapest completion cannot beat
    the best spanning subgraph found so far.

    ``budget`` caps the number of candidate subsets.
    """
    items = sorted(((float(w), sum(1 << v for v in e), len(e)) for e, w in edges), key=lambda x: x[0])
    m = len(items)
    full = (1 << n) - 1
    if not hypergraph_connected(n, [[v for v in range(n) if mask >> v & 1] for _, mask, _ in items]):
        raise NoSpanningSubgraphError("the edge set does not connect all vertices")
    if n == 1:
        return 0.0
    t_max = max(size for _, _, size in items)
    k_min = math.ceil((n - 1) / (t_max - 1))
    k_max = min(n - 1, m)
    candidates = sum(math.comb(m, k) for k in range(k_min, k_max + 1))
    if candidates > budget:
        raise CapacityError(f"{candidates} candidate subsets of {m} edges exceeds budget {budget}")

    weights = [w for w, _, _ in items]
    masks = [mask for _, mask, _ in items]
    # cheapest[i][r]: sum of the r lightest weights among items[i:]
    cheapest = [[0.0] * (k_max + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for r in range(1, k_max + 1):
            cheapest[i][r] = weights[i] + cheapest[i + 1][r - 1] if m - i >= r else math.inf
    best = math.inf

    def spans(components: list[int]) -> bool:
        return len(components) == 1 and components[0] == full

    def search(start: int, chosen: int, weight: float, components: list[int]) -> None:
        nonlocal best
        if chosen and spans(components):
            best = min(best, weight)
            return
        if chosen == k_max:
            return
        need = max(1, k_min - chosen)
        for i in range(start, m):
            if m - i < need or weight + cheapest[i][need] >= best:
                return
            mask = masks[i]
            merged = mask
            rest = []
            for c in components:
                if c & mask:
                    merged |= c
                else:
                    rest.append(c)
            search(i + 1, chosen + 1, weight + weights[i], rest + [merged])

    search(0, 0, 0.0, [])
    return best


__all__ = [
    "AlgorithmResult",
    "ForestWeight",
    "HyperEdge",
    "brute_force_msp",
    "clique_expand_oracle",
    "clique_lower",
    "hypergraph_connected",
    "kruskal_upper",
]
