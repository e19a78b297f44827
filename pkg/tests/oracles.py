"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

import itertools
import math

import numpy as np


class LabelArray:
    """Union-find by relabelling: merge rewrites every label of the absorbed sets."""

    def __init__(self, n):
        self.label = list(range(n))

    def count_distinct(self, edge):
        return len({self.label[v] for v in edge})

    def merge(self, edge):
        labels = {self.label[v] for v in edge}
        target = min(labels)
        self.label = [target if x in labels else x for x in self.label]
        return len(labels)

    @property
    def component_count(self):
        return len(set(self.label))


def exact_msp_dp(n, weighted_edges):
    """Minimum spanning subgraph by shortest path over covered-vertex sets.

    Any connected edge set can be listed so that every prefix is connected,
    so the cheapest connected set covering S is reached by growing from one
    edge, adding edges that touch the current cover.
    """
    masks = [(sum(1 << v for v in e), float(w)) for e, w in weighted_edges]
    full = (1 << n) - 1
    best = {0: 0.0}
    # Bellman-Ford style relaxation; covers only grow so this terminates.
    changed = True
    while changed:
        changed = False
        for state in list(best):
            for mask, w in masks:
                if state and not state & mask:
                    continue
                nxt = state | mask
                if nxt == state:
                    continue
                cand = best[state] + w
                if cand < best.get(nxt, math.inf) - 1e-15:
                    best[nxt] = cand
                    changed = True
    return best.get(full, math.inf)


def connected_by_labels(n, edges):
    uf = LabelArray(n)
    for e in edges:
        uf.merge(e)
    return uf.component_count == 1


def enumerate_msp(n, weighted_edges):
    """Plain power-set enumeration; only for a dozen edges or so."""
    best = math.inf
    items = list(weighted_edges)
    for k in range(1, len(items) + 1):
        for subset in itertools.combinations(items, k):
            covered = set().union(*(set(e) for e, _ in subset))
            if len(covered) != n:
                continue
            if connected_by_labels(n, [e for e, _ in subset]):
                best = min(best, sum(w for _, w in subset))
    return best


def materialized_process(n, t, m, rng):
    """Every edge of the complete hypergraph with an iid uniform weight, sorted."""
    edges = list(itertools.combinations(range(n), t))
    weights = rng.random(len(edges))
    order = np.argsort(weights, kind="stable")[:m]
    return [edges[i] for i in order], weights[order]


def expected_k_minus_one(t, beta):
    """E[K - 1] when each of the t vertices independently sits in the giant
    with probability beta and otherwise in its own small component."""
    total = 0.0
    for pattern in itertools.product((0, 1), repeat=t):
        inside = sum(pattern)
        prob = beta**inside * (1 - beta) ** (t - inside)
        components = (t - inside) + (1 if inside else 0)
        total += prob * (components - 1)
    return total


def prob_k_above_one(t, beta):
    total = 0.0
    for pattern in itertools.product((0, 1), repeat=t):
        inside = sum(pattern)
        prob = beta**inside * (1 - beta) ** (t - inside)
        components = (t - inside) + (1 if inside else 0)
        total += prob * (components > 1)
    return total
