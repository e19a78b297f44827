"""Canonical hyperedges and an instrumented union-find forest."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import EmptyUniverseError, MalformedEdgeError, VertexBoundsError


@dataclass(frozen=True, slots=True)
class HyperEdge:
    """A t-subset of ``range(n)`` stored as a strictly increasing tuple."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, i: int) -> int:
        return self.vertices[i]

    @property
    def t(self) -> int:
        return len(self.vertices)


def make_edge(raw_vertices: Sequence[int], n: int, t: int | None = None) -> HyperEdge:
    """Validate ``raw_vertices`` and return the canonical sorted edge.

    ``t`` defaults to ``len(raw_vertices)``; pass it to also check arity.
    """
    verts = tuple(sorted(int(v) for v in raw_vertices))
    if t is not None and len(verts) != t:
        raise MalformedEdgeError(f"expected {t} vertices, got {len(verts)}")
    if len(verts) < 2:
        raise MalformedEdgeError("an edge needs at least 2 vertices")
    for v in verts:
        if not 0 <= v < n:
            raise VertexBoundsError(f"vertex {v} outside [0, {n})")
    for a, b in zip(verts, verts[1:]):
        if a == b:
            raise MalformedEdgeError(f"duplicate vertex {a} in {list(raw_vertices)}")
    return HyperEdge(verts)


class DisjointSetForest:
    """Union-find over ``range(n)`` with union by size and path compression.

    Besides the usual find/union this keeps ``component_count`` (the number
    of components C(G)) and ``largest`` (the size of the biggest component),
    and merges whole hyperedges at once, reporting how many distinct
    components the edge touched.

    Ties between equal-size roots go to the smaller root index, so a fixed
    sequence of merges always produces the same forest.
    """

    __slots__ = ("n", "parent", "size", "component_count", "largest")

    def __init__(self, n: int):
        if n < 1:
            raise EmptyUniverseError("a forest needs at least one vertex")
        self.n = n
        self.parent = list(range(n))
        self.size = [1] * n
        self.component_count = n
        self.largest = 1

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def roots(self, edge: Sequence[int]) -> set[int]:
        find = self.find
        return {find(v) for v in edge}

    def count_distinct(self, edge: Sequence[int]) -> int:
        """Number of distinct components containing the vertices of ``edge``."""
        return len(self.roots(edge))

    def merge(self, edge: Sequence[int]) -> int:
        """Put every vertex of ``edge`` into one component.

        Returns K, the number of distinct components touched before merging;
        ``component_count`` drops by exactly ``K - 1``.
        """
        roots = self.roots(edge)
        k = len(roots)
        if k == 1:
            return 1
        size = self.size
        # largest first, smaller index on ties
        ordered = sorted(roots, key=lambda r: (-size[r], r))
        head = ordered[0]
        total = size[head]
        for r in ordered[1:]:
            self.parent[r] = head
            total += size[r]
        size[head] = total
        self.component_count -= k - 1
        if total > self.largest:
            self.largest = total
        return k

    def component_sizes(self) -> list[int]:
        return [self.size[v] for v in range(self.n) if self.find(v) == v]


def dsf_new(n: int) -> DisjointSetForest:
    return DisjointSetForest(n)


def dsf_count_distinct(forest: DisjointSetForest, edge: Sequence[int]) -> int:
    return forest.count_distinct(edge)


def dsf_merge(forest: DisjointSetForest, edge: Sequence[int]) -> int:
    return forest.merge(edge)
