"""Canonical immutable graph representation and matching enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

import numpy as np

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised when a graph or edge set violates a structural precondition."""


def normalize_edge(u: int, v: int) -> Edge:
    """Return the (min, max) orientation of an edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with dense integer vertices.

    Vertices are 0..vertex_count-1.  The edge list is sorted with u < v in
    every pair, and the position of an edge in that list is its canonical
    identity (used by certificates and enumeration order).  Display labels,
    when present, are a separate layer on top of the dense indices.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    labels: Optional[Mapping[int, str]] = field(default=None, compare=False)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, indices), both int32."""
        indptr = np.zeros(self.vertex_count + 1, dtype=np.int32)
        for i, nbrs in enumerate(self.adjacency):
            indptr[i + 1] = indptr[i] + len(nbrs)
        indices = np.empty(indptr[-1], dtype=np.int32)
        for i, nbrs in enumerate(self.adjacency):
            indices[indptr[i]:indptr[i + 1]] = nbrs
        return indptr, indices

    @cached_property
    def directed_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Both orientations of every edge as (src, dst) int32 arrays."""
        if not self.edges:
            z = np.empty(0, dtype=np.int32)
            return z, z
        e = np.asarray(self.edges, dtype=np.int32)
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        return src, dst

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def min_degree(self) -> int:
        if self.vertex_count == 0:
            return 0
        return min(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edge_index

    def vertex_label(self, v: int) -> str:
        if self.labels is not None and v in self.labels:
            return self.labels[v]
        return str(v)

    def to_json_dict(self) -> dict:
        return {"n": self.vertex_count, "edges": [list(e) for e in self.edges]}


def from_edges(vertex_count: int,
               edges: Iterable[tuple[int, int]],
               labels: Optional[Mapping[int, str]] = None) -> Graph:
    """Build a canonical Graph, rejecting loops, duplicates and bad indices.

    Input edge order and orientation do not affect the result.
    """
    if vertex_count < 0:
        raise GraphError(f"vertex_count must be non-negative, got {vertex_count}")
    seen: set[Edge] = set()
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphError(f"edge ({u},{v}) has endpoint out of range [0,{vertex_count})")
        e = normalize_edge(u, v)
        if e in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
    return Graph(vertex_count, tuple(sorted(seen)), labels)


def matching_diagnostic(g: Graph, edges: Iterable[tuple[int, int]]) -> Optional[str]:
    """Why `edges` is not a matching of g, or None if it is one.

    Distinguishes a non-edge from a shared endpoint.
    """
    used: set[int] = set()
    for u, v in edges:
        e = normalize_edge(u, v)
        if e not in g.edge_index:
            return f"non-edge: {e} is not an edge of the graph"
        if e[0] in used or e[1] in used:
            shared = e[0] if e[0] in used else e[1]
            return f"shares endpoint: vertex {shared} appears in two edges"
        used.update(e)
    return None


def is_matching(g: Graph, edges: Iterable[tuple[int, int]]) -> bool:
    """True iff every pair is an edge of g and no vertex is used twice."""
    return matching_diagnostic(g, list(edges)) is None


def matchings_of_size(g: Graph, k: int) -> Iterator[frozenset[Edge]]:
    """Yield every k-edge matching exactly once, lexicographic in edge ids.

    The stream is empty when k exceeds the maximum matching size.  Two runs
    produce identical sequences.
    """
    if k < 0:
        raise GraphError(f"matching size must be non-negative, got {k}")
    m = g.edge_count
    edges = g.edges
    if k == 0:
        yield frozenset()
        return

    chosen: list[Edge] = []
    used: set[int] = set()

    def extend(start: int, need: int) -> Iterator[frozenset[Edge]]:
        # prune: not enough edges left to reach the target size
        if m - start < need:
            return
        for i in range(start, m):
            u, v = edges[i]
            if u in used or v in used:
                continue
            chosen.append(edges[i])
            used.add(u)
            used.add(v)
            if need == 1:
                yield frozenset(chosen)
            else:
                yield from extend(i + 1, need - 1)
            chosen.pop()
            used.discard(u)
            used.discard(v)

    yield from extend(0, k)


def all_matchings(g: Graph) -> Iterator[tuple[int, frozenset[Edge]]]:
    """Yield (size, matching) for every size from 1 upward until none exist."""
    k = 1
    while True:
        empty = True
        for match in matchings_of_size(g, k):
            empty = False
            yield k, match
        if empty:
            return
        k += 1


def maximum_matching_size(g: Graph) -> int:
    """Largest k for which a k-edge matching exists (greedy-free, exact)."""
    best = 0
    k = 1
    while True:
        found = next(matchings_of_size(g, k), None)
        if found is None:
            return best
        best = k
        k += 1
