"""Zero-forcing -> edge-forcing hardness gadget.

From a base graph G, the lifted graph has a primed twin x' for every
vertex x (dense index x + |V|).  Its edges fall into three classes:

* E  - the original edges (x, y),
* E' - the twin matching (x, x'),
* E''- for every edge (x, y): (y, x') and (x, y').

Zero-forcing sets of G and edge-forcing sets of the lifted graph then
correspond exactly, preserving cardinality in both directions.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from .engine import is_edge_forcing_set
from .graph import Edge, Graph, from_edges, matching_diagnostic, normalize_edge
from .solver import min_edge_forcing, min_zero_forcing

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionMap:
    base: Graph
    lifted: Graph
    edge_classes: dict[Edge, str]  # canonical lifted edge -> "E" | "E'" | "E''"

    def prime(self, x: int) -> int:
        return x + self.base.vertex_count

    def unprime(self, v: int) -> int:
        n = self.base.vertex_count
        return v - n if v >= n else v


def build_gbar(g: Graph) -> ReductionMap:
    """Construct the lifted graph with 2|V| vertices and 3|E| + |V| edges."""
    n = g.vertex_count
    classes: dict[Edge, str] = {}
    edges: list[Edge] = []
    for u, v in g.edges:
        e = normalize_edge(u, v)
        classes[e] = "E"
        edges.append(e)
    for x in range(n):
        e = normalize_edge(x, x + n)
        classes[e] = "E'"
        edges.append(e)
    for x, y in g.edges:
        for a, b in ((y, x + n), (x, y + n)):
            e = normalize_edge(a, b)
            classes[e] = "E''"
            edges.append(e)
    lifted = from_edges(2 * n, edges)
    return ReductionMap(base=g, lifted=lifted, edge_classes=classes)


def lift_zero_forcing(m: ReductionMap, s: set[int] | frozenset[int]) -> frozenset[Edge]:
    """S -> {(x, x')}: a matching of the lifted graph; edge-forcing iff S is
    zero-forcing on the base graph."""
    for x in s:
        if not (0 <= x < m.base.vertex_count):
            raise ValueError(f"vertex {x} not in the base graph")
    return frozenset(normalize_edge(x, m.prime(x)) for x in s)


def normalize_and_project(m: ReductionMap, x: set[Edge] | frozenset[Edge]
                          ) -> frozenset[int]:
    """Replace E/E'' edges by twin edges, then project to base vertices.

    Each non-twin edge offers two candidate base vertices: an E edge
    (a, b) can stand in for a or b, an E'' edge (u, v') for v or u.  No
    fixed per-edge choice preserves the forcing property on every input,
    so when the input is edge-forcing the candidates are searched (in a
    deterministic order, primed endpoint first for E'' edges and lower
    index first for E edges) for a same-size twin matching that still
    forces the lifted graph.  Non-forcing inputs take the first choice
    for every edge, with any collision de-duplicated and logged.
    """
    edges = sorted(normalize_edge(u, v) for u, v in x)
    diag = matching_diagnostic(m.lifted, edges)
    if diag is not None:
        raise ValueError(f"input is not a matching of the lifted graph: {diag}")
    n = m.base.vertex_count
    candidates: list[tuple[int, ...]] = []
    for e in edges:
        cls = m.edge_classes[e]
        if cls == "E'":
            candidates.append((min(e),))
        elif cls == "E''":
            u = min(v for v in e if v < n)
            v = max(e) - n
            candidates.append((v, u))
        else:
            a, b = e
            candidates.append((a, b))
    if is_edge_forcing_set(m.lifted, edges):
        for combo in itertools.product(*candidates):
            chosen = set(combo)
            if len(chosen) < len(edges):
                continue
            twins = [normalize_edge(v, m.prime(v)) for v in chosen]
            if is_edge_forcing_set(m.lifted, twins):
                return frozenset(chosen)
        raise ValueError("no twin replacement preserves forcing")
    chosen = {c[0] for c in candidates}
    if len(chosen) < len(edges):
        log.warning("replacement collapsed %d edges to %d (non-minimal input)",
                    len(edges), len(chosen))
    return frozenset(chosen)


def verify_equivalence(g: Graph, max_vertices: int = 24,
                       max_edges: int = 100) -> bool:
    """Exact check that the base zero-forcing number equals the lifted
    edge-forcing number."""
    zf, _ = min_zero_forcing(g, max_vertices=max_vertices)
    verdict = min_edge_forcing(build_gbar(g).lifted, max_edges=max_edges)
    return verdict.exists and verdict.value == zf
