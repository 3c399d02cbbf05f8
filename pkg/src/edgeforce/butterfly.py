"""Butterfly network BF(r): construction, edge classes, binding structure.

BF(r) has vertices (row, level) with row in [0, 2^r) and level in [0, r].
Between levels i and i+1 every row w carries a straight edge (same row) and
a cross edge to row w XOR 2^i.  The dense index of (row, level) is
level * 2^r + row; the display label is "[row,level]".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .graph import Edge, Graph, GraphError, from_edges, normalize_edge

MAX_DIMENSION = 16  # memory guard: BF(16) already has >1M vertices


class ButterflyError(ValueError):
    pass


def vertex_index(r: int, row: int, level: int) -> int:
    return level * (1 << r) + row


def vertex_coord(r: int, index: int) -> tuple[int, int]:
    """Inverse of vertex_index: dense index -> (row, level)."""
    rows = 1 << r
    return index % rows, index // rows


def coord_label(row: int, level: int) -> str:
    return f"[{row},{level}]"


def build_butterfly(r: int) -> Graph:
    """BF(r) with (r+1)*2^r vertices and r*2^(r+1) edges."""
    if r < 1:
        raise ButterflyError(f"butterfly dimension must be >= 1, got {r}")
    if r > MAX_DIMENSION:
        raise ButterflyError(f"butterfly dimension {r} exceeds guard {MAX_DIMENSION}")
    rows = 1 << r
    edges = []
    for i in range(r):
        bit = 1 << i
        for w in range(rows):
            a = vertex_index(r, w, i)
            edges.append((a, vertex_index(r, w, i + 1)))
            edges.append((a, vertex_index(r, w ^ bit, i + 1)))
    labels = {vertex_index(r, w, i): coord_label(w, i)
              for i in range(r + 1) for w in range(rows)}
    return from_edges((r + 1) * rows, edges, labels=labels)


def edge_kind(r: int, a: tuple[int, int], b: tuple[int, int]) -> Literal["straight", "cross"]:
    """Classify a BF(r) edge given as two (row, level) coordinates."""
    (w1, i1), (w2, i2) = a, b
    if i1 > i2:
        (w1, i1), (w2, i2) = (w2, i2), (w1, i1)
    if i2 != i1 + 1:
        raise ButterflyError(
            f"not an edge: levels {i1} and {i2} are not consecutive")
    if not (0 <= w1 < (1 << r) and 0 <= w2 < (1 << r) and 0 <= i1 and i2 <= r):
        raise ButterflyError(f"coordinate out of range for BF({r})")
    if w1 == w2:
        return "straight"
    if w1 ^ w2 == 1 << i1:
        return "cross"
    raise ButterflyError(
        f"not an edge: rows {w1} and {w2} differ in bit weight {w1 ^ w2}, "
        f"but the level pair ({i1},{i2}) flips weight {1 << i1}")


@dataclass(frozen=True)
class Diamond:
    """A binding 4-cycle of BF(r).

    Vertical diamonds sit on levels (0, 1); horizontal on (r-1, r).  The two
    degree-2 vertices (level 0, resp. level r) are the binding pair; both
    are adjacent to the same two degree-4 vertices of the opposite level.
    """

    kind: Literal["vertical", "horizontal"]
    levels: tuple[int, int]
    rows: tuple[int, int]
    vertices: tuple[int, int, int, int]  # dense indices

    def cycle_edges(self) -> tuple[Edge, ...]:
        a, b, c, d = self.vertices
        # (row lo, lvl lo), (row hi, lvl lo), (row lo, lvl hi), (row hi, lvl hi)
        return tuple(sorted((normalize_edge(a, c), normalize_edge(a, d),
                             normalize_edge(b, c), normalize_edge(b, d))))


def binding_diamonds(r: int) -> list[Diamond]:
    """All 2^r binding diamonds: 2^(r-1) vertical plus 2^(r-1) horizontal."""
    if r < 2:
        raise ButterflyError(
            f"binding diamonds need r >= 2 (BF(1) is a single 4-cycle), got {r}")
    out: list[Diamond] = []
    half = 1 << (r - 1)
    for w in range(half):
        lo, hi = 2 * w, 2 * w + 1
        out.append(Diamond(
            "vertical", (0, 1), (lo, hi),
            (vertex_index(r, lo, 0), vertex_index(r, hi, 0),
             vertex_index(r, lo, 1), vertex_index(r, hi, 1))))
    for w in range(half):
        lo, hi = w, w + half
        out.append(Diamond(
            "horizontal", (r - 1, r), (lo, hi),
            (vertex_index(r, lo, r), vertex_index(r, hi, r),
             vertex_index(r, lo, r - 1), vertex_index(r, hi, r - 1))))
    return out


def mirror_vertex(r: int, index: int) -> int:
    """Mirror image: flip the weight-1 bit of the row."""
    row, level = vertex_coord(r, index)
    return vertex_index(r, row ^ 1, level)


@dataclass(frozen=True)
class SubCopy:
    """One of the four BF(r-2) copies induced on levels 0..r-2.

    `iso` maps each dense BF(r) vertex of the copy to the dense index of the
    corresponding BF(r-2) vertex (row mod 2^(r-2), same level).
    """

    high_bits: int  # the two top row bits shared by the copy, in {0,1,2,3}
    vertices: frozenset[int]
    iso: dict[int, int]


def decompose_subcopies(r: int) -> list[SubCopy]:
    """Partition levels 0..r-2 into 4 vertex sets, each inducing BF(r-2)."""
    if r < 3:
        raise ButterflyError(f"decomposition needs r >= 3, got {r}")
    quarter = 1 << (r - 2)
    copies = []
    for hb in range(4):
        iso = {}
        for level in range(r - 1):
            for low in range(quarter):
                row = hb * quarter + low
                iso[vertex_index(r, row, level)] = vertex_index(r - 2, low, level)
        copies.append(SubCopy(hb, frozenset(iso), iso))
    return copies


def induced_subgraph(g: Graph, vertices: frozenset[int]) -> Graph:
    """Induced subgraph with vertices relabeled by sorted order."""
    order = sorted(vertices)
    remap = {v: i for i, v in enumerate(order)}
    edges = [(remap[u], remap[v]) for u, v in g.edges
             if u in vertices and v in vertices]
    return from_edges(len(order), edges)
