"""Color change rule, closure process and forcing-set membership tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .graph import Edge, Graph, matching_diagnostic
from .kernels import run_closure


@dataclass(frozen=True)
class ForceEvent:
    round: int
    forcer: int
    forced: int


@dataclass(frozen=True)
class ForcingTrace:
    """Ordered record of force events from a fixed reference schedule."""

    initial: frozenset[int]
    events: tuple[ForceEvent, ...]

    def replay(self, g: Graph) -> frozenset[int]:
        """Re-apply the events one by one, checking each precondition.

        Raises AssertionError if any event fires against an invalid state;
        returns the resulting black set.
        """
        black = set(self.initial)
        for ev in self.events:
            assert ev.forcer in black, f"forcer {ev.forcer} not black"
            assert ev.forced not in black, f"{ev.forced} forced twice"
            whites = [u for u in g.adjacency[ev.forcer] if u not in black]
            assert whites == [ev.forced], (
                f"forcer {ev.forcer} whites {whites}, expected [{ev.forced}]")
            black.add(ev.forced)
        return frozenset(black)


@dataclass(frozen=True)
class ClosureResult:
    final: frozenset[int]
    trace: ForcingTrace


def closure(g: Graph, initial: Iterable[int]) -> ClosureResult:
    """Closure of the initial black set under the color change rule.

    A black vertex with exactly one white neighbor forces that neighbor.
    The final set is schedule-independent; the trace follows the
    round-synchronous reference schedule (ascending-index scan per round,
    smallest-index forcer on ties, forces applied together at round end).
    """
    init = frozenset(initial)
    for v in init:
        if not (0 <= v < g.vertex_count):
            raise ValueError(f"initial vertex {v} out of range")
    black = np.zeros(g.vertex_count, dtype=np.uint8)
    for v in init:
        black[v] = 1
    final, ev_round, ev_forcer, ev_forced = run_closure(g, black)
    events = tuple(ForceEvent(int(r), int(f), int(x))
                   for r, f, x in zip(ev_round, ev_forcer, ev_forced))
    final_set = frozenset(int(v) for v in np.nonzero(final)[0])
    return ClosureResult(final_set, ForcingTrace(init, events))


def closure_sequential(g: Graph, initial: Iterable[int],
                       rng=None) -> frozenset[int]:
    """One-force-at-a-time closure, optionally in random order.

    Independent of the kernels; used as the schedule-independence oracle.
    """
    black = set(initial)
    while True:
        candidates = []
        for v in black:
            whites = [u for u in g.adjacency[v] if u not in black]
            if len(whites) == 1:
                candidates.append((v, whites[0]))
        if not candidates:
            return frozenset(black)
        if rng is None:
            v, w = min(candidates)
        else:
            v, w = candidates[rng.randrange(len(candidates))]
        black.add(w)


def is_zero_forcing_set(g: Graph, t: Iterable[int]) -> bool:
    """True iff the closure of t is the whole vertex set."""
    return len(closure(g, t).final) == g.vertex_count


def is_edge_forcing_set(g: Graph, k: Iterable[Edge],
                        diagnostics: Optional[list[str]] = None) -> bool:
    """True iff k is a matching of g whose endpoint set is zero-forcing.

    When k is not a matching, returns False; if a `diagnostics` list is
    supplied, the reason ("shares endpoint" vs "non-edge") is appended.
    """
    edges = list(k)
    diag = matching_diagnostic(g, edges)
    if diag is not None:
        if diagnostics is not None:
            diagnostics.append(diag)
        return False
    endpoints = {v for e in edges for v in e}
    return is_zero_forcing_set(g, endpoints)


def matching_endpoints(k: Iterable[Edge]) -> frozenset[int]:
    return frozenset(v for e in k for v in e)


def forces_all(g: Graph, vertices: Iterable[int]) -> bool:
    """Fast-path membership test: does the closure of `vertices` cover V?

    Skips trace construction; semantics match is_zero_forcing_set.
    """
    black = np.zeros(g.vertex_count, dtype=np.uint8)
    for v in vertices:
        black[v] = 1
    final, _, _, _ = run_closure(g, black)
    return bool(final.all())
