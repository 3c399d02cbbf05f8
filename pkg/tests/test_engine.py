import random
import subprocess
import sys

import numpy as np
import pytest

from edgeforce.butterfly import build_butterfly
from edgeforce.constructions import construct_edge_forcing
from edgeforce.engine import (closure, closure_sequential, forces_all,
                              is_edge_forcing_set, is_zero_forcing_set,
                              matching_endpoints)
from edgeforce.kernels import _closure_numpy, run_closure

from conftest import complete_graph, cycle_graph, path_graph, random_graph


class TestClosure:
    def test_path_propagates(self):
        result = closure(path_graph(4), {0})
        assert result.final == frozenset(range(4))
        assert [(e.round, e.forcer, e.forced) for e in result.trace.events] == [
            (1, 0, 1), (2, 1, 2), (3, 2, 3)]

    def test_cycle_blocked(self):
        result = closure(cycle_graph(4), {0})
        assert result.final == frozenset({0})
        assert result.trace.events == ()

    def test_bf3_construction_forces_everything(self):
        g = build_butterfly(3)
        endpoints = matching_endpoints(construct_edge_forcing(3))
        assert closure(g, endpoints).final == frozenset(range(32))

    def test_empty_initial(self):
        assert closure(path_graph(3), set()).final == frozenset()

    def test_isolated_vertex_never_forced(self):
        from edgeforce.graph import from_edges
        g = from_edges(3, [(0, 1)])
        assert closure(g, {0}).final == frozenset({0, 1})

    def test_out_of_range_initial(self):
        with pytest.raises(ValueError):
            closure(path_graph(3), {5})

    def test_both_endpoints_can_force_same_round(self):
        # an edge may force two vertices at once
        result = closure(path_graph(4), {1, 2})
        rounds = {e.forced: e.round for e in result.trace.events}
        assert rounds == {0: 1, 3: 1}


class TestMembership:
    def test_p5_endpoint(self):
        assert is_zero_forcing_set(path_graph(5), {0})

    def test_c4_single_fails(self):
        assert not is_zero_forcing_set(cycle_graph(4), {0})

    def test_c4_adjacent_pair(self):
        assert is_zero_forcing_set(cycle_graph(4), {0, 1})

    def test_efs_c4_edge(self):
        assert is_edge_forcing_set(cycle_graph(4), [(0, 1)])

    def test_efs_k4_edge_fails(self):
        assert not is_edge_forcing_set(complete_graph(4), [(0, 1)])

    def test_efs_diagnostics(self):
        diag = []
        assert not is_edge_forcing_set(path_graph(4), [(0, 1), (1, 2)],
                                       diagnostics=diag)
        assert "shares endpoint" in diag[0]
        diag = []
        assert not is_edge_forcing_set(path_graph(4), [(0, 2)],
                                       diagnostics=diag)
        assert "non-edge" in diag[0]

    def test_forces_all_matches_membership(self):
        rng = random.Random(11)
        for _ in range(30):
            g = random_graph(rng, rng.randint(1, 8), 0.4)
            s = {v for v in range(g.vertex_count) if rng.random() < 0.4}
            assert forces_all(g, s) == is_zero_forcing_set(g, s)


class TestScheduleProperties:
    def test_schedule_independence(self):
        rng = random.Random(123)
        for _ in range(100):
            g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.1, 0.9))
            s = {v for v in range(g.vertex_count) if rng.random() < 0.4}
            reference = closure(g, s).final
            assert closure_sequential(g, s, rng=rng) == reference

    def test_monotonicity(self):
        rng = random.Random(7)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 9), 0.4)
            small = {v for v in range(g.vertex_count) if rng.random() < 0.3}
            big = small | {v for v in range(g.vertex_count)
                           if rng.random() < 0.3}
            assert closure(g, small).final <= closure(g, big).final

    def test_idempotence(self):
        rng = random.Random(8)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 9), 0.4)
            s = {v for v in range(g.vertex_count) if rng.random() < 0.3}
            once = closure(g, s).final
            assert closure(g, once).final == once

    def test_trace_replay(self):
        rng = random.Random(9)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 9), 0.4)
            s = frozenset(v for v in range(g.vertex_count)
                          if rng.random() < 0.3)
            result = closure(g, s)
            assert result.trace.replay(g) == result.final


class TestBackends:
    def test_numpy_fallback_agrees(self):
        rng = random.Random(21)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 12), rng.uniform(0.1, 0.8))
            black = np.zeros(g.vertex_count, dtype=np.uint8)
            for v in range(g.vertex_count):
                if rng.random() < 0.4:
                    black[v] = 1
            fa, ra, fca, xa = run_closure(g, black.copy())
            indptr, indices = g.csr
            src, dst = g.directed_pairs
            fb, rb, fcb, xb = _closure_numpy(indptr, indices, black.copy(),
                                             src, dst)
            assert np.array_equal(fa, fb)
            assert np.array_equal(ra, rb)
            assert np.array_equal(fca, fcb)
            assert np.array_equal(xa, xb)

    def test_forced_numpy_env_flag(self):
        code = (
            "import os; os.environ['EDGEFORCE_FORCE_NUMPY']='1';"
            "from edgeforce import kernels, from_edges, closure;"
            "assert kernels.backend_name() == 'numpy';"
            "g = from_edges(4, [(0,1),(1,2),(2,3)]);"
            "assert closure(g, {0}).final == frozenset(range(4))"
        )
        subprocess.run([sys.executable, "-c", code], check=True)
