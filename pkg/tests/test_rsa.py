import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eonsim.rsa import (GUARD_SLOTS, AllocationConflict, Path, RsaError,
                        SlotBlock, SpectrumState, first_fit, shortest_path,
                        slots_required)
from eonsim.topology import Link, SpectrumGrid, Topology, builtin_nsfnet

from .oracles import bfs_distance, exhaustive_first_fit, replay_occupancy


def make(n, edges, lengths=None):
    lengths = lengths or {}
    return Topology(n, [Link(a, b, lengths.get((a, b), 1.0)) for a, b in edges])


class TestSlotsRequired:
    def test_exact_multiple(self):
        assert slots_required(50, 12.5) == 4

    def test_rounds_up(self):
        assert slots_required(51, 12.5) == 5
        assert slots_required(250, 12.5) == 20

    def test_bad_inputs(self):
        with pytest.raises(RsaError):
            slots_required(0, 12.5)
        with pytest.raises(RsaError):
            slots_required(50, 0)

    @given(st.floats(min_value=50, max_value=250, allow_nan=False))
    def test_demand_range_bounds(self, b):
        assert 4 <= slots_required(b, 12.5) <= 20


class TestShortestPath:
    def test_direct_edge(self):
        t = make(3, [(1, 2), (2, 3), (1, 3)])
        assert shortest_path(t, 1, 2).nodes == (1, 2)

    def test_square_lexicographic_tie(self):
        t = make(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        assert shortest_path(t, 1, 3).nodes == (1, 2, 3)

    def test_same_node_error(self):
        t = make(2, [(1, 2)])
        with pytest.raises(RsaError):
            shortest_path(t, 1, 1)

    def test_nsfnet_hops_match_bfs(self):
        t = builtin_nsfnet()
        adj = {n: t.neighbors(n) for n in t.nodes()}
        for s in t.nodes():
            for d in t.nodes():
                if s != d:
                    assert shortest_path(t, s, d).hops == bfs_distance(adj, s, d)

    def test_hop_symmetry(self):
        t = builtin_nsfnet()
        for s, d in [(1, 13), (2, 14), (7, 11), (3, 9)]:
            assert shortest_path(t, s, d).hops == shortest_path(t, d, s).hops

    def test_length_metric_prefers_short_detour(self):
        t = make(3, [(1, 2), (2, 3), (1, 3)],
                 {(1, 3): 10, (1, 2): 2, (2, 3): 2})
        assert shortest_path(t, 1, 3, "length").nodes == (1, 2, 3)
        assert shortest_path(t, 1, 3, "hops").nodes == (1, 3)

    def test_length_metric_lexicographic_tie(self):
        t = make(4, [(1, 2), (2, 3), (3, 4), (1, 4)],
                 {(1, 2): 2, (2, 3): 2, (3, 4): 2, (1, 4): 2})
        assert shortest_path(t, 1, 3, "length").nodes == (1, 2, 3)

    def test_unknown_metric(self):
        t = make(2, [(1, 2)])
        with pytest.raises(RsaError):
            shortest_path(t, 1, 2, "latency")

    def test_path_fibers(self):
        t = make(3, [(1, 2), (2, 3)])
        fibers = Path((1, 2, 3)).fibers(t)
        assert [(f.src, f.dst) for f in fibers] == [(1, 2), (2, 3)]


def grid_with(slot_count, occupied):
    g = SpectrumGrid(slot_count)
    for s in occupied:
        g.occupy(s, 1)
    return g


class TestFirstFit:
    def test_empty_grid(self):
        assert first_fit([SpectrumGrid(320)], 5) == 0

    def test_first_gap(self):
        g = SpectrumGrid(320)
        g.occupy(0, 4)
        assert first_fit([g], 5) == 4

    def test_two_fiber_intersection(self):
        a = SpectrumGrid(320)
        a.occupy(0, 10)
        b = SpectrumGrid(320)
        b.occupy(12, 9)
        got = first_fit([a, b], 3)
        want = exhaustive_first_fit([a.mask, b.mask], 320, 3)
        assert got == want == 21

    def test_no_room(self):
        g = SpectrumGrid(8)
        g.occupy(0, 8)
        assert first_fit([g], 1) is None

    def test_block_larger_than_grid(self):
        assert first_fit([SpectrumGrid(8)], 9) is None

    def test_exact_fit_at_top(self):
        g = SpectrumGrid(8)
        g.occupy(0, 3)
        assert first_fit([g], 5) == 3

    def test_bad_size(self):
        with pytest.raises(RsaError):
            first_fit([SpectrumGrid(8)], 0)

    @given(st.data())
    @settings(max_examples=300, deadline=None)
    def test_matches_exhaustive_scan(self, data):
        slot_count = data.draw(st.integers(min_value=1, max_value=64))
        n_fibers = data.draw(st.integers(min_value=1, max_value=4))
        masks = [data.draw(st.integers(min_value=0,
                                       max_value=(1 << slot_count) - 1))
                 for _ in range(n_fibers)]
        total = data.draw(st.integers(min_value=1, max_value=slot_count + 2))
        grids = []
        for m in masks:
            g = SpectrumGrid(slot_count)
            g.mask = m
            grids.append(g)
        assert first_fit(grids, total) == exhaustive_first_fit(
            masks, slot_count, total)


class TestSpectrumState:
    def path(self, t):
        return shortest_path(t, 1, 3)

    def test_allocate_release_roundtrip(self):
        t = make(3, [(1, 2), (2, 3)], )
        st_ = SpectrumState(t)
        conn = st_.allocate(1, 3, 100, self.path(t), SlotBlock(0, 8), 1.0)
        assert t.fiber_between(1, 2).grid.occupied == set(range(9))
        assert t.fiber_between(2, 1).grid.mask == 0
        st_.release(conn.id)
        assert t.all_grids_empty()

    def test_conflict_aborts(self):
        t = make(3, [(1, 2), (2, 3)])
        st_ = SpectrumState(t)
        st_.allocate(1, 3, 100, self.path(t), SlotBlock(0, 8), 1.0)
        with pytest.raises(AllocationConflict):
            st_.allocate(1, 3, 100, self.path(t), SlotBlock(5, 4), 2.0)

    def test_release_unknown(self):
        t = make(2, [(1, 2)])
        st_ = SpectrumState(t)
        conn = st_.allocate(1, 2, 50, Path((1, 2)), SlotBlock(0, 4), 1.0)
        st_.release(conn.id)
        with pytest.raises(RsaError):
            st_.release(conn.id)

    def test_audit_matches_replay_oracle(self):
        t = builtin_nsfnet()
        t.fresh_grids()
        st_ = SpectrumState(t)
        import random
        rng = random.Random(7)
        for step in range(1000):
            if st_.active and rng.random() < 0.4:
                st_.release(rng.choice(sorted(st_.active)))
                continue
            s, d = rng.sample(range(1, 15), 2)
            p = shortest_path(t, s, d, "length")
            need = rng.randint(4, 20) + GUARD_SLOTS
            start = first_fit((f.grid for f in p.fibers(t)), need)
            if start is not None:
                st_.allocate(s, d, need * 12.5, p,
                             SlotBlock(start, need - GUARD_SLOTS), float(step))
        st_.audit()
        occ = replay_occupancy(st_.active.values())
        for f in t.fibers():
            assert f.grid.occupied == occ.get((f.src, f.dst), set())
        for conn_id in sorted(st_.active):
            st_.release(conn_id)
        assert t.all_grids_empty()

    def test_block_total_includes_guard(self):
        b = SlotBlock(10, 7)
        assert b.total == 7 + GUARD_SLOTS
