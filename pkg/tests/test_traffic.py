import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eonsim.topology import Link, Topology, builtin_nsfnet
from eonsim.traffic import (ScenarioError, ScenarioSpec, build_scenario,
                            load_scenario_spec, spec_from_dict)

HP1 = frozenset({1, 3, 10, 14})


def nsf():
    return builtin_nsfnet()


class TestSpecValidation:
    def test_unknown_kind(self):
        with pytest.raises(ScenarioError):
            ScenarioSpec("bursty")

    def test_hotspots_required(self):
        with pytest.raises(ScenarioError):
            ScenarioSpec("dest_skew")

    def test_probability_ordering(self):
        with pytest.raises(ScenarioError):
            ScenarioSpec("dest_skew", hotspots=HP1, p_hot=0.02, p_cold=0.2)

    def test_alpha_at_least_one(self):
        with pytest.raises(ScenarioError):
            ScenarioSpec("rate_scaled", hotspots=HP1, alpha=0.5)

    def test_bad_basis(self):
        with pytest.raises(ScenarioError):
            ScenarioSpec("uniform", load_basis="per_link")

    def test_with_load(self):
        s = ScenarioSpec("uniform", load_erlang=10.0)
        assert s.with_load(25.0).load_erlang == 25.0
        assert s.with_load(25.0).kind == "uniform"

    def test_label(self):
        assert ScenarioSpec("uniform").label() == "uniform"
        assert ScenarioSpec("uniform", name="base").label() == "base"


class TestBuildScenario:
    def test_uniform_rates(self):
        # NL=14, mean holding 1 -> every node generates at rate 1
        t = nsf()
        sc = build_scenario(ScenarioSpec("uniform", load_erlang=14.0), t)
        assert all(abs(lam - 1.0) < 1e-12 for lam in sc.arrival_rate.values())
        assert all(abs(p - 1 / 13) < 1e-12
                   for row in sc.dest_dist.values() for p in row.values())

    def test_dest_skew_renormalization(self):
        t = nsf()
        sc = build_scenario(
            ScenarioSpec("dest_skew", hotspots=HP1, p_hot=0.2, p_cold=0.02), t)
        # cold source 2: weights sum 1.0, minus its own 0.02 -> 0.98
        row = sc.dest_dist[2]
        assert abs(row[1] - 0.2 / 0.98) < 1e-12
        assert abs(row[5] - 0.02 / 0.98) < 1e-12
        assert 2 not in row
        # hot source 1 drops its own 0.2
        assert abs(sc.dest_dist[1][3] - 0.2 / 0.8) < 1e-12

    def test_rate_scaled_rates(self):
        t = nsf()
        sc = build_scenario(
            ScenarioSpec("rate_scaled", hotspots=HP1, alpha=6.0,
                         load_erlang=25.0), t)
        assert abs(sc.arrival_rate[2] - 25 / 34) < 1e-12
        assert abs(sc.arrival_rate[1] - 150 / 34) < 1e-12
        assert abs(sc.total_rate - 25.0) < 1e-9

    def test_closed_region_rows(self):
        t = nsf()
        sc = build_scenario(
            ScenarioSpec("closed_region", hotspots=HP1, alpha=6.0,
                         p_hot=0.2, p_cold=0.02), t)
        # hotspot sources skew toward hotspots, cold sources stay uniform
        assert abs(sc.dest_dist[1][3] - 0.2 / 0.8) < 1e-12
        assert abs(sc.dest_dist[2][5] - 1 / 13) < 1e-12

    def test_per_node_basis_scales_total(self):
        t = nsf()
        sc = build_scenario(
            ScenarioSpec("uniform", load_erlang=10.0, load_basis="per_node"), t)
        assert abs(sc.total_rate - 140.0) < 1e-9

    def test_hotspots_must_exist(self):
        t = Topology(3, [Link(1, 2), Link(2, 3)])
        with pytest.raises(ScenarioError):
            build_scenario(ScenarioSpec("dest_skew", hotspots=frozenset({9})), t)

    @given(st.sampled_from(["uniform", "dest_skew", "rate_scaled", "closed_region"]),
           st.floats(min_value=0.5, max_value=50))
    @settings(max_examples=40, deadline=None)
    def test_load_conservation_and_rows(self, kind, nl):
        t = nsf()
        spec = ScenarioSpec(kind, hotspots=HP1 if kind != "uniform" else frozenset(),
                            alpha=4.0, load_erlang=nl)
        sc = build_scenario(spec, t)
        assert abs(sc.total_rate - nl) < 1e-9 * nl
        for s, row in sc.dest_dist.items():
            assert abs(math.fsum(row.values()) - 1.0) < 1e-12
            assert s not in row


class TestSampling:
    def test_draw_validity(self):
        t = nsf()
        sc = build_scenario(
            ScenarioSpec("dest_skew", hotspots=HP1, p_hot=0.2, p_cold=0.02), t)
        rng = random.Random(3)
        now = 0.0
        for _ in range(2000):
            req = sc.sample_request(rng, now)
            assert req.source != req.destination
            assert 1 <= req.source <= 14 and 1 <= req.destination <= 14
            assert 50 <= req.bandwidth_ghz <= 250
            assert req.arrival_time > now
            assert req.holding_time > 0
            now = req.arrival_time

    def test_determinism(self):
        t = nsf()
        sc = build_scenario(ScenarioSpec("uniform"), t)
        a = [sc.sample_request(random.Random(11), 0.0) for _ in range(1)]
        b = [sc.sample_request(random.Random(11), 0.0) for _ in range(1)]
        assert a == b

    def test_hotspot_share_analytic(self):
        t = nsf()
        sc = build_scenario(
            ScenarioSpec("dest_skew", hotspots=HP1, p_hot=0.2, p_cold=0.02), t)
        share = sc.hotspot_request_share()
        # cold sources see 0.8/0.98, hot sources 0.6/0.8, weighted 10:4
        want = (10 * (0.8 / 0.98) + 4 * (0.6 / 0.8)) / 14
        assert abs(share - want) < 1e-12

    def test_share_requires_hotspots(self):
        t = nsf()
        sc = build_scenario(ScenarioSpec("uniform"), t)
        with pytest.raises(ScenarioError):
            sc.hotspot_request_share()


class TestSerialization:
    def test_from_dict(self):
        spec = spec_from_dict({"kind": "dest_skew", "hotspots": [1, 3, 10, 14],
                               "p_hot": 0.2, "p_cold": 0.02})
        assert spec.hotspots == HP1

    def test_unknown_field(self):
        with pytest.raises(ScenarioError, match="unknown"):
            spec_from_dict({"kind": "uniform", "burst": 2})

    def test_load_from_file(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text('{"kind": "uniform", "load_erlang": 7.5}')
        assert load_scenario_spec(p).load_erlang == 7.5
