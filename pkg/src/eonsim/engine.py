"""Discrete-event simulation loop and load sweeps.

One run processes exactly n_requests arrivals in time order, interleaved
with departures (departures win ties). Admission is single-shortest-path
first-fit: a request that cannot fit on its one candidate path is
blocked outright. When the last arrival has been handled the run ends;
connections still active are simply dropped, which cannot affect the
blocking counters.

Routing defaults to link-length-weighted shortest paths, the same metric
the hotspot ranking uses; pass metric="hops" for minimum-hop routing.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from random import Random

from .rsa import GUARD_SLOTS, Path, SlotBlock, SpectrumState, first_fit, shortest_path, slots_required
from .topology import Topology
from .traffic import ScenarioSpec, TrafficScenario, build_scenario

DEPARTURE, ARRIVAL = 0, 1  # tie-break: departures free capacity first


@dataclass
class SimStats:
    scenario: str
    load_erlang: float
    seed: int
    requests_total: int = 0
    requests_blocked: int = 0
    bandwidth_requested_ghz: float = 0.0
    bandwidth_blocked_ghz: float = 0.0

    def rbp(self) -> float:
        if self.requests_total < 1:
            raise ValueError("no requests recorded")
        return self.requests_blocked / self.requests_total

    def bbp(self) -> float:
        if self.requests_total < 1:
            raise ValueError("no requests recorded")
        if self.bandwidth_requested_ghz == 0:
            return 0.0
        return self.bandwidth_blocked_ghz / self.bandwidth_requested_ghz


def _path_table(t: Topology, metric: str = "length") -> dict[tuple[int, int], Path]:
    table = {}
    for s in t.nodes():
        for d in t.nodes():
            if s != d:
                table[(s, d)] = shortest_path(t, s, d, metric)
    return table


def run(t: Topology, scenario: TrafficScenario, n_requests: int, seed: int,
        warmup: int = 0, audit_every: int = 0, metric: str = "length",
        path_table: dict[tuple[int, int], Path] | None = None) -> SimStats:
    """Simulate n_requests arrivals; returns blocking statistics.

    warmup arrivals are processed normally but not counted. audit_every,
    if nonzero, re-derives grid occupancy from the active-connection set
    every K events and aborts on any inconsistency (debug aid).
    """
    if n_requests < 1:
        raise ValueError("n_requests must be >= 1")
    spec = scenario.spec
    stats = SimStats(spec.label(), spec.load_erlang, seed)
    t.fresh_grids()
    state = SpectrumState(t)
    paths = path_table if path_table is not None else _path_table(t, metric)
    rng = Random(seed)
    guard = GUARD_SLOTS
    width = t.slot_width_ghz

    events: list[tuple[float, int, int]] = []  # (time, kind, conn id)
    seq = 0
    req = scenario.sample_request(rng, 0.0)
    arrivals_done = 0
    n_events = 0
    while arrivals_done < warmup + n_requests:
        if events and (events[0][0], events[0][1]) <= (req.arrival_time, ARRIVAL):
            _, _, conn_id = heapq.heappop(events)
            state.release(conn_id)
        else:
            now = req.arrival_time
            arrivals_done += 1
            counted = arrivals_done > warmup
            path = paths[(req.source, req.destination)]
            need = slots_required(req.bandwidth_ghz, width) + guard
            start = first_fit((f.grid for f in path.fibers(t)), need)
            if counted:
                stats.requests_total += 1
                stats.bandwidth_requested_ghz += req.bandwidth_ghz
            if start is None:
                if counted:
                    stats.requests_blocked += 1
                    stats.bandwidth_blocked_ghz += req.bandwidth_ghz
            else:
                block = SlotBlock(start, need - guard, guard)
                conn = state.allocate(req.source, req.destination,
                                      req.bandwidth_ghz, path, block,
                                      now + req.holding_time)
                heapq.heappush(events, (conn.departs_at, DEPARTURE, conn.id))
            seq += 1
            req = scenario.sample_request(rng, now)
        n_events += 1
        if audit_every and n_events % audit_every == 0:
            state.audit()
    return stats


def drain(t: Topology, state: SpectrumState) -> None:
    for conn_id in sorted(state.active):
        state.release(conn_id)


def mix_seed(base_seed: int, scenario_idx: int, load_idx: int, rep: int) -> int:
    """Deterministic per-cell seed: splitmix64 over a packed cell index."""
    x = (base_seed & 0xFFFFFFFFFFFFFFFF) ^ (
        scenario_idx * 0x100000000 + load_idx * 0x10000 + rep)
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


@dataclass
class SweepResult:
    rows: list[SimStats] = field(default_factory=list)

    def aggregate(self) -> dict[tuple[str, float], tuple[float, float]]:
        """(scenario, load) -> (mean RBP, mean BBP) over replications."""
        groups: dict[tuple[str, float], list[SimStats]] = {}
        for r in self.rows:
            groups.setdefault((r.scenario, r.load_erlang), []).append(r)
        return {k: (math.fsum(s.rbp() for s in v) / len(v),
                    math.fsum(s.bbp() for s in v) / len(v))
                for k, v in groups.items()}

    def curve(self, scenario: str, metric: str = "rbp") -> dict[float, float]:
        agg = self.aggregate()
        idx = 0 if metric == "rbp" else 1
        return {load: vals[idx] for (name, load), vals in sorted(agg.items())
                if name == scenario}


def sweep(t: Topology, specs: list[ScenarioSpec], loads: list[float],
          n_requests: int, replications: int, base_seed: int,
          warmup: int = 0, metric: str = "length") -> SweepResult:
    if not specs or not loads:
        raise ValueError("need at least one scenario and one load")
    result = SweepResult()
    paths = _path_table(t, metric)
    for si, spec in enumerate(specs):
        for li, nl in enumerate(loads):
            scenario = build_scenario(spec.with_load(nl), t)
            for rep in range(replications):
                seed = mix_seed(base_seed, si, li, rep)
                result.rows.append(run(t, scenario, n_requests, seed,
                                       warmup=warmup, path_table=paths))
    return result


def avg_relative_delta(curve: dict[float, float], baseline: dict[float, float],
                       skip_zero_baseline: bool = True) -> float:
    """Mean percent difference from baseline across shared load points."""
    shared = sorted(set(curve) & set(baseline))
    if not shared:
        raise ValueError("curves share no load points")
    deltas = []
    for nl in shared:
        if baseline[nl] == 0:
            if skip_zero_baseline:
                continue
            raise ValueError(f"baseline is zero at load {nl}")
        deltas.append((curve[nl] - baseline[nl]) / baseline[nl] * 100.0)
    if not deltas:
        raise ValueError("baseline is zero at every shared load point")
    return math.fsum(deltas) / len(deltas)


def ratio_of_means_delta(curve: dict[float, float],
                         baseline: dict[float, float]) -> float:
    """Alternative reading: percent difference of curve means."""
    shared = sorted(set(curve) & set(baseline))
    if not shared:
        raise ValueError("curves share no load points")
    b = math.fsum(baseline[nl] for nl in shared)
    if b == 0:
        raise ValueError("baseline mean is zero")
    a = math.fsum(curve[nl] for nl in shared)
    return (a - b) / b * 100.0
