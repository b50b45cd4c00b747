"""Traffic scenarios: arrival rates, destination distributions, sampling.

Five models are expressible:
  * uniform       equal rate everywhere, uniform destinations
  * dest_skew     equal rates, destinations biased toward hotspots
  * rate_scaled   hotspot sources generate alpha times faster
  * closed_region rate_scaled whose hotspot sources also prefer
                  hotspot destinations
plus rate_scaled with alpha=1, which degenerates to uniform.

Total offered load is conserved: the arrival rates always sum to
mu * NL (network basis) or n * mu * NL (per-node basis).
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import accumulate
from pathlib import Path
from random import Random

from .topology import Topology

BANDWIDTH_RANGE_GHZ = (50.0, 250.0)


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class ConnectionRequest:
    source: int
    destination: int
    bandwidth_ghz: float
    arrival_time: float
    holding_time: float


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str                      # uniform | dest_skew | rate_scaled | closed_region
    name: str = ""
    hotspots: frozenset[int] = frozenset()
    p_hot: float = 0.2
    p_cold: float = 0.02
    alpha: float = 1.0
    load_erlang: float = 10.0
    mean_holding: float = 1.0
    bandwidth_range: tuple[float, float] = BANDWIDTH_RANGE_GHZ
    load_basis: str = "network"    # network: sum(lambda) = mu*NL; per_node: n*mu*NL

    KINDS = ("uniform", "dest_skew", "rate_scaled", "closed_region")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ScenarioError(f"unknown scenario kind {self.kind!r}")
        if self.kind != "uniform" and not self.hotspots:
            raise ScenarioError(f"{self.kind} scenario needs a hotspot set")
        if self.kind in ("dest_skew", "closed_region") and not self.p_hot > self.p_cold > 0:
            raise ScenarioError("need p_hot > p_cold > 0")
        if self.kind in ("rate_scaled", "closed_region") and self.alpha < 1:
            raise ScenarioError("alpha must be >= 1")
        if self.load_basis not in ("network", "per_node"):
            raise ScenarioError(f"unknown load basis {self.load_basis!r}")
        if self.mean_holding <= 0 or self.load_erlang <= 0:
            raise ScenarioError("load and holding must be positive")
        lo, hi = self.bandwidth_range
        if not 0 < lo <= hi:
            raise ScenarioError("bad bandwidth range")

    def label(self) -> str:
        return self.name or self.kind

    def with_load(self, nl: float) -> "ScenarioSpec":
        return ScenarioSpec(self.kind, self.name, self.hotspots, self.p_hot,
                            self.p_cold, self.alpha, nl, self.mean_holding,
                            self.bandwidth_range, self.load_basis)


@dataclass
class TrafficScenario:
    spec: ScenarioSpec
    arrival_rate: dict[int, float]
    dest_dist: dict[int, dict[int, float]]
    mean_holding: float
    bandwidth_range: tuple[float, float]
    total_rate: float = field(init=False)
    _src_nodes: list[int] = field(init=False)
    _src_cum: list[float] = field(init=False)
    _dest_nodes: dict[int, list[int]] = field(init=False)
    _dest_cum: dict[int, list[float]] = field(init=False)

    def __post_init__(self):
        self.total_rate = math.fsum(self.arrival_rate.values())
        self._src_nodes = sorted(self.arrival_rate)
        self._src_cum = list(accumulate(self.arrival_rate[n] / self.total_rate
                                        for n in self._src_nodes))
        self._dest_nodes = {}
        self._dest_cum = {}
        for s, row in self.dest_dist.items():
            ns = sorted(row)
            self._dest_nodes[s] = ns
            self._dest_cum[s] = list(accumulate(row[n] for n in ns))

    def sample_request(self, rng: Random, now: float) -> ConnectionRequest:
        """Draw order is fixed: inter-arrival, source, destination, bandwidth, holding."""
        gap = rng.expovariate(self.total_rate)
        src = self._src_nodes[bisect_right(self._src_cum, rng.random())]
        dst = self._dest_nodes[src][bisect_right(self._dest_cum[src], rng.random())]
        lo, hi = self.bandwidth_range
        bw = rng.uniform(lo, hi)
        hold = rng.expovariate(1.0 / self.mean_holding)
        return ConnectionRequest(src, dst, bw, now + gap, hold)

    def hotspot_request_share(self) -> float:
        """P(destination is a hotspot), marginalized over sources."""
        hot = self.spec.hotspots
        if not hot:
            raise ScenarioError("scenario has no hotspot set")
        return math.fsum(
            self.arrival_rate[s] / self.total_rate * row.get(d, 0.0)
            for s, row in self.dest_dist.items() for d in hot)


def _dest_row(weights: dict[int, float], source: int) -> dict[int, float]:
    """Drop the source and renormalize the remaining weights to sum 1."""
    rest = {d: w for d, w in weights.items() if d != source}
    total = math.fsum(rest.values())
    return {d: w / total for d, w in rest.items()}


def build_scenario(spec: ScenarioSpec, t: Topology) -> TrafficScenario:
    nodes = list(t.nodes())
    n = len(nodes)
    if not spec.hotspots <= set(nodes):
        raise ScenarioError("hotspot set not contained in topology nodes")
    mu = 1.0 / spec.mean_holding
    total = mu * spec.load_erlang * (n if spec.load_basis == "per_node" else 1)

    if spec.kind in ("uniform", "dest_skew"):
        rates = {i: total / n for i in nodes}
    else:
        hot = spec.hotspots
        n_hot = len(hot)
        lam = total / ((n - n_hot) + spec.alpha * n_hot)
        rates = {i: spec.alpha * lam if i in hot else lam for i in nodes}

    uniform_w = {i: 1.0 for i in nodes}
    skew_w = {i: (spec.p_hot if i in spec.hotspots else spec.p_cold) for i in nodes}
    dest = {}
    for s in nodes:
        if spec.kind == "dest_skew":
            dest[s] = _dest_row(skew_w, s)
        elif spec.kind == "closed_region" and s in spec.hotspots:
            dest[s] = _dest_row(skew_w, s)
        else:
            dest[s] = _dest_row(uniform_w, s)

    got = math.fsum(rates.values())
    if abs(got - total) > 1e-9 * total:
        raise ScenarioError(f"load conservation broken: {got} != {total}")
    for s, row in dest.items():
        if abs(math.fsum(row.values()) - 1.0) > 1e-12 or row.get(s):
            raise ScenarioError(f"bad destination row for source {s}")
    return TrafficScenario(spec, rates, dest, spec.mean_holding, spec.bandwidth_range)


def spec_from_dict(d: dict) -> ScenarioSpec:
    known = {"kind", "name", "hotspots", "p_hot", "p_cold", "alpha",
             "load_erlang", "mean_holding", "bandwidth_range", "load_basis"}
    extra = set(d) - known
    if extra:
        raise ScenarioError(f"unknown scenario fields: {sorted(extra)}")
    kw = dict(d)
    if "hotspots" in kw:
        kw["hotspots"] = frozenset(int(x) for x in kw["hotspots"])
    if "bandwidth_range" in kw:
        kw["bandwidth_range"] = tuple(float(x) for x in kw["bandwidth_range"])
    return ScenarioSpec(**kw)


def load_scenario_spec(path: str | Path) -> ScenarioSpec:
    with open(path) as fh:
        return spec_from_dict(json.load(fh))
