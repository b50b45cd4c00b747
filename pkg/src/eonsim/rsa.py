"""Routing and spectrum assignment: shortest path, slot sizing, first-fit.

Routing is minimum-hop with a deterministic tie-break (lexicographically
smallest node sequence). Spectrum search treats each fiber grid as a
bitmask and finds the lowest start index where the whole contiguous
block, data slots plus guard, is free on every fiber of the path.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .topology import Fiber, Topology

GUARD_SLOTS = 1


class RsaError(ValueError):
    pass


class AllocationConflict(RuntimeError):
    """A slot was already occupied during allocate; indicates an engine bug."""


@dataclass(frozen=True)
class Path:
    nodes: tuple[int, ...]

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1

    def fibers(self, t: Topology) -> list[Fiber]:
        return [t.fiber_between(a, b) for a, b in zip(self.nodes, self.nodes[1:])]


@dataclass(frozen=True)
class SlotBlock:
    start: int
    data_slots: int
    guard_slots: int = GUARD_SLOTS

    @property
    def total(self) -> int:
        return self.data_slots + self.guard_slots


@dataclass
class ActiveConnection:
    id: int
    source: int
    destination: int
    bandwidth_ghz: float
    path: Path
    block: SlotBlock
    departs_at: float


def slots_required(bandwidth_ghz: float, slot_width_ghz: float) -> int:
    """Data slots for a demand: ceil(bandwidth / slot width)."""
    if bandwidth_ghz <= 0 or slot_width_ghz <= 0:
        raise RsaError("bandwidth and slot width must be positive")
    return math.ceil(bandwidth_ghz / slot_width_ghz)


def shortest_path(t: Topology, s: int, d: int, metric: str = "hops") -> Path:
    """Minimum-cost path from s to d, smallest node sequence among ties.

    metric "hops" counts every link as 1; metric "length" uses link
    lengths. The hop variant is BFS by levels; at each node the
    predecessor chosen is the one whose own path is lexicographically
    smallest, which makes the full node sequence the smallest among all
    minimum-hop paths.
    """
    if s == d:
        raise RsaError(f"source and destination coincide ({s})")
    if metric == "length":
        return _dijkstra_path(t, s, d)
    if metric != "hops":
        raise RsaError(f"unknown routing metric {metric!r}")
    dist = {s: 0}
    best: dict[int, tuple[int, ...]] = {s: (s,)}
    frontier = [s]
    while frontier and d not in dist:
        nxt: list[int] = []
        for u in frontier:
            for v in t.neighbors(u):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        # settle lexicographic choice level by level
        for v in nxt:
            options = [best[u] + (v,) for u in t.neighbors(v)
                       if u in best and dist.get(u) == dist[v] - 1]
            best[v] = min(options)
        frontier = nxt
    if d not in dist:
        raise RsaError(f"no path from {s} to {d}")
    return Path(best[d])


def _dijkstra_path(t: Topology, s: int, d: int) -> Path:
    """Length-weighted shortest path; ties broken by smallest node sequence.

    The heap orders by (distance, node sequence), so among equal-length
    paths the lexicographically smallest sequence settles first.
    """
    best: dict[int, tuple[float, tuple[int, ...]]] = {s: (0.0, (s,))}
    pq: list[tuple[float, tuple[int, ...], int]] = [(0.0, (s,), s)]
    done: set[int] = set()
    while pq:
        dist, seq, u = heapq.heappop(pq)
        if u in done:
            continue
        done.add(u)
        if u == d:
            return Path(seq)
        for v in t.neighbors(u):
            cand = (dist + t.length(u, v), seq + (v,))
            if v not in best or cand < best[v]:
                best[v] = cand
                heapq.heappush(pq, (cand[0], cand[1], v))
    raise RsaError(f"no path from {s} to {d}")


def first_fit(grids, total_slots: int) -> int | None:
    """Lowest start where total_slots contiguous slots are free on all grids."""
    if total_slots < 1:
        raise RsaError("total_slots must be >= 1")
    grids = list(grids)
    slot_count = min(g.slot_count for g in grids)
    if total_slots > slot_count:
        return None
    occupied = 0
    for g in grids:
        occupied |= g.mask
    window = slot_count - total_slots + 1
    free = ~occupied & ((1 << (window + total_slots - 1)) - 1)
    # fold: run of k free slots starting at i  <=>  bit i set after ANDing shifts
    run = free
    have = 1
    while have < total_slots:
        step = min(have, total_slots - have)
        run &= run >> step
        have += step
    run &= (1 << window) - 1
    if run == 0:
        return None
    return (run & -run).bit_length() - 1


class SpectrumState:
    """Active connections and their slot holdings for one simulation run."""

    def __init__(self, t: Topology):
        self.topology = t
        self.active: dict[int, ActiveConnection] = {}
        self._next_id = 1

    def allocate(self, source: int, destination: int, bandwidth_ghz: float,
                 path: Path, block: SlotBlock, departs_at: float) -> ActiveConnection:
        fibers = path.fibers(self.topology)
        for f in fibers:
            if not f.grid.is_free(block.start, block.total):
                raise AllocationConflict(
                    f"fiber {f.src}->{f.dst}: block at {block.start} not free")
        for f in fibers:
            f.grid.occupy(block.start, block.total)
        conn = ActiveConnection(self._next_id, source, destination,
                                bandwidth_ghz, path, block, departs_at)
        self._next_id += 1
        self.active[conn.id] = conn
        return conn

    def release(self, conn_id: int) -> None:
        try:
            conn = self.active.pop(conn_id)
        except KeyError:
            raise RsaError(f"unknown connection id {conn_id}") from None
        for f in conn.path.fibers(self.topology):
            f.grid.free(conn.block.start, conn.block.total)

    def audit(self) -> None:
        """Recompute per-fiber occupancy from active connections; raise on drift."""
        expect: dict[tuple[int, int], int] = {}
        for conn in self.active.values():
            bits = ((1 << conn.block.total) - 1) << conn.block.start
            for a, b in zip(conn.path.nodes, conn.path.nodes[1:]):
                key = (a, b)
                if expect.get(key, 0) & bits:
                    raise AllocationConflict(f"double booking on fiber {a}->{b}")
                expect[key] = expect.get(key, 0) | bits
        for f in self.topology.fibers():
            if f.grid.mask != expect.get((f.src, f.dst), 0):
                raise AllocationConflict(
                    f"fiber {f.src}->{f.dst}: grid does not match active set")
