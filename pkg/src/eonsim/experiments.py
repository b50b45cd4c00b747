"""Preset scenario bundles for the four hotspot studies.

Hotspot sets are derived from betweenness ranks of the active topology
(lowest or highest k, ties broken by node index) so the studies carry
over to any loaded topology. On the built-in 14-node network the derived
sets are cross-checked against the canonical node lists.

Preset ids (CLI names in parentheses):
  HP-location (hp-location)  destination skew at low- vs high-centrality sets
  HP-count    (hp-count)     4 vs 6 hotspots at a fixed 80% request share
  HP-rate     (hp-rate)      hotspot sources arriving alpha times faster
  HP-closed   (hp-closed)    fast hotspot sources also targeting hotspots
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .centrality import betweenness_centrality, rank_nodes
from .topology import Topology
from .traffic import ScenarioSpec

DEFAULT_LOADS = (5.0, 10.0, 15.0, 20.0, 25.0)
DESK_REQUESTS, DESK_REPS = 20_000, 3
PAPER_REQUESTS, PAPER_REPS = 100_000, 5

# canonical hotspot sets on the built-in 14-node topology
_NSFNET_BOTTOM4 = frozenset({1, 3, 10, 14})
_NSFNET_TOP4 = frozenset({4, 8, 9, 12})
_NSFNET_BOTTOM6 = frozenset({1, 3, 10, 11, 13, 14})

PRESET_IDS = ("hp-location", "hp-count", "hp-rate", "hp-closed")


class PresetError(ValueError):
    pass


@dataclass(frozen=True)
class StudyPreset:
    id: str
    specs: tuple[ScenarioSpec, ...]
    loads: tuple[float, ...] = DEFAULT_LOADS
    baseline: str = "uniform"

    def spec_list(self) -> list[ScenarioSpec]:
        return list(self.specs)


def hotspot_sets(t: Topology) -> dict[str, frozenset[int]]:
    """Rank-derived hotspot sets; checked against the canonical lists on
    the built-in network."""
    n = len(t.nodes())
    if n < 7:
        raise PresetError(f"topology too small for hotspot ranks ({n} nodes)")
    bc = betweenness_centrality(t)
    sets = {
        "bottom4": frozenset(rank_nodes(bc, 4, "lowest")),
        "top4": frozenset(rank_nodes(bc, 4, "highest")),
        "bottom6": frozenset(rank_nodes(bc, 6, "lowest")),
    }
    if t.name == "nsfnet":
        expect = {"bottom4": _NSFNET_BOTTOM4, "top4": _NSFNET_TOP4,
                  "bottom6": _NSFNET_BOTTOM6}
        for key, want in expect.items():
            if sets[key] != want:
                raise PresetError(
                    f"rank-derived {key} set {sorted(sets[key])} does not "
                    f"match the canonical list {sorted(want)}")
    return sets


def _uniform(basis: str) -> ScenarioSpec:
    return ScenarioSpec("uniform", name="uniform", load_basis=basis)


def preset(preset_id: str, t: Topology, load_basis: str = "network") -> StudyPreset:
    pid = preset_id.lower().replace("_", "-")
    if pid not in PRESET_IDS:
        raise PresetError(f"unknown preset {preset_id!r}; choose from {PRESET_IDS}")
    hs = hotspot_sets(t)
    n = len(t.nodes())
    uni = _uniform(load_basis)

    if pid == "hp-location":
        specs = (
            uni,
            ScenarioSpec("dest_skew", name="hp1-low-centrality",
                         hotspots=hs["bottom4"], p_hot=0.2, p_cold=0.02,
                         load_basis=load_basis),
            ScenarioSpec("dest_skew", name="hp2-high-centrality",
                         hotspots=hs["top4"], p_hot=0.2, p_cold=0.02,
                         load_basis=load_basis),
        )
    elif pid == "hp-count":
        # both sets receive the same 0.8 aggregate hotspot mass
        n4, n6 = hs["bottom4"], hs["bottom6"]
        specs = (
            uni,
            ScenarioSpec("dest_skew", name="n4-hotspots", hotspots=n4,
                         p_hot=0.8 / len(n4), p_cold=0.2 / (n - len(n4)),
                         load_basis=load_basis),
            ScenarioSpec("dest_skew", name="n6-hotspots", hotspots=n6,
                         p_hot=0.8 / len(n6), p_cold=0.2 / (n - len(n6)),
                         load_basis=load_basis),
        )
    elif pid == "hp-rate":
        specs = (uni,) + tuple(
            ScenarioSpec("rate_scaled", name=f"rate-x{alpha}",
                         hotspots=hs["bottom4"], alpha=float(alpha),
                         load_basis=load_basis)
            for alpha in (1, 2, 4, 6))
    else:  # hp-closed
        specs = (
            uni,
            ScenarioSpec("rate_scaled", name="rate-x6", hotspots=hs["bottom4"],
                         alpha=6.0, load_basis=load_basis),
            ScenarioSpec("closed_region", name="closed-region-x6",
                         hotspots=hs["bottom4"], alpha=6.0,
                         p_hot=0.2, p_cold=0.02, load_basis=load_basis),
        )
    return StudyPreset(pid, specs)


def scale(paper_scale: bool) -> tuple[int, int]:
    """(n_requests, replications) for desk or full scale."""
    if paper_scale:
        return PAPER_REQUESTS, PAPER_REPS
    return DESK_REQUESTS, DESK_REPS
