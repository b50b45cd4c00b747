"""Blocking-probability simulator for elastic optical networks.

Discrete-event simulation of connection requests over a spectrum-sliced
fiber network with shortest-path routing and first-fit slot assignment,
plus the centrality tooling used to pick hotspot node sets.
"""

from .centrality import (CentralityKind, CentralityVector,
                         betweenness_centrality, degree_centrality,
                         rank_nodes, raw_betweenness)
from .engine import (SimStats, SweepResult, avg_relative_delta, mix_seed,
                     ratio_of_means_delta, run, sweep)
from .experiments import PRESET_IDS, StudyPreset, hotspot_sets, preset, scale
from .rsa import (GUARD_SLOTS, ActiveConnection, AllocationConflict, Path,
                  RsaError, SlotBlock, SpectrumState, first_fit,
                  shortest_path, slots_required)
from .topology import (DEFAULT_SLOT_COUNT, DEFAULT_SLOT_WIDTH_GHZ, Fiber,
                       Link, SpectrumGrid, Topology, TopologyError,
                       builtin_nsfnet, load_topology, parse_topology)
from .traffic import (BANDWIDTH_RANGE_GHZ, ConnectionRequest, ScenarioError,
                      ScenarioSpec, TrafficScenario, build_scenario,
                      load_scenario_spec, spec_from_dict)

__version__ = "0.1.0"
