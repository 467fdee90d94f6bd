"""Coordinated link powerdown on communication networks.

Edge betweenness drives both the critical packet rate ``2N(N-1)/B_max``
and the removal order of the SBF/LBF/Hybrid schemes; energy savings follow
from how long capacity stays above a falling demand.
"""

from .capacity import CapacityEstimate, MinCutHistogram, critical_rate, min_cut_histogram, rc_removal_curve
from .centrality import EdgeBetweennessMap, betweenness_cdf, edge_betweenness, max_edge_betweenness
from .energy import EnergyReport, active_links_curve, energy_savings, sleep_units
from .estimators import LinkPowerdown, TrafficSimulator
from .generators import GenSpec, generate, generate_ba, generate_er
from .graph import Topology, TopologyError
from .io import ingest_rocketfuel, parse_edge_list, write_edge_list
from .schemes import PowerdownTrace, SchemeConfig, detect_phase_transition, replay_trace, run_scheme
from .simulation import SimConfig, SimStats, locate_transition, simulate

__version__ = "0.1.0"

__all__ = [
    "CapacityEstimate",
    "EdgeBetweennessMap",
    "EnergyReport",
    "GenSpec",
    "LinkPowerdown",
    "MinCutHistogram",
    "PowerdownTrace",
    "SchemeConfig",
    "SimConfig",
    "SimStats",
    "Topology",
    "TopologyError",
    "TrafficSimulator",
    "active_links_curve",
    "betweenness_cdf",
    "critical_rate",
    "detect_phase_transition",
    "edge_betweenness",
    "energy_savings",
    "generate",
    "generate_ba",
    "generate_er",
    "ingest_rocketfuel",
    "locate_transition",
    "max_edge_betweenness",
    "min_cut_histogram",
    "parse_edge_list",
    "rc_removal_curve",
    "replay_trace",
    "run_scheme",
    "simulate",
    "sleep_units",
    "write_edge_list",
]
