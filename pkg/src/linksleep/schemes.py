"""Coordinated link powerdown schemes: Random, SBF, LBF and Hybrid.

Every scheme removes links one at a time until only a spanning tree is
left, never disconnecting the network, and records the critical rate after
each removal.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .capacity import rate_from_bmax
from .centrality import argbest, edge_betweenness_array
from .graph import Topology, TopologyError

log = logging.getLogger(__name__)

SCHEMES = ("random", "sbf", "lbf", "hybrid")


@dataclass(frozen=True)
class SchemeConfig:
    kind: str
    seed: int = 0
    window_l: int = 20

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in SCHEMES:
            raise ValueError(f"unknown scheme {self.kind!r}; expected one of {SCHEMES}")
        object.__setattr__(self, "kind", kind)
        if self.window_l < 2:
            raise ValueError("window_l must be at least 2")


@dataclass
class PowerdownTrace:
    """Removal order and capacity after each removal for one scheme run."""

    scheme: str
    r0: float
    removals: list[int]
    r_values: list[float]
    endpoints: list[tuple[int, int]]
    phases: list[str]
    node_count: int
    edge_count: int
    seed: int = 0
    window_l: int = 20
    alpha: float = 1.0
    kappa: Optional[int] = None
    skipped: list[tuple[int, int]] = field(default_factory=list)
    network: str = ""

    @property
    def h(self) -> int:
        return len(self.removals)

    @property
    def r_last(self) -> float:
        return self.r_values[-1] if self.r_values else self.r0

    def curve(self) -> list[tuple[int, float]]:
        return [(0, self.r0)] + list(enumerate(self.r_values, start=1))

    def to_csv(self) -> str:
        buf = io.StringIO()
        meta = [
            ("scheme", self.scheme),
            ("network", self.network),
            ("seed", self.seed),
            ("window", self.window_l),
            ("alpha", repr(float(self.alpha))),
            ("r0", repr(float(self.r0))),
            ("nodes", self.node_count),
            ("edges", self.edge_count),
            ("kappa", "" if self.kappa is None else self.kappa),
        ]
        for key, value in meta:
            buf.write(f"# {key}={value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "edge_id", "u", "v", "r_value", "phase"])
        for i, (e, (u, v), r, ph) in enumerate(
            zip(self.removals, self.endpoints, self.r_values, self.phases), start=1
        ):
            writer.writerow([i, e, u, v, repr(float(r)), ph])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "PowerdownTrace":
        meta: dict[str, str] = {}
        body = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value.strip()
            elif line.strip():
                body.append(line)
        try:
            rows = list(csv.DictReader(body))
            return cls(
                scheme=meta["scheme"],
                network=meta.get("network", ""),
                seed=int(meta.get("seed", 0)),
                window_l=int(meta.get("window", 20)),
                alpha=float(meta.get("alpha", 1.0)),
                r0=float(meta["r0"]),
                node_count=int(meta["nodes"]),
                edge_count=int(meta["edges"]),
                kappa=int(meta["kappa"]) if meta.get("kappa") else None,
                removals=[int(r["edge_id"]) for r in rows],
                endpoints=[(int(r["u"]), int(r["v"])) for r in rows],
                r_values=[float(r["r_value"]) for r in rows],
                phases=[r["phase"] for r in rows],
            )
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed trace file: {exc}") from exc


def detect_phase_transition(
    r_values: Sequence[float], r0: float | None = None, window_l: int = 20
) -> Optional[int]:
    """Smallest 1-based ``k`` at which capacity collapses within a window.

    ``k`` qualifies when ``R_k`` exceeds each of the next ``window_l - 1``
    values and ``R_{k+window_l-1} < R_k / 2``. Windows running past the end
    of ``r_values`` are not eligible. ``r0`` is accepted for signature
    symmetry with the trace and does not enter the test.
    """
    if window_l < 2:
        raise ValueError("window_l must be at least 2")
    r = list(r_values)
    for k in range(1, len(r) - window_l + 2):
        if _window_collapses(r, k, window_l):
            return k
    return None


def _window_collapses(r: Sequence[float], k: int, window_l: int) -> bool:
    head = r[k - 1]
    window = r[k : k + window_l - 1]
    return all(head > x for x in window) and window[-1] < head / 2


class _Runner:
    """Mutable state of one scheme run."""

    def __init__(self, topology: Topology, alpha: float):
        self.topo = topology.copy()
        self.alpha = alpha
        self.bet = edge_betweenness_array(self.topo)
        self.r0 = self._rate()
        self.removals: list[int] = []
        self.r_values: list[float] = []
        self.phases: list[str] = []
        self.skipped: list[tuple[int, int]] = []

    def _rate(self) -> float:
        b_max = float(self.bet[self.topo.active_mask].max())
        return rate_from_bmax(self.topo.node_count, b_max, self.alpha)

    @property
    def step(self) -> int:
        return len(self.removals) + 1

    def remove(self, e: int, phase: str) -> None:
        self.topo.deactivate(e)
        self.bet = edge_betweenness_array(self.topo)
        self.removals.append(e)
        self.r_values.append(self._rate())
        self.phases.append(phase)

    def undo(self) -> None:
        e = self.removals.pop()
        self.r_values.pop()
        self.phases.pop()
        step = len(self.removals) + 1
        self.skipped = [s for s in self.skipped if s[0] != step]
        self.topo.reactivate(e)

    def restore_betweenness(self) -> None:
        self.bet = edge_betweenness_array(self.topo)

    def pick_ranked(self, largest: bool) -> int:
        active = self.topo.active_edge_ids()
        bridge = self.topo.bridges()
        candidates = active[~bridge[active]]
        if len(candidates) == 0:
            raise AssertionError("no removable link left before reaching a spanning tree")
        e = argbest(self.bet, candidates, largest)
        # Bridges ranked ahead of the pick were tried and cancelled.
        sign = -1.0 if largest else 1.0
        key_e = (sign * self.bet[e], e)
        ahead = sorted(
            (int(b) for b in active[bridge[active]] if (sign * self.bet[b], b) < key_e),
            key=lambda b: (sign * self.bet[b], b),
        )
        self.skipped += [(self.step, b) for b in ahead]
        return e

    def pick_random(self, rng: np.random.Generator) -> int:
        active = self.topo.active_edge_ids()
        bridge = self.topo.bridges()
        for e in rng.permutation(active):
            e = int(e)
            if not bridge[e]:
                return e
            self.skipped.append((self.step, e))
        raise AssertionError("no removable link left before reaching a spanning tree")


def run_scheme(topology: Topology, config: SchemeConfig, alpha: float = 1.0) -> PowerdownTrace:
    """Power down links of ``topology`` (left unmodified) until a spanning tree remains."""
    if not topology.is_connected():
        raise TopologyError("input topology is disconnected")
    run = _Runner(topology, alpha)
    h = run.topo.removable_budget()
    rng = np.random.default_rng(config.seed)
    kappa = None
    kind = config.kind
    if kind == "hybrid":
        kappa = _run_hybrid_lbf_phase(run, h, config.window_l)
    while len(run.removals) < h:
        if kind == "sbf":
            run.remove(run.pick_ranked(largest=False), "sbf")
        elif kind == "lbf":
            run.remove(run.pick_ranked(largest=True), "lbf")
        else:
            run.remove(run.pick_random(rng), "random")
    assert run.topo.spanning_tree_reached()
    return PowerdownTrace(
        scheme=kind,
        r0=run.r0,
        removals=run.removals,
        r_values=run.r_values,
        endpoints=[topology.endpoints(e) for e in run.removals],
        phases=run.phases,
        node_count=topology.node_count,
        edge_count=topology.edge_count,
        seed=config.seed,
        window_l=config.window_l,
        alpha=alpha,
        kappa=kappa,
        skipped=run.skipped,
    )


def _run_hybrid_lbf_phase(run: _Runner, h: int, window_l: int) -> Optional[int]:
    """LBF with look-ahead until the phase transition is confirmed.

    Candidate ``k`` can only be judged once ``R_{k+l-1}`` exists, so LBF runs
    provisionally ``l - 1`` steps ahead; on confirmation the provisional
    removals after ``k`` are rolled back. Returns ``k``, or ``None`` when
    LBF runs to completion without a transition.
    """
    while len(run.removals) < h:
        run.remove(run.pick_ranked(largest=True), "lbf")
        t = len(run.removals)
        k = t - window_l + 1
        if k >= 1 and _window_collapses(run.r_values, k, window_l):
            while len(run.removals) > k:
                run.undo()
            run.restore_betweenness()
            log.debug("hybrid switches to random after removal %d", k)
            return k
    return None


def replay_trace(topology: Topology, trace: PowerdownTrace, prefix_k: int) -> Topology:
    """Copy of ``topology`` with the first ``prefix_k`` removals applied."""
    if not 0 <= prefix_k <= trace.h:
        raise ValueError(f"prefix {prefix_k} outside 0..{trace.h}")
    if topology.edge_count != trace.edge_count or topology.node_count != trace.node_count:
        raise TopologyError("trace was recorded on a different topology")
    work = topology.copy()
    for e, uv in zip(trace.removals[:prefix_k], trace.endpoints[:prefix_k]):
        if work.endpoints(e) != tuple(uv):
            raise TopologyError(f"edge {e} endpoints differ from the trace")
        work.deactivate(e)
    return work
