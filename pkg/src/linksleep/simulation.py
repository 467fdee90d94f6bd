"""Discrete-time packet simulator for shortest-path traffic.

Each step ``R`` packets appear with uniformly random distinct endpoints,
then every directed interface forwards at most the head of its FIFO queue
one hop along a shortest path, picking uniformly among equal next hops.
Queues are unbounded, so overload shows up as linear growth of the number
of packets in flight.

Randomness comes from ``random.Random(seed)``; injection and next-hop draws
are made in a fixed order, so a run is a pure function of its inputs.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Topology, TopologyError

MAX_PACKETS = 50_000_000
ORDER_THRESHOLD = 0.01


@dataclass(frozen=True)
class SimConfig:
    rate_R: int
    steps: int = 4000
    warmup_steps: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.rate_R < 1:
            raise ValueError("rate_R must be a positive integer")
        if not self.steps > self.warmup_steps >= 0:
            raise ValueError("need steps > warmup_steps >= 0")

    def with_rate(self, rate: int, seed: int | None = None) -> "SimConfig":
        return SimConfig(rate, self.steps, self.warmup_steps, self.seed if seed is None else seed)


@dataclass
class SimStats:
    rate_R: int
    seed: int
    created: int
    delivered: int
    in_flight_at_end: int
    order_parameter: float
    max_queue: int
    # (source, destination, hops) per delivered packet when recording is on
    deliveries: list[tuple[int, int, int]] = field(default_factory=list, repr=False)


def hop_distances(topology: Topology) -> np.ndarray:
    """All-pairs hop distances of the active subgraph (``-1`` if unreachable)."""
    adj = topology.adjacency_list()
    n = topology.node_count
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if row[w] < 0:
                    row[w] = row[u] + 1
                    queue.append(w)
    return dist


def simulate(topology: Topology, config: SimConfig, record: bool = False) -> SimStats:
    """Run the packet model and measure queue growth after warm-up.

    ``order_parameter`` is the growth of packets in flight per step after
    warm-up, divided by ``rate_R``: about 0 in free flow, positive once
    some interface receives more than one packet per step on average.
    """
    if config.rate_R * config.steps > MAX_PACKETS:
        raise ValueError(
            f"rate {config.rate_R} x {config.steps} steps exceeds the {MAX_PACKETS} packet cap"
        )
    n = topology.node_count
    if n < 2:
        raise ValueError("simulation needs at least two nodes")
    dist_np = hop_distances(topology)
    if (dist_np < 0).any():
        raise TopologyError("active subgraph is disconnected")
    dist = dist_np.tolist()
    adj = topology.adjacency_list()
    rng = random.Random(config.seed)

    def next_hop(u: int, d: int) -> int:
        target = dist[u][d] - 1
        options = [w for w in adj[u] if dist[w][d] == target]
        return options[0] if len(options) == 1 else options[rng.randrange(len(options))]

    # packet record: [source, destination, hops]
    queues: dict[tuple[int, int], deque] = {}
    created = delivered = in_flight = 0
    in_flight_at_warmup = 0
    max_queue = 0
    deliveries: list[tuple[int, int, int]] = []

    def enqueue(u: int, pkt: list) -> None:
        w = next_hop(u, pkt[1])
        q = queues.get((u, w))
        if q is None:
            q = queues[(u, w)] = deque()
        q.append(pkt)

    for step in range(config.steps):
        if step == config.warmup_steps:
            in_flight_at_warmup = in_flight
        for _ in range(config.rate_R):
            s = rng.randrange(n)
            d = rng.randrange(n - 1)
            if d >= s:
                d += 1
            enqueue(s, [s, d, 0])
        created += config.rate_R
        in_flight += config.rate_R
        moved = []
        for (u, w), q in queues.items():
            if q:
                if len(q) > max_queue:
                    max_queue = len(q)
                pkt = q.popleft()
                pkt[2] += 1
                moved.append((w, pkt))
        for w, pkt in moved:
            if w == pkt[1]:
                delivered += 1
                in_flight -= 1
                if record:
                    deliveries.append((pkt[0], pkt[1], pkt[2]))
            else:
                enqueue(w, pkt)
    span = config.steps - config.warmup_steps
    order = (in_flight - in_flight_at_warmup) / (span * config.rate_R)
    return SimStats(
        rate_R=config.rate_R,
        seed=config.seed,
        created=created,
        delivered=delivered,
        in_flight_at_end=in_flight,
        order_parameter=order,
        max_queue=max_queue,
        deliveries=deliveries,
    )


def is_congested(
    topology: Topology, config: SimConfig, threshold: float = ORDER_THRESHOLD, history=None
) -> bool:
    stats = simulate(topology, config)
    if history is not None:
        history.append(stats)
    return stats.order_parameter > threshold


def locate_transition(
    topology: Topology,
    template: SimConfig,
    r_low: int,
    r_high: int,
    threshold: float = ORDER_THRESHOLD,
    history: list | None = None,
) -> float:
    """Empirical critical rate by bisection over integer rates.

    ``r_low`` must be free-flowing and ``r_high`` congested under
    ``template``'s steps, warm-up and seed. Bisection stops at adjacent
    rates ``r, r + 1`` and returns their midpoint. Every run's
    :class:`SimStats` is appended to ``history`` when given.
    """
    r_low, r_high = int(r_low), int(r_high)
    if not 1 <= r_low < r_high:
        raise ValueError("need 1 <= r_low < r_high")
    if is_congested(topology, template.with_rate(r_low), threshold, history):
        raise ValueError(f"no sign change: rate {r_low} is already congested")
    if not is_congested(topology, template.with_rate(r_high), threshold, history):
        raise ValueError(f"no sign change: rate {r_high} is still free-flowing")
    while r_high - r_low > 1:
        mid = (r_low + r_high) // 2
        if is_congested(topology, template.with_rate(mid), threshold, history):
            r_high = mid
        else:
            r_low = mid
    return (r_low + r_high) / 2.0
