"""Network transmission capacity and min-cut path diversity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .centrality import argbest, edge_betweenness_array
from .graph import Topology, TopologyError


@dataclass(frozen=True)
class CapacityEstimate:
    """Critical packet-generating rate of one topology snapshot."""

    r_c: float
    b_max: float
    bottleneck_edge: int
    qos_alpha: float = 1.0


def rate_from_bmax(node_count: int, b_max: float, alpha: float = 1.0) -> float:
    return alpha * 2.0 * node_count * (node_count - 1) / b_max


def critical_rate(topology: Topology, alpha: float = 1.0) -> CapacityEstimate:
    """``alpha * 2N(N-1) / B_max`` for the active subgraph.

    Raises :class:`TopologyError` when the active subgraph is disconnected
    and ``ValueError`` for ``alpha`` outside ``(0, 1]`` or fewer than two nodes.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if topology.node_count < 2:
        raise ValueError("critical rate needs at least two nodes")
    bet = edge_betweenness_array(topology)
    active = topology.active_edge_ids()
    e = argbest(bet, active, largest=True)
    # Exact maximum; the tie rule only chooses which edge is reported.
    b_max = float(bet[active].max())
    return CapacityEstimate(rate_from_bmax(topology.node_count, b_max, alpha), b_max, e, alpha)


def rc_removal_curve(
    topology: Topology, removal_sequence: Sequence[int], alpha: float = 1.0
) -> list[tuple[int, float]]:
    """``[(0, R_0), (1, R_1), ...]`` after each cumulative removal.

    The input topology is left untouched.
    """
    work = topology.copy()
    curve = [(0, critical_rate(work, alpha).r_c)]
    for i, e in enumerate(removal_sequence, start=1):
        work.deactivate(e)
        if not work.is_connected():
            raise TopologyError(f"removal {i} (edge {e}) disconnects the graph")
        curve.append((i, critical_rate(work, alpha).r_c))
    return curve


# --- unit-capacity max flow -------------------------------------------------


def _max_flow(n, adj, s, t):
    """Max flow on an undirected unit-capacity graph.

    ``adj[u]`` holds ``(w, edge_slot, sign)``; edge flow is stored once per
    undirected edge as ``flow[slot]`` in the direction of ``sign=+1``.
    Returns ``(value, source_side_mask)``.
    """
    n_slots = 1 + max((slot for nbrs in adj for _, slot, _ in nbrs), default=-1)
    flow = [0] * n_slots
    value = 0
    while True:
        parent = [None] * n
        parent[s] = (-1, -1, 0)
        queue = deque([s])
        while queue and parent[t] is None:
            u = queue.popleft()
            for w, slot, sign in adj[u]:
                if parent[w] is None and 1 - sign * flow[slot] > 0:
                    parent[w] = (u, slot, sign)
                    queue.append(w)
        if parent[t] is None:
            side = np.array([p is not None for p in parent], dtype=bool)
            return value, side
        v = t
        while v != s:
            u, slot, sign = parent[v]
            flow[slot] += sign
            v = u
        value += 1


def _flow_adjacency(topology: Topology):
    adj = [[] for _ in range(topology.node_count)]
    for slot, e in enumerate(topology.active_edge_ids()):
        u, v = topology.edges[e]
        adj[u].append((int(v), slot, 1))
        adj[v].append((int(u), slot, -1))
    return adj


def max_flow_value(topology: Topology, s: int, t: int) -> int:
    """Number of edge-disjoint ``s``-``t`` paths in the active subgraph."""
    if s == t:
        raise ValueError("source and sink coincide")
    value, _ = _max_flow(topology.node_count, _flow_adjacency(topology), s, t)
    return value


def cut_tree(topology: Topology) -> tuple[np.ndarray, np.ndarray]:
    """Flow-equivalent tree via Gusfield's N-1 max-flow construction.

    Returns ``(parent, weight)``: node ``i > 0`` hangs off ``parent[i]`` by an
    edge of weight ``weight[i]``. The min cut between any two nodes equals
    the smallest weight on their tree path.
    """
    n = topology.node_count
    adj = _flow_adjacency(topology)
    parent = np.zeros(n, dtype=np.int64)
    weight = np.zeros(n, dtype=np.int64)
    for s in range(1, n):
        t = int(parent[s])
        value, side = _max_flow(n, adj, s, t)
        weight[s] = value
        for i in range(s + 1, n):
            if side[i] and parent[i] == t:
                parent[i] = s
    return parent, weight


@dataclass(frozen=True)
class MinCutHistogram:
    """Number of unordered node pairs per min-cut value."""

    counts: dict[int, int] = field(default_factory=dict)
    total_pairs: int = 0

    def probability(self, m_c: int) -> float:
        return self.counts.get(m_c, 0) / self.total_pairs if self.total_pairs else 0.0

    def distribution(self) -> list[tuple[int, float]]:
        return [(k, self.counts[k] / self.total_pairs) for k in sorted(self.counts)]


def min_cut_histogram(topology: Topology) -> MinCutHistogram:
    """All-pairs min edge cut of the active subgraph, as a histogram."""
    if not topology.is_connected():
        raise TopologyError("active subgraph is disconnected")
    n = topology.node_count
    parent, weight = cut_tree(topology)
    # Merge tree edges heaviest first; a merge of components A and B at
    # weight w fixes the min cut of all |A|*|B| pairs it joins to w.
    root = list(range(n))
    size = [1] * n

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    counts: dict[int, int] = {}
    for i in sorted(range(1, n), key=lambda i: (-weight[i], i)):
        a, b = find(i), find(int(parent[i]))
        w = int(weight[i])
        counts[w] = counts.get(w, 0) + size[a] * size[b]
        if size[a] < size[b]:
            a, b = b, a
        root[b] = a
        size[a] += size[b]
    return MinCutHistogram(dict(sorted(counts.items())), n * (n - 1) // 2)
