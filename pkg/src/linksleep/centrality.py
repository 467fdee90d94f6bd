"""Exact edge betweenness over ordered node pairs.

``B(e)`` sums, over every ordered pair ``(i, j)`` with ``i != j``, the
fraction of shortest ``i -> j`` paths that use ``e``. Each unordered pair
therefore contributes twice, which is the convention under which the
critical rate is ``2N(N-1) / B_max``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numba
import numpy as np

from .graph import Topology, TopologyError


@numba.njit(cache=True)
def _brandes_edges(n, m, indptr, nbr, eid):
    # Sources in ascending order, one BFS + reverse sweep each; the fixed
    # order keeps float accumulation bit-reproducible.
    bet = np.zeros(m, dtype=np.float64)
    dist = np.empty(n, dtype=np.int64)
    sigma = np.empty(n, dtype=np.float64)
    delta = np.empty(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    reached = n
    for s in range(n):
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = order[head]
            head += 1
            du = dist[u]
            for k in range(indptr[u], indptr[u + 1]):
                w = nbr[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == du + 1:
                    sigma[w] += sigma[u]
        if tail < reached:
            reached = tail
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            dw = dist[w]
            coeff = (1.0 + delta[w]) / sigma[w]
            for k in range(indptr[w], indptr[w + 1]):
                v = nbr[k]
                if dist[v] == dw - 1:
                    c = sigma[v] * coeff
                    bet[eid[k]] += c
                    delta[v] += c
    return bet, reached


def edge_betweenness_array(topology: Topology) -> np.ndarray:
    """Betweenness indexed by edge id (inactive edges hold 0).

    Raises :class:`TopologyError` if the active subgraph is disconnected.
    """
    indptr, nbr, eid = topology.csr()
    bet, reached = _brandes_edges(topology.node_count, topology.edge_count, indptr, nbr, eid)
    if reached < topology.node_count:
        raise TopologyError("active subgraph is disconnected")
    return bet


# Relative width within which two betweenness values count as tied.
TIE_RTOL = 1e-12


def argbest(values: np.ndarray, candidates: np.ndarray, largest: bool) -> int:
    """Edge id among ``candidates`` with extreme value, smallest id on ties."""
    vals = values[candidates]
    target = vals.max() if largest else vals.min()
    tol = TIE_RTOL * max(abs(target), 1.0)
    tied = candidates[np.abs(vals - target) <= tol]
    return int(tied.min())


@dataclass(frozen=True)
class EdgeBetweennessMap:
    """Betweenness of the active edges of one topology snapshot.

    ``edge_ids`` is ascending; ``values[k]`` belongs to ``edge_ids[k]``.
    Pair convention is always ordered pairs.
    """

    edge_ids: np.ndarray
    values: np.ndarray
    endpoints: np.ndarray
    pair_convention: str = "ordered"

    def __len__(self) -> int:
        return len(self.edge_ids)

    def as_dict(self) -> dict[int, float]:
        return {int(e): float(v) for e, v in zip(self.edge_ids, self.values)}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["edge_id", "u", "v", "betweenness"])
        for e, (u, v), b in zip(self.edge_ids, self.endpoints, self.values):
            writer.writerow([int(e), int(u), int(v), repr(float(b))])
        return buf.getvalue()


def edge_betweenness(topology: Topology) -> EdgeBetweennessMap:
    bet = edge_betweenness_array(topology)
    ids = topology.active_edge_ids()
    values = bet[ids]
    values.setflags(write=False)
    return EdgeBetweennessMap(ids, values, topology.edges[ids])


def max_edge_betweenness(bmap: EdgeBetweennessMap) -> tuple[int, float]:
    """Largest betweenness and its edge; ties go to the smallest edge id."""
    if len(bmap) == 0:
        raise ValueError("empty betweenness map")
    k = argbest(bmap.values, np.arange(len(bmap)), largest=True)
    return int(bmap.edge_ids[k]), float(bmap.values.max())


def betweenness_cdf(bmap: EdgeBetweennessMap) -> list[tuple[float, float]]:
    """Empirical CDF as ``(value, P[B <= value])`` over distinct values."""
    if len(bmap) == 0:
        return []
    vals, counts = np.unique(bmap.values, return_counts=True)
    cum = np.cumsum(counts) / counts.sum()
    cum[-1] = 1.0
    return [(float(v), float(p)) for v, p in zip(vals, cum)]


def top_share(bmap: EdgeBetweennessMap, fraction: float = 0.05) -> float:
    """Share of total betweenness held by the top ``fraction`` of edges."""
    vals = np.sort(bmap.values)[::-1]
    k = max(1, int(np.ceil(fraction * len(vals))))
    return float(vals[:k].sum() / vals.sum())
