"""Undirected simple graph with mask-based edge removal.

Edges keep their integer ids for the lifetime of a :class:`Topology`;
powering a link down only flips its bit in ``active_mask``, so removal
sequences can be replayed forwards and backwards.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class TopologyError(ValueError):
    """Raised for invalid graphs or invalid edge state transitions."""


class Topology:
    """Undirected simple graph over nodes ``0..N-1``.

    Parameters
    ----------
    node_count : int
        Number of nodes ``N``.
    edges : sequence of (int, int)
        Edge list; the position of a pair is its edge id.
    active_mask : array-like of bool, optional
        Per-edge power state. Defaults to all active.
    """

    def __init__(self, node_count: int, edges: Iterable[Sequence[int]], active_mask=None):
        node_count = int(node_count)
        if node_count < 1:
            raise TopologyError(f"node_count must be positive, got {node_count}")
        arr = np.array([tuple(e) for e in edges], dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= node_count):
            raise TopologyError("edge references a node outside 0..N-1")
        if np.any(arr[:, 0] == arr[:, 1]):
            bad = int(np.flatnonzero(arr[:, 0] == arr[:, 1])[0])
            raise TopologyError(f"self-loop at edge {bad}: {tuple(arr[bad])}")
        keys = np.minimum(arr[:, 0], arr[:, 1]) * node_count + np.maximum(arr[:, 0], arr[:, 1])
        if len(np.unique(keys)) != len(keys):
            raise TopologyError("duplicate undirected edge")
        self.node_count = node_count
        self._edges = arr
        self._edges.setflags(write=False)
        if active_mask is None:
            self.active_mask = np.ones(len(arr), dtype=bool)
        else:
            mask = np.array(active_mask, dtype=bool)
            if mask.shape != (len(arr),):
                raise TopologyError("active_mask length does not match edge count")
            self.active_mask = mask

    @property
    def edges(self) -> np.ndarray:
        """Read-only ``(M, 2)`` array of endpoints indexed by edge id."""
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def __repr__(self) -> str:
        return (
            f"Topology(N={self.node_count}, M={self.edge_count}, "
            f"active={self.active_edge_count()})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Topology):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and np.array_equal(self._edges, other._edges)
            and np.array_equal(self.active_mask, other.active_mask)
        )

    def copy(self) -> "Topology":
        return Topology(self.node_count, self._edges, self.active_mask.copy())

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        self._check_edge(edge_id)
        u, v = self._edges[edge_id]
        return int(u), int(v)

    def active_edge_ids(self) -> np.ndarray:
        return np.flatnonzero(self.active_mask)

    def active_edge_count(self) -> int:
        return int(self.active_mask.sum())

    def _check_edge(self, edge_id) -> int:
        if not isinstance(edge_id, (int, np.integer)) or not 0 <= edge_id < self.edge_count:
            raise TopologyError(f"unknown edge id {edge_id!r}")
        return int(edge_id)

    def deactivate(self, edge_id: int) -> "Topology":
        """Power down ``edge_id`` in place and return ``self``."""
        e = self._check_edge(edge_id)
        if not self.active_mask[e]:
            raise TopologyError(f"edge {e} is already inactive")
        self.active_mask[e] = False
        return self

    def reactivate(self, edge_id: int) -> "Topology":
        """Power ``edge_id`` back up in place and return ``self``."""
        e = self._check_edge(edge_id)
        if self.active_mask[e]:
            raise TopologyError(f"edge {e} is already active")
        self.active_mask[e] = True
        return self

    def csr(self):
        """Adjacency of the active subgraph in CSR form.

        Returns ``(indptr, neighbors, edge_ids)``; neighbours of each node are
        listed in ascending edge-id order, each undirected edge twice.
        """
        ids = self.active_edge_ids()
        act = self._edges[ids]
        src = np.concatenate([act[:, 0], act[:, 1]])
        dst = np.concatenate([act[:, 1], act[:, 0]])
        eid = np.concatenate([ids, ids])
        order = np.lexsort((eid, src))
        src, dst, eid = src[order], dst[order], eid[order]
        indptr = np.zeros(self.node_count + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        return indptr, dst.astype(np.int64), eid.astype(np.int64)

    def adjacency_list(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for e in self.active_edge_ids():
            u, v = self._edges[e]
            adj[u].append(int(v))
            adj[v].append(int(u))
        return adj

    def degrees(self) -> np.ndarray:
        act = self._edges[self.active_mask]
        return np.bincount(act.ravel(), minlength=self.node_count)

    def component_labels(self) -> np.ndarray:
        """Connected-component label per node for the active subgraph."""
        indptr, nbr, _ = self.csr()
        labels = np.full(self.node_count, -1, dtype=np.int64)
        current = 0
        for start in range(self.node_count):
            if labels[start] >= 0:
                continue
            labels[start] = current
            stack = [start]
            while stack:
                u = stack.pop()
                for w in nbr[indptr[u]:indptr[u + 1]]:
                    if labels[w] < 0:
                        labels[w] = current
                        stack.append(int(w))
            current += 1
        return labels

    def is_connected(self) -> bool:
        """True iff the active edges connect all nodes."""
        if self.node_count == 1:
            return True
        if self.active_edge_count() < self.node_count - 1:
            return False
        return int(self.component_labels().max()) == 0

    def spanning_tree_reached(self) -> bool:
        return self.active_edge_count() == self.node_count - 1 and self.is_connected()

    def removable_budget(self) -> int:
        """Number of removals left before only a spanning tree remains."""
        return self.active_edge_count() - self.node_count + 1

    def bridges(self) -> np.ndarray:
        """Boolean mask over edge ids marking active bridges.

        Iterative Tarjan low-link; inactive edges are never bridges.
        """
        indptr, nbr, eid = self.csr()
        n = self.node_count
        disc = np.full(n, -1, dtype=np.int64)
        low = np.zeros(n, dtype=np.int64)
        out = np.zeros(self.edge_count, dtype=bool)
        timer = 0
        for root in range(n):
            if disc[root] >= 0:
                continue
            disc[root] = low[root] = timer
            timer += 1
            # frames: (node, parent edge id, next neighbour slot)
            stack = [[root, -1, indptr[root]]]
            while stack:
                frame = stack[-1]
                u, pe, i = frame
                if i < indptr[u + 1]:
                    frame[2] = i + 1
                    w, e = nbr[i], eid[i]
                    if e == pe:
                        continue
                    if disc[w] < 0:
                        disc[w] = low[w] = timer
                        timer += 1
                        stack.append([int(w), int(e), indptr[w]])
                    elif disc[w] < low[u]:
                        low[u] = disc[w]
                else:
                    stack.pop()
                    if stack:
                        p = stack[-1][0]
                        if low[u] < low[p]:
                            low[p] = low[u]
                        if low[u] > disc[p]:
                            out[pe] = True
        return out


def is_connected(topology: Topology) -> bool:
    return topology.is_connected()


def active_edge_count(topology: Topology) -> int:
    return topology.active_edge_count()


def spanning_tree_reached(topology: Topology) -> bool:
    return topology.spanning_tree_reached()
