"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

import numbers

import numpy as np

from .graph import Topology, TopologyError


def check_topology(X, require_connected: bool = True, copy: bool = False) -> Topology:
    """Coerce ``X`` into a :class:`Topology`.

    Accepts a ``Topology``, a networkx graph with integer nodes, or an
    ``(M, 2)`` array-like of edges over nodes ``0..N-1``.
    """
    if isinstance(X, Topology):
        topo = X.copy() if copy else X
    elif hasattr(X, "nodes") and hasattr(X, "edges"):
        if X.is_directed() or X.is_multigraph():
            raise TopologyError("only simple undirected graphs are supported")
        nodes = sorted(X.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        pairs = sorted((min(index[u], index[v]), max(index[u], index[v])) for u, v in X.edges())
        topo = Topology(len(nodes), pairs)
    else:
        arr = np.asarray(X)
        if arr.ndim != 2 or arr.shape[1] != 2 or not np.issubdtype(arr.dtype, np.integer):
            raise TopologyError("expected a Topology, a networkx graph or an (M, 2) integer edge array")
        n = int(arr.max()) + 1 if arr.size else 1
        topo = Topology(n, arr)
    if require_connected and not topo.is_connected():
        raise TopologyError("active subgraph is disconnected")
    return topo


def check_alpha(alpha) -> float:
    if not isinstance(alpha, numbers.Real) or not 0.0 < float(alpha) <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    return float(alpha)


def check_seed(seed) -> int:
    if seed is None:
        return 0
    if not isinstance(seed, numbers.Integral) or seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)
