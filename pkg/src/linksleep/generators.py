"""Reproducible ER and BA topology generators with exact edge counts.

Seeding: ``seed`` is passed to ``numpy.random.default_rng``, i.e. expanded
by ``SeedSequence`` into a PCG64 state. All draws go through that single
generator in a fixed order, so a (family, N, M, seed) tuple always yields
the same edge list for a given numpy major version. Edge ids are assigned
in canonical (min endpoint, max endpoint) order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Topology

ER_MAX_TRIES = 1000


class InfeasibleSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    node_count: int
    edge_count: int
    seed: int = 0

    def __post_init__(self):
        family = self.family.upper()
        if family not in ("ER", "BA"):
            raise ValueError(f"unknown family {self.family!r}; expected ER or BA")
        object.__setattr__(self, "family", family)
        n, m = self.node_count, self.edge_count
        if n < 1:
            raise InfeasibleSpecError("node_count must be positive")
        if m < n - 1:
            raise InfeasibleSpecError(f"{m} edges cannot connect {n} nodes (need >= {n - 1})")
        if m > n * (n - 1) // 2:
            raise InfeasibleSpecError(f"{m} edges exceed the {n * (n - 1) // 2} node pairs")


def canonical_topology(node_count: int, edges) -> Topology:
    pairs = sorted((min(u, v), max(u, v)) for u, v in edges)
    return Topology(node_count, pairs)


def generate_er(spec: GenSpec) -> Topology:
    """Connected uniform G(N, M) graph by rejection sampling."""
    if spec.family != "ER":
        raise ValueError("generate_er needs an ER spec")
    n, m = spec.node_count, spec.edge_count
    rng = np.random.default_rng(spec.seed)
    rows, cols = np.triu_indices(n, 1)
    for _ in range(ER_MAX_TRIES):
        picks = np.sort(rng.choice(len(rows), size=m, replace=False))
        topo = Topology(n, np.column_stack([rows[picks], cols[picks]]))
        if topo.is_connected():
            return topo
    raise InfeasibleSpecError(
        f"no connected G({n}, {m}) sample within {ER_MAX_TRIES} tries"
    )


def ba_attachment_m(n: int, m_total: int) -> int:
    """Largest per-node attachment count whose growth fits in ``m_total`` edges."""
    m = 1
    while m + 1 < n and (m + 1) * (m + 2) // 2 + (n - m - 2) * (m + 1) <= m_total:
        m += 1
    return m


def generate_ba(spec: GenSpec) -> Topology:
    """Preferential-attachment graph with exactly ``edge_count`` edges.

    Grows from a clique on ``m + 1`` nodes, each new node attaching to ``m``
    distinct existing nodes with probability proportional to degree. Any
    edges still missing are then added between non-adjacent pairs whose
    endpoints are both drawn proportionally to degree.
    """
    if spec.family != "BA":
        raise ValueError("generate_ba needs a BA spec")
    n, m_total = spec.node_count, spec.edge_count
    rng = np.random.default_rng(spec.seed)
    if n == 1:
        return Topology(1, [])
    m = ba_attachment_m(n, m_total)
    edges: set[tuple[int, int]] = set()
    # Each node appears in ``ends`` once per incident edge.
    ends: list[int] = []
    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            edges.add((u, v))
            ends += [u, v]
    for new in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(ends[int(rng.integers(len(ends)))])
        for t in sorted(targets):
            edges.add((t, new))
            ends += [t, new]
    misses = 0
    while len(edges) < m_total:
        if misses > 100 * m_total:
            # Near-complete targets: finish with a uniform pick of free pairs.
            free = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
            for k in rng.choice(len(free), size=m_total - len(edges), replace=False):
                edges.add(free[int(k)])
            break
        u = ends[int(rng.integers(len(ends)))]
        v = ends[int(rng.integers(len(ends)))]
        pair = (min(u, v), max(u, v))
        if u == v or pair in edges:
            misses += 1
            continue
        edges.add(pair)
        ends += [u, v]
    return canonical_topology(n, edges)


def generate(spec: GenSpec) -> Topology:
    return generate_er(spec) if spec.family == "ER" else generate_ba(spec)
