"""Edge-list serialisation and Rocketfuel ``.cch`` ingestion.

Edge-list format: UTF-8 text, one ``u v`` pair of non-negative decimal
integers per line, ``#`` lines and blank lines ignored. Node labels are
re-indexed to ``0..N-1`` in ascending label order and edges are stored in
canonical ``(min endpoint, max endpoint)`` order, which fixes edge ids.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import Topology


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _relabel(pairs: list[tuple[int, int]]) -> tuple[int, list[tuple[int, int]]]:
    labels = sorted({x for p in pairs for x in p})
    index = {lab: i for i, lab in enumerate(labels)}
    return len(labels), [(index[u], index[v]) for u, v in pairs]


def parse_edge_list(text: str, strict: bool = True) -> Topology:
    """Parse an edge list into a :class:`Topology`.

    With ``strict`` a self-loop or a repeated undirected edge raises
    :class:`ParseError`; otherwise they are dropped silently.
    """
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {raw!r}", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"non-integer node id in {raw!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative node id in {raw!r}", lineno)
        if u == v:
            if strict:
                raise ParseError(f"self-loop on node {u}", lineno)
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            if strict:
                raise ParseError(f"duplicate edge {key}, first seen on line {seen[key]}", lineno)
            continue
        seen[key] = lineno
    if not seen:
        raise ParseError("edge list contains no edges")
    n, pairs = _relabel(list(seen))
    return Topology(n, sorted((min(u, v), max(u, v)) for u, v in pairs))


def write_edge_list(topology: Topology, active_only: bool = False) -> str:
    """Canonical edge list, no trailing newline."""
    edges = topology.edges[topology.active_mask] if active_only else topology.edges
    pairs = sorted((int(min(u, v)), int(max(u, v))) for u, v in edges)
    return "\n".join(f"{u} {v}" for u, v in pairs)


def read_edge_list(path, strict: bool = True) -> Topology:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"), strict=strict)


# --- Rocketfuel ---------------------------------------------------------------

# Internal router record, e.g.
#   12 @Seattle,+WA + bb (3) &1 -> <13> <14> <20> {-1} =r1.sea.example.net r0
# External records start with a negative uid ("-1 =peer.example.net").
_NEIGHBOR = re.compile(r"<(\d+)>")


@dataclass
class IngestionReport:
    """Counts removed at each ingestion stage."""

    records: int = 0
    external_records: int = 0
    internal_nodes: int = 0
    non_backbone_dropped: int = 0
    foreign_links_dropped: int = 0
    self_loops_dropped: int = 0
    duplicate_links_merged: int = 0
    links: int = 0
    outside_giant_nodes: int = 0
    outside_giant_links: int = 0
    nodes: int = 0
    edges: int = 0
    uid_of_node: list[int] = field(default_factory=list, repr=False)

    def lines(self) -> list[str]:
        keys = [k for k in self.__dataclass_fields__ if k != "uid_of_node"]
        return [f"{k}={getattr(self, k)}" for k in keys]


def _cch_files(source) -> list[Path]:
    path = Path(source)
    if path.is_dir():
        files = sorted(path.glob("*.cch"))
        if not files:
            raise FileNotFoundError(f"no .cch files under {path}")
        return files
    if not path.exists():
        raise FileNotFoundError(path)
    return [path]


def ingest_rocketfuel(source, backbone_only: bool = False) -> tuple[Topology, IngestionReport]:
    """Router-level topology from Rocketfuel ``.cch`` maps.

    Drops external records and links to routers without an internal record,
    merges the two directions of each link, keeps the largest connected
    component and re-indexes routers by ascending uid. ``backbone_only``
    additionally drops routers not tagged ``bb``.
    """
    rep = IngestionReport()
    adjacency: dict[int, list[int]] = {}
    backbone: set[int] = set()
    for path in _cch_files(source):
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            rep.records += 1
            head = line.split(None, 1)[0]
            if head.startswith("-"):
                rep.external_records += 1
                continue
            if not head.isdigit():
                raise ParseError(f"{path.name}: unrecognised record {raw!r}", lineno)
            uid = int(head)
            left, arrow, right = line.partition("->")
            neigh = [int(x) for x in _NEIGHBOR.findall(right)] if arrow else []
            adjacency.setdefault(uid, []).extend(neigh)
            if re.search(r"\sbb(\s|$)", left):
                backbone.add(uid)
    rep.internal_nodes = len(adjacency)
    keep = set(adjacency)
    if backbone_only:
        keep &= backbone
        rep.non_backbone_dropped = len(adjacency) - len(keep)
    links: set[tuple[int, int]] = set()
    for u in sorted(keep):
        for v in adjacency[u]:
            if v not in keep:
                rep.foreign_links_dropped += 1
            elif u == v:
                rep.self_loops_dropped += 1
            elif (min(u, v), max(u, v)) in links:
                rep.duplicate_links_merged += 1
            else:
                links.add((min(u, v), max(u, v)))
    rep.links = len(links)
    nodes = sorted({x for p in links for x in p})
    if not nodes:
        raise ParseError("no internal links left after filtering")
    index = {uid: i for i, uid in enumerate(nodes)}
    full = Topology(len(nodes), sorted((index[u], index[v]) for u, v in links))
    labels = full.component_labels()
    giant = int(np.bincount(labels).argmax())
    in_giant = labels == giant
    kept_uids = [uid for uid, ok in zip(nodes, in_giant) if ok]
    gidx = {uid: i for i, uid in enumerate(kept_uids)}
    glinks = sorted((gidx[u], gidx[v]) for u, v in links if u in gidx and v in gidx)
    rep.outside_giant_nodes = len(keep) - len(kept_uids)
    rep.outside_giant_links = len(links) - len(glinks)
    rep.nodes, rep.edges = len(kept_uids), len(glinks)
    rep.uid_of_node = kept_uids
    return Topology(len(kept_uids), glinks), rep
