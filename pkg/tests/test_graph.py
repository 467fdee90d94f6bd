import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from linksleep.graph import Topology, TopologyError

from oracles import bfs_connected, random_connected


def test_path_connectivity(p3):
    assert p3.is_connected()
    p3.deactivate(1)
    assert not p3.is_connected()


def test_deactivate_reactivate_roundtrip(c4):
    before = c4.active_mask.copy()
    c4.deactivate(0)
    assert c4.is_connected()
    c4.reactivate(0)
    assert np.array_equal(c4.active_mask, before)
    assert c4.edges.tolist() == [[0, 1], [1, 2], [2, 3], [0, 3]]


def test_tree_edge_removal_disconnects(star3):
    star3.deactivate(2)
    assert not star3.is_connected()


def test_spanning_tree_reached(c4):
    assert c4.active_edge_count() == 4
    assert not c4.spanning_tree_reached()
    c4.deactivate(3)
    assert c4.active_edge_count() == 3
    assert c4.spanning_tree_reached()


@pytest.mark.parametrize(
    "edges, message",
    [
        ([(0, 0)], "self-loop"),
        ([(0, 1), (1, 0)], "duplicate"),
        ([(0, 5)], "outside"),
    ],
)
def test_invalid_graphs_rejected(edges, message):
    with pytest.raises(TopologyError, match=message):
        Topology(3, edges)


def test_toggle_errors(p3):
    with pytest.raises(TopologyError, match="unknown"):
        p3.deactivate(7)
    with pytest.raises(TopologyError, match="already active"):
        p3.reactivate(0)
    p3.deactivate(0)
    with pytest.raises(TopologyError, match="already inactive"):
        p3.deactivate(0)


def test_edges_are_read_only(p3):
    with pytest.raises(ValueError):
        p3.edges[0, 0] = 2


def test_connectivity_matches_bfs_on_random_masks():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.integers(2, 31))
        topo = random_connected(rng, n, extra=int(rng.integers(0, 2 * n)))
        topo.active_mask[:] = rng.random(topo.edge_count) < rng.uniform(0.3, 1.0)
        assert topo.is_connected() == bfs_connected(topo)


def test_bridges_match_definition():
    rng = np.random.default_rng(5)
    for _ in range(30):
        topo = random_connected(rng, int(rng.integers(2, 15)), extra=int(rng.integers(0, 8)))
        bridges = topo.bridges()
        for e in range(topo.edge_count):
            topo.deactivate(e)
            assert bridges[e] == (not bfs_connected(topo))
            topo.reactivate(e)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 14), st.integers(0, 2**32 - 1))
def test_exactly_h_removals_reach_a_tree(n, seed):
    rng = np.random.default_rng(seed)
    topo = random_connected(rng, n)
    h = topo.edge_count - n + 1
    removed = 0
    while True:
        candidates = [e for e in topo.active_edge_ids() if not topo.bridges()[e]]
        if not candidates:
            break
        topo.deactivate(int(rng.choice(candidates)))
        removed += 1
    assert removed == h
    assert topo.spanning_tree_reached()
