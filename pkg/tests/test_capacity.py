import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from linksleep.capacity import critical_rate, max_flow_value, min_cut_histogram, rc_removal_curve
from linksleep.graph import Topology, TopologyError

from oracles import greedy_disjoint_shortest_paths, pairwise_min_cut, random_connected, random_tree, rc_from_oracle


def oracle_histogram(topo):
    counts = {}
    for value in pairwise_min_cut(topo).values():
        counts[value] = counts.get(value, 0) + 1
    return dict(sorted(counts.items()))


@pytest.mark.parametrize("name, r_c, edge", [("k2", 2.0, 0), ("p3", 3.0, 0), ("k4", 12.0, 0), ("c4", 6.0, 0)])
def test_anchor_rates(request, name, r_c, edge):
    est = critical_rate(request.getfixturevalue(name))
    assert est.r_c == r_c
    assert est.bottleneck_edge == edge
    assert est.qos_alpha == 1.0


def test_alpha_scales(k4):
    assert critical_rate(k4, alpha=0.5).r_c == 6.0


@pytest.mark.parametrize("alpha", [0.0, -1.0, 1.5])
def test_alpha_out_of_range(k4, alpha):
    with pytest.raises(ValueError, match="alpha"):
        critical_rate(k4, alpha)


def test_disconnected_rejected(p3):
    p3.deactivate(1)
    with pytest.raises(TopologyError):
        critical_rate(p3)


def test_matches_oracle():
    rng = np.random.default_rng(23)
    for _ in range(20):
        topo = random_connected(rng, int(rng.integers(2, 13)))
        assert abs(critical_rate(topo).r_c - rc_from_oracle(topo)) <= 1e-9


def test_removal_curve_c4(c4):
    # C4 has B = 4 on every edge; removing one leaves P4 whose middle edge carries 8
    assert rc_removal_curve(c4, [3]) == [(0, 6.0), (1, 3.0)]
    assert c4.active_edge_count() == 4


def test_removal_curve_tree(star3):
    assert rc_removal_curve(star3, []) == [(0, 4.0)]


def test_removal_curve_reports_disconnecting_index(c4):
    with pytest.raises(TopologyError, match="removal 2"):
        rc_removal_curve(c4, [0, 1])


def test_tree_histogram():
    topo = random_tree(np.random.default_rng(1), 9)
    hist = min_cut_histogram(topo)
    assert hist.counts == {1: 36} and hist.total_pairs == 36


def test_c4_k4_histograms(c4, k4):
    assert min_cut_histogram(c4).counts == {2: 6}
    assert min_cut_histogram(k4).counts == {3: 6}
    assert min_cut_histogram(k4).distribution() == [(3, 1.0)]


def test_histogram_matches_pairwise_flow():
    rng = np.random.default_rng(29)
    for _ in range(20):
        topo = random_connected(rng, int(rng.integers(2, 13)))
        hist = min_cut_histogram(topo)
        assert hist.counts == oracle_histogram(topo)
        assert sum(hist.counts.values()) == hist.total_pairs


def test_max_flow_matches_oracle():
    topo = random_connected(np.random.default_rng(4), 10, extra=12)
    ref = pairwise_min_cut(topo)
    for (i, j), value in ref.items():
        assert max_flow_value(topo, i, j) == value


def test_histogram_disconnected_raises(p3):
    p3.deactivate(0)
    with pytest.raises(TopologyError):
        min_cut_histogram(p3)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 11), st.integers(0, 2**32 - 1))
def test_removal_never_raises_a_cut(n, seed):
    rng = np.random.default_rng(seed)
    topo = random_connected(rng, n, extra=int(rng.integers(1, n + 3)))
    non_bridges = np.flatnonzero(~topo.bridges() & topo.active_mask)
    if len(non_bridges) == 0:
        return
    before = pairwise_min_cut(topo)
    topo.deactivate(int(rng.choice(non_bridges)))
    after = pairwise_min_cut(topo)
    assert all(after[p] <= before[p] for p in before)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**32 - 1))
def test_cut_bounds_disjoint_shortest_paths(n, seed):
    topo = random_connected(np.random.default_rng(seed), n)
    cuts = pairwise_min_cut(topo)
    for s, t in itertools.combinations(range(n), 2):
        assert greedy_disjoint_shortest_paths(topo, s, t) <= cuts[(s, t)]
