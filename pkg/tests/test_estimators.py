import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from linksleep.energy import energy_savings
from linksleep.estimators import LinkPowerdown, TrafficSimulator
from linksleep.generators import GenSpec, generate
from linksleep.graph import TopologyError
from linksleep.schemes import SchemeConfig, run_scheme
from linksleep.validation import check_alpha, check_seed, check_topology


@pytest.fixture(scope="module")
def er40():
    return generate(GenSpec("ER", 40, 80, seed=2))


def test_params_round_trip():
    est = LinkPowerdown(scheme="hybrid", window=10, alpha=0.5, random_state=3)
    assert est.get_params() == {"scheme": "hybrid", "window": 10, "alpha": 0.5, "random_state": 3}
    assert clone(est).get_params() == est.get_params()
    est.set_params(scheme="lbf")
    assert est.scheme == "lbf"


def test_fit_matches_run_scheme(er40):
    est = LinkPowerdown(scheme="random", random_state=4).fit(er40)
    trace = run_scheme(er40, SchemeConfig("random", seed=4))
    assert est.removals_.tolist() == trace.removals
    assert est.r0_ == trace.r0
    assert est.score() == energy_savings(trace).savings_ratio


def test_transform_and_predict(er40):
    est = LinkPowerdown().fit(er40)
    full = est.predict([1e9])[0]
    assert full == 1.0
    assert est.transform(load=1e9) == er40
    low = est.transform(load=0.0)
    assert low.spanning_tree_reached()
    fractions = est.predict(np.linspace(0.05, 1.0, 20))
    assert np.all(np.diff(fractions) >= 0)
    mid = est.transform(load=0.7)
    assert mid.active_edge_count() / er40.edge_count == pytest.approx(est.predict(0.7)[0])


def test_not_fitted():
    with pytest.raises(NotFittedError):
        LinkPowerdown().predict([0.5])


def test_accepts_networkx_and_arrays():
    g = nx.cycle_graph(5)
    a = LinkPowerdown().fit(g)
    b = LinkPowerdown().fit(np.array(sorted(g.edges())))
    assert a.removals_.tolist() == b.removals_.tolist() == [0]


def test_validation_errors():
    with pytest.raises(TopologyError):
        check_topology(np.array([[0, 1], [2, 3]]))
    with pytest.raises(TopologyError):
        check_topology(nx.DiGraph([(0, 1)]))
    with pytest.raises(TopologyError):
        check_topology(np.array([0.5, 1.5]))
    with pytest.raises(ValueError):
        check_alpha(0)
    with pytest.raises(ValueError):
        check_seed(-1)
    with pytest.raises(ValueError):
        LinkPowerdown(alpha=2.0).fit(nx.path_graph(3))


def test_traffic_simulator(k2):
    sim = TrafficSimulator(steps=1000, warmup=200).fit(k2)
    assert sim.analytic_rate_ == 2.0
    eta = sim.predict([1, 4])
    assert eta[0] == pytest.approx(0.0, abs=1e-3) and eta[1] > 0.3
    assert 1 <= sim.locate() <= 3
