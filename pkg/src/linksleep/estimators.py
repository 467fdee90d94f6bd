"""scikit-learn style wrappers around the powerdown and traffic models."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .capacity import critical_rate
from .energy import energy_savings, sleeping_prefix
from .schemes import SchemeConfig, replay_trace, run_scheme
from .simulation import ORDER_THRESHOLD, SimConfig, locate_transition, simulate
from .validation import check_alpha, check_seed, check_topology


class LinkPowerdown(BaseEstimator):
    """Learn a link powerdown order for a topology.

    Parameters
    ----------
    scheme : {"random", "sbf", "lbf", "hybrid"}
    window : int
        Phase-transition window for the hybrid scheme.
    alpha : float
        QoS scaling of the critical rate, in (0, 1].
    random_state : int
        Seed for the random and hybrid schemes.

    Attributes
    ----------
    trace_ : PowerdownTrace
    r0_ : float
        Critical rate of the intact topology.
    r_values_ : ndarray
        Critical rate after each removal.
    kappa_ : int or None
        Switch point of the hybrid scheme.
    """

    def __init__(self, scheme="sbf", window=20, alpha=1.0, random_state=0):
        self.scheme = scheme
        self.window = window
        self.alpha = alpha
        self.random_state = random_state

    def fit(self, X, y=None):
        topo = check_topology(X)
        config = SchemeConfig(self.scheme, check_seed(self.random_state), int(self.window))
        self.trace_ = run_scheme(topo, config, check_alpha(self.alpha))
        self.topology_ = topo.copy()
        self.r0_ = self.trace_.r0
        self.r_values_ = np.asarray(self.trace_.r_values)
        self.removals_ = np.asarray(self.trace_.removals, dtype=np.int64)
        self.kappa_ = self.trace_.kappa
        return self

    def transform(self, X=None, load=0.0):
        """Topology with every link that may sleep at ``load`` (fraction of ``R_0``) powered down."""
        check_is_fitted(self, "trace_")
        topo = self.topology_ if X is None else check_topology(X)
        k = sleeping_prefix(self.trace_.r_values, load * self.trace_.r0)
        return replay_trace(topo, self.trace_, k)

    def predict(self, loads):
        """Fraction of links that must stay active at each load fraction."""
        check_is_fitted(self, "trace_")
        m = self.trace_.edge_count
        loads = np.atleast_1d(np.asarray(loads, dtype=np.float64))
        return np.array(
            [(m - sleeping_prefix(self.trace_.r_values, p * self.trace_.r0)) / m for p in loads]
        )

    def score(self, X=None, y=None):
        """Energy savings ratio of the fitted trace."""
        check_is_fitted(self, "trace_")
        return energy_savings(self.trace_).savings_ratio


class TrafficSimulator(BaseEstimator):
    """Packet-level traffic model with a bisection-located critical rate.

    ``fit`` stores the topology and its analytic critical rate; ``predict``
    maps injection rates to order parameters.
    """

    def __init__(self, steps=4000, warmup=1000, random_state=0, threshold=ORDER_THRESHOLD):
        self.steps = steps
        self.warmup = warmup
        self.random_state = random_state
        self.threshold = threshold

    def fit(self, X, y=None):
        self.topology_ = check_topology(X, copy=True)
        self.analytic_rate_ = critical_rate(self.topology_).r_c
        return self

    def _config(self, rate):
        return SimConfig(int(rate), int(self.steps), int(self.warmup), check_seed(self.random_state))

    def predict(self, rates):
        check_is_fitted(self, "topology_")
        return np.array(
            [simulate(self.topology_, self._config(r)).order_parameter for r in np.atleast_1d(rates)]
        )

    def locate(self, r_low=None, r_high=None):
        """Empirical critical rate; brackets default to half and twice the analytic value."""
        check_is_fitted(self, "topology_")
        lo = max(1, int(self.analytic_rate_ / 2)) if r_low is None else r_low
        hi = int(2 * self.analytic_rate_) + 1 if r_high is None else r_high
        self.empirical_rate_ = locate_transition(
            self.topology_, self._config(1), lo, hi, self.threshold
        )
        return self.empirical_rate_
