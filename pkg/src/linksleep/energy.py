"""Energy savings of a powerdown trace over the traffic cool-down period.

Demand falls one unit per time step from ``floor(R_0)`` to ``floor(R_h)``.
At demand ``R`` the first ``k`` links of the trace may sleep as long as
every intermediate capacity ``R_1..R_k`` still covers ``R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .schemes import PowerdownTrace


def sleeping_prefix(r_values: Sequence[float], demand: float) -> int:
    """Largest ``k`` with ``R_i >= demand`` for all ``i <= k`` (0 if none)."""
    k = 0
    for r in r_values:
        if r < demand:
            break
        k += 1
    return k


def _sleep_units(r0: float, r_values: Sequence[float]) -> int:
    if not r_values:
        return 0
    lo, hi = math.floor(r_values[-1]), math.floor(r0)
    # Running minimum turns each prefix scan into a binary search.
    prefix_min = np.minimum.accumulate(np.asarray(r_values, dtype=np.float64))
    demands = np.arange(lo, hi + 1, dtype=np.float64)
    ks = np.searchsorted(-prefix_min, -demands, side="right")
    return int(ks.sum())


def sleep_units(trace: PowerdownTrace) -> int:
    """Total link-time units asleep while demand drops from ``floor(R_0)`` to ``floor(R_h)``."""
    return _sleep_units(trace.r0, trace.r_values)


@dataclass(frozen=True)
class EnergyReport:
    sleep_units: int
    max_active_units: int
    savings_ratio: float
    curve: list[tuple[float, float]] = field(default_factory=list)
    scheme: str = ""
    network: str = ""
    seed: int = 0


def energy_savings(
    trace: PowerdownTrace, edge_count_m: int | None = None, grid_points: int = 100
) -> EnergyReport:
    """SLEEP units relative to keeping all ``M`` links on for the whole period."""
    m = trace.edge_count if edge_count_m is None else edge_count_m
    sleep = sleep_units(trace)
    span = math.floor(trace.r0) - math.floor(trace.r_last)
    if span <= 0:
        raise ValueError(
            f"degenerate cool-down: floor(R_0)={math.floor(trace.r0)} "
            f"does not exceed floor(R_h)={math.floor(trace.r_last)}"
        )
    denom = m * span
    ratio = sleep / denom
    if ratio > 1.0:
        raise ValueError(f"savings ratio {ratio} exceeds 1; trace and M disagree")
    return EnergyReport(
        sleep_units=sleep,
        max_active_units=denom,
        savings_ratio=ratio,
        curve=active_links_curve(trace, m, grid_points),
        scheme=trace.scheme,
        network=trace.network,
        seed=trace.seed,
    )


def active_links_curve(
    trace: PowerdownTrace, edge_count_m: int | None = None, grid_points: int = 100
) -> list[tuple[float, float]]:
    """Fraction of links that must stay on versus load (fraction of ``R_0``).

    Loads form a uniform grid of ``grid_points`` values over
    ``(R_h / R_0, 1]``.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    m = trace.edge_count if edge_count_m is None else edge_count_m
    lo = trace.r_last / trace.r0
    loads = np.linspace(lo, 1.0, grid_points + 1)[1:]
    return [
        (float(p), (m - sleeping_prefix(trace.r_values, p * trace.r0)) / m) for p in loads
    ]


def savings_summary(reports: Sequence[EnergyReport]) -> list[dict]:
    """Mean and sample standard deviation of savings per (network, scheme)."""
    groups: dict[tuple[str, str], list[float]] = {}
    for rep in reports:
        groups.setdefault((rep.network, rep.scheme), []).append(rep.savings_ratio)
    rows = []
    for (network, scheme), vals in sorted(groups.items()):
        arr = np.asarray(vals)
        rows.append(
            {
                "network": network,
                "scheme": scheme,
                "runs": len(arr),
                "mean": float(arr.mean()),
                "std": float(arr.std(ddof=1)) if len(arr) > 1 else 0.0,
            }
        )
    return rows
