"""the continuous flow distribution of a scalar input, as numbers on a grid

every column holds `log p_F(mu | x0; t)` per mean bin for one step, with
`t` running from the prior (`T`) down to full information (`0`); the
trajectories are independent runs of sequential sender updates
"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np
from scipy import special

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.flows import (
    bayes_update_continuous,
    prior_continuous,
    sample_sender_continuous,
)
from paramrel_toolkit.schedules import (
    AccuracySchedule,
    alpha_at,
    gamma_at,
)


__all__ = (
    "FlowHeatmap",
    "export_flow_heatmap",
    "heatmap_edges",
)

_logger = logging.getLogger(__name__)

_LOG_FLOOR = 1e-300


@dataclasses.dataclass(frozen=True)
class FlowHeatmap:
    x0: float
    ts: np.ndarray
    """column steps, `T` first"""
    edges: np.ndarray
    """bin edges over the mean, `bins + 1` of them"""
    log_density: np.ndarray
    """(len(ts), bins)"""
    trajectories: np.ndarray
    """(n_trajectories, len(ts)) means, aligned with `ts`"""

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def density_rows(self) -> list[tuple[int, float, float]]:
        return [
            (int(_t), float(_mu), float(_value))
            for _t, _column in zip(self.ts, self.log_density)
            for _mu, _value in zip(self.centers, _column)
        ]

    def trajectory_rows(self) -> list[tuple[int, int, float]]:
        return [
            (_index, int(_t), float(_mu))
            for _index, _path in enumerate(self.trajectories)
            for _t, _mu in zip(self.ts, _path)
        ]


def heatmap_edges(x0: float, bins: int) -> np.ndarray:
    _reach = 1.5 * abs(x0) + 1.0
    return np.linspace(-_reach, _reach, bins + 1)


def export_flow_heatmap(
    x0: float,
    sched: AccuracySchedule,
    bins: int = 200,
    n_trajectories: int = 10,
    rng: np.random.Generator | None = None,
) -> FlowHeatmap:
    if sched.kind is not DataKind.CONTINUOUS:
        raise exceptions.UsageError("the flow heatmap is defined for continuous schedules only")
    if bins < 2:
        raise exceptions.UsageError(f"need at least 2 bins (got {bins})")
    if n_trajectories > 0 and rng is None:
        raise exceptions.UsageError("trajectories need a random generator")
    _edges = heatmap_edges(x0, bins)
    _ts = np.arange(sched.T, -1, -1)
    _log_density = np.stack([_column(x0, float(gamma_at(sched, _t)), _edges) for _t in _ts])
    _trajectories = (
        _simulate(x0, sched, n_trajectories, rng)
        if n_trajectories > 0
        else np.zeros((0, _ts.size))
    )
    _logger.debug("flow heatmap: %d columns x %d bins, %d trajectories", _ts.size, bins, n_trajectories)
    return FlowHeatmap(
        x0=float(x0),
        ts=_ts,
        edges=_edges,
        log_density=_log_density,
        trajectories=_trajectories,
    )


###
# local helpers


def _column(x0: float, gamma: float, edges: np.ndarray) -> np.ndarray:
    """log of the mean bin density of `N(gamma x0, gamma (1 - gamma))`"""
    _widths = np.diff(edges)
    _variance = gamma * (1.0 - gamma)
    _mass = np.zeros(_widths.size)
    if _variance <= 0.0:
        # a point mass: all of it in the bin holding the mean
        _bin = np.searchsorted(edges, gamma * x0, side="right") - 1
        _mass[np.clip(_bin, 0, _widths.size - 1)] = 1.0
    else:
        _cdf = special.ndtr((edges - gamma * x0) / np.sqrt(_variance))
        _mass = np.diff(_cdf)
    return np.log(np.clip(_mass, _LOG_FLOOR, None)) - np.log(_widths)


def _simulate(
    x0: float, sched: AccuracySchedule, n: int, rng: np.random.Generator
) -> np.ndarray:
    _x0 = np.full((n, 1), float(x0))
    _theta = prior_continuous(1, (n,))
    _means = [_theta.mu[:, 0]]
    for _t in sched.steps:
        _alpha = float(alpha_at(sched, _t))
        _theta = bayes_update_continuous(
            _theta, sample_sender_continuous(_x0, _alpha, rng).y, _alpha
        )
        _means.append(_theta.mu[:, 0])
    return np.stack(_means, axis=1)
