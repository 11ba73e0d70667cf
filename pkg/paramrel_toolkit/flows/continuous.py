"""gaussian input distributions: bayesian update, its inverse, sender and flow

parameters carry a mean per dimension and one precision shared by every
dimension of a row (all updates apply the same accuracy to each dimension)

>>> p = bayes_update_continuous(prior_continuous(1), np.array([2.0]), 1.0)
>>> p.mu, float(p.rho)
(array([1.]), 2.0)
>>> q = inverse_update_continuous(p, np.array([2.0]), 1.0)
>>> q.mu, float(q.rho)
(array([0.]), 1.0)
"""

from __future__ import annotations

import dataclasses

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.schedules import (
    AccuracySchedule,
    beta_at,
    gamma_at,
)

from ._base import (
    SenderSample,
    column,
    require_finite,
)


__all__ = (
    "ContinuousParams",
    "bayes_update_continuous",
    "flow_mean_continuous",
    "inverse_update_continuous",
    "kl_sender_receiver_continuous",
    "prior_continuous",
    "sample_flow_continuous",
    "sample_sender_continuous",
)


@dataclasses.dataclass(frozen=True)
class ContinuousParams:
    mu: np.ndarray
    """means, shape (..., D)"""
    rho: np.ndarray
    """precisions, one per row: shape `mu.shape[:-1]`"""

    def __post_init__(self):
        _rho = np.asarray(self.rho, dtype=np.float64)
        if _rho.shape != np.shape(self.mu)[:-1]:
            _rho = np.broadcast_to(_rho, np.shape(self.mu)[:-1]).copy()
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=np.float64))
        object.__setattr__(self, "rho", _rho)
        if np.any(_rho <= 0) or not np.all(np.isfinite(_rho)):
            raise exceptions.DataError(f"precision must be positive and finite: {_rho!r}")


def prior_continuous(D: int, batch: tuple[int, ...] = ()) -> ContinuousParams:
    return ContinuousParams(mu=np.zeros(batch + (D,)), rho=np.ones(batch))


def bayes_update_continuous(p: ContinuousParams, y, alpha) -> ContinuousParams:
    _y = require_finite(y, "sender sample")
    _alpha = np.asarray(alpha, dtype=np.float64)
    if np.any(_alpha < 0):
        raise exceptions.UsageError(f"accuracy must be nonnegative: {_alpha!r}")
    _rho = p.rho + _alpha
    _mu = (column(p.rho) * p.mu + column(_alpha) * _y) / column(_rho)
    return ContinuousParams(mu=_mu, rho=_rho)


def inverse_update_continuous(p_next: ContinuousParams, y, alpha) -> ContinuousParams:
    _y = require_finite(y, "sender sample")
    _alpha = np.asarray(alpha, dtype=np.float64)
    _rho = p_next.rho - _alpha
    if np.any(_rho <= 0):
        raise exceptions.SingularInverse(
            f"precision {p_next.rho!r} does not exceed accuracy {_alpha!r}"
        )
    _mu = (column(p_next.rho) * p_next.mu - column(_alpha) * _y) / column(_rho)
    return ContinuousParams(mu=_mu, rho=_rho)


def sample_sender_continuous(x0, alpha, rng: np.random.Generator) -> SenderSample:
    """`y ~ N(x0, 1/alpha)`"""
    _x0 = np.asarray(x0, dtype=np.float64)
    _alpha = np.asarray(alpha, dtype=np.float64)
    if np.any(_alpha <= 0):
        raise exceptions.UsageError(f"sender accuracy must be positive: {_alpha!r}")
    _noise = rng.standard_normal(_x0.shape)
    return SenderSample(y=_x0 + _noise / np.sqrt(column(_alpha)), alpha=_alpha)


def flow_mean_continuous(x0, t, sched: AccuracySchedule) -> ContinuousParams:
    """the flow distribution's mean parameters at step `t` (no noise)"""
    _x0 = np.asarray(x0, dtype=np.float64)
    _gamma = _per_row(gamma_at(sched, t), _x0)
    return ContinuousParams(
        mu=column(_gamma) * _x0,
        rho=1.0 + _per_row(beta_at(sched, t), _x0),
    )


def sample_flow_continuous(
    x0, t, sched: AccuracySchedule, rng: np.random.Generator
) -> ContinuousParams:
    """one draw of the parameters at step `t`: `mu ~ N(gamma x0, gamma (1 - gamma))`"""
    _mean = flow_mean_continuous(x0, t, sched)
    _gamma = _per_row(gamma_at(sched, t), _mean.mu)
    _noise = rng.standard_normal(_mean.mu.shape)
    return ContinuousParams(
        mu=_mean.mu + column(np.sqrt(_gamma * (1.0 - _gamma))) * _noise,
        rho=_mean.rho,
    )


def kl_sender_receiver_continuous(x0, xhat, alpha) -> float:
    """`KL(N(x0, 1/alpha) || N(xhat, 1/alpha)) = alpha/2 * |x0 - xhat|^2`"""
    _diff = np.asarray(x0, dtype=np.float64) - np.asarray(xhat, dtype=np.float64)
    return float(0.5 * float(alpha) * np.sum(_diff * _diff))


def _per_row(values, x0: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(values, dtype=np.float64), x0.shape[:-1])
