from __future__ import annotations

import dataclasses

import numpy as np

from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.schedules import AccuracySchedule

from . import (
    continuous,
    discrete,
)
from ._base import (
    BayesianFlow,
    SenderSample,
)


__all__ = (
    "ContinuousFlow",
    "DiscreteFlow",
    "flow_for",
)


@dataclasses.dataclass(frozen=True)
class ContinuousFlow:
    kind: DataKind = DataKind.CONTINUOUS

    def prior(self, D: int, batch: tuple[int, ...] = ()) -> continuous.ContinuousParams:
        return continuous.prior_continuous(D, batch)

    def update(self, p, y, alpha) -> continuous.ContinuousParams:
        return continuous.bayes_update_continuous(p, y, alpha)

    def inverse_update(self, p_next, y, alpha) -> continuous.ContinuousParams:
        return continuous.inverse_update_continuous(p_next, y, alpha)

    def sample_flow(self, x0, t, sched: AccuracySchedule, rng: np.random.Generator):
        return continuous.sample_flow_continuous(x0, t, sched, rng)

    def flow_mean(self, x0, t, sched: AccuracySchedule):
        return continuous.flow_mean_continuous(x0, t, sched)

    def sender_sample(self, x0, alpha, rng: np.random.Generator) -> SenderSample:
        return continuous.sample_sender_continuous(x0, alpha, rng)

    def sender_mean(self, estimate, alpha) -> np.ndarray:
        return np.asarray(estimate, dtype=np.float64)

    def as_estimate(self, x0) -> np.ndarray:
        return np.asarray(x0, dtype=np.float64)

    def features(self, p: continuous.ContinuousParams) -> np.ndarray:
        # the precision is a function of the step, which the networks already see
        return p.mu

    def to_code(self, p: continuous.ContinuousParams) -> np.ndarray:
        return p.mu

    def from_code(self, code, D: int) -> continuous.ContinuousParams:
        _code = np.asarray(code, dtype=np.float64)
        return continuous.ContinuousParams(mu=_code, rho=np.ones(_code.shape[:-1]))


@dataclasses.dataclass(frozen=True)
class DiscreteFlow:
    K: int = 2
    kind: DataKind = DataKind.DISCRETE

    def prior(self, D: int, batch: tuple[int, ...] = ()) -> discrete.DiscreteParams:
        return discrete.prior_discrete(D, self.K, batch)

    def update(self, p, y, alpha) -> discrete.DiscreteParams:
        return discrete.bayes_update_discrete(p, y, alpha)

    def inverse_update(self, p_next, y, alpha) -> discrete.DiscreteParams:
        return discrete.inverse_update_discrete(p_next, y, alpha)

    def sample_flow(self, x0, t, sched: AccuracySchedule, rng: np.random.Generator):
        return discrete.sample_flow_discrete(x0, t, sched, rng, K=self.K)

    def flow_mean(self, x0, t, sched: AccuracySchedule):
        return discrete.flow_mean_discrete(x0, t, sched, self.K)

    def sender_sample(self, x0, alpha, rng: np.random.Generator) -> SenderSample:
        return discrete.sample_sender_discrete(x0, alpha, self.K, rng)

    def sender_mean(self, estimate, alpha) -> np.ndarray:
        return discrete.sender_mean_discrete(estimate, alpha)

    def as_estimate(self, x0) -> np.ndarray:
        return discrete.one_hot(x0, self.K)

    def features(self, p: discrete.DiscreteParams) -> np.ndarray:
        _theta = p.theta
        return (2.0 * _theta - 1.0).reshape(_theta.shape[:-2] + (-1,))

    def to_code(self, p: discrete.DiscreteParams) -> np.ndarray:
        with np.errstate(divide="ignore"):
            _logits = np.log(p.theta)
        _logits = _logits - _logits.mean(axis=-1, keepdims=True)
        return _logits.reshape(_logits.shape[:-2] + (-1,))

    def from_code(self, code, D: int) -> discrete.DiscreteParams:
        _logits = np.asarray(code, dtype=np.float64)
        _logits = _logits.reshape(_logits.shape[:-1] + (D, self.K))
        _logits = _logits - _logits.max(axis=-1, keepdims=True)
        _exp = np.exp(_logits)
        return discrete.DiscreteParams(_exp / _exp.sum(axis=-1, keepdims=True))


def flow_for(kind: DataKind, K: int = 2) -> BayesianFlow:
    if kind is DataKind.CONTINUOUS:
        return ContinuousFlow()
    return DiscreteFlow(K=K)
