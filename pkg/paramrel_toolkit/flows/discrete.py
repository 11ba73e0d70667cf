"""categorical input distributions, updated and sampled in log space

>>> p = DiscreteParams(np.array([[0.5, 0.5]]))
>>> q = bayes_update_discrete(p, np.array([[np.log(2.0), 0.0]]))
>>> q.theta * 3
array([[2., 1.]])
>>> inverse_update_discrete(q, np.array([[np.log(2.0), 0.0]])).theta
array([[0.5, 0.5]])
"""

from __future__ import annotations

import dataclasses

import numpy as np
from scipy import special

from paramrel_toolkit import exceptions
from paramrel_toolkit.schedules import (
    AccuracySchedule,
    beta_at,
)

from ._base import (
    SenderSample,
    require_finite,
)


__all__ = (
    "DiscreteParams",
    "bayes_update_discrete",
    "flow_mean_discrete",
    "inverse_update_discrete",
    "kl_sender_receiver_discrete_mc",
    "one_hot",
    "prior_discrete",
    "receiver_log_density_discrete",
    "sample_flow_discrete",
    "sample_sender_discrete",
    "sender_log_density_discrete",
    "sender_mean_discrete",
)


SIMPLEX_TOLERANCE = 1e-9


@dataclasses.dataclass(frozen=True)
class DiscreteParams:
    theta: np.ndarray
    """class probabilities, shape (..., D, K)"""

    def __post_init__(self):
        _theta = np.asarray(self.theta, dtype=np.float64)
        object.__setattr__(self, "theta", _theta)
        if _theta.ndim < 2 or _theta.shape[-1] < 2:
            raise exceptions.DimensionError(
                f"discrete parameters need shape (..., D, K>=2), got {_theta.shape}"
            )
        if np.any(_theta < 0) or np.any(
            np.abs(_theta.sum(axis=-1) - 1.0) > SIMPLEX_TOLERANCE
        ):
            raise exceptions.DataError("discrete parameters must be rows of a simplex")

    @property
    def K(self) -> int:
        return self.theta.shape[-1]


def prior_discrete(D: int, K: int, batch: tuple[int, ...] = ()) -> DiscreteParams:
    return DiscreteParams(np.full(batch + (D, K), 1.0 / K))


def one_hot(x0_class, K: int) -> np.ndarray:
    _classes = np.asarray(x0_class)
    if np.any(_classes < 0) or np.any(_classes >= K):
        raise exceptions.DataError(f"class indices must lie in [0, {K})")
    return np.eye(K)[_classes.astype(np.int64)]


def bayes_update_discrete(p: DiscreteParams, y, alpha=None) -> DiscreteParams:
    """`theta' ∝ theta * exp(y)`; the accuracy is already folded into `y`"""
    _y = require_finite(y, "sender sample")
    return DiscreteParams(special.softmax(_log(p.theta) + _y, axis=-1))


def inverse_update_discrete(p_next: DiscreteParams, y, alpha=None) -> DiscreteParams:
    _y = require_finite(y, "sender sample")
    return DiscreteParams(special.softmax(_log(p_next.theta) - _y, axis=-1))


def sender_mean_discrete(probs, alpha) -> np.ndarray:
    """`alpha (K p - 1)`: the sender mean for one-hot `p`, the receiver mean otherwise"""
    _probs = np.asarray(probs, dtype=np.float64)
    return _block(alpha) * (_probs.shape[-1] * _probs - 1.0)


def sample_sender_discrete(
    x0_class, alpha, K: int, rng: np.random.Generator
) -> SenderSample:
    """`y ~ N(alpha (K e_x - 1), alpha K I)`"""
    _alpha = np.asarray(alpha, dtype=np.float64)
    if np.any(_alpha < 0):
        raise exceptions.UsageError(f"sender accuracy must be nonnegative: {_alpha!r}")
    _mean = sender_mean_discrete(one_hot(x0_class, K), _alpha)
    _noise = rng.standard_normal(_mean.shape)
    return SenderSample(y=_mean + np.sqrt(_block(_alpha) * K) * _noise, alpha=_alpha)


def flow_mean_discrete(x0_class, t, sched: AccuracySchedule, K: int) -> DiscreteParams:
    """parameters at step `t` if the sender noise were all zero"""
    _beta = beta_at(sched, t)
    _mean = sender_mean_discrete(one_hot(x0_class, K), _beta)
    return DiscreteParams(special.softmax(_mean, axis=-1))


def sample_flow_discrete(
    x0_class, t, sched: AccuracySchedule, rng: np.random.Generator, K: int = 2
) -> DiscreteParams:
    """`theta = softmax(y)`, `y ~ N(beta (K e_x - 1), beta K I)`"""
    _beta = beta_at(sched, t)
    _sample = sample_sender_discrete(x0_class, _beta, K, rng)
    return DiscreteParams(special.softmax(_sample.y, axis=-1))


def sender_log_density_discrete(y, x0_class, alpha, K: int):
    """log N(y; alpha (K e_x - 1), alpha K I), summed over dimensions"""
    return receiver_log_density_discrete(y, one_hot(x0_class, K), alpha, K)


def receiver_log_density_discrete(y, probs, alpha, K: int):
    """log of `sum_k p_k N(y; alpha (K e_k - 1), alpha K I)`, summed over dimensions

    `y` may carry leading sample axes in front of (D, K)
    """
    _y = np.asarray(y, dtype=np.float64)
    _alpha = _block(alpha)
    _variance = _alpha * K
    # |y - alpha (K e_k - 1)|^2 = |y + alpha|^2 - 2 alpha K (y_k + alpha) + (alpha K)^2
    _shifted = _y + _alpha
    _base = np.sum(_shifted * _shifted, axis=-1, keepdims=True)
    _squared = _base - 2.0 * _variance * _shifted + _variance * _variance
    _component = -0.5 * K * np.log(2.0 * np.pi * _variance) - _squared / (2.0 * _variance)
    _per_dim = special.logsumexp(_log(probs) + _component, axis=-1)
    _total = np.sum(_per_dim, axis=-1)
    return float(_total) if np.ndim(_total) == 0 else _total


def kl_sender_receiver_discrete_mc(
    x0_class,
    probs,
    alpha,
    K: int,
    n_mc: int,
    rng: np.random.Generator,
    *,
    clamp: bool = True,
) -> float:
    """monte carlo KL between the gaussian sender and the mixture receiver

    the sender is its own proposal; the signed estimate is kept when `clamp` is false
    """
    if n_mc < 1:
        raise exceptions.UsageError(f"n_mc must be at least 1 (got {n_mc})")
    _classes = np.asarray(x0_class)
    _draws = sample_sender_discrete(
        np.broadcast_to(_classes, (n_mc,) + _classes.shape), alpha, K, rng
    ).y
    _log_ratio = sender_log_density_discrete(
        _draws, _classes, alpha, K
    ) - receiver_log_density_discrete(_draws, probs, alpha, K)
    _estimate = float(np.mean(_log_ratio))
    return max(0.0, _estimate) if clamp else _estimate


###
# local helpers


def _block(values) -> np.ndarray:
    """per-row values shaped to broadcast against (..., D, K) arrays"""
    return np.asarray(values, dtype=np.float64)[..., None, None]


def _log(probs) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(probs, dtype=np.float64))
