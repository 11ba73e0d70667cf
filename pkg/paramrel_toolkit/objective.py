"""training objective: per-step ELBO terms, the MMD surrogate for total correlation,
and their weighted combination

every field of a `LossBreakdown` estimates a sum over all `T` steps from one
uniformly drawn step per example, so the per-step means are scaled by `T`
"""

from __future__ import annotations

import dataclasses
import enum
import logging
import math

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.flows import (
    one_hot,
    sender_mean_discrete,
)
from paramrel_toolkit.model import (
    LatentGaussian,
    kl_latent_prior,
)
from paramrel_toolkit.nn import (
    Tensor,
    as_tensor,
)
from paramrel_toolkit.schedules import (
    AccuracySchedule,
    alpha_at,
)


__all__ = (
    "LossBreakdown",
    "LossTerms",
    "LossWeights",
    "MmdKernel",
    "StepOutputs",
    "elbo_step_loss",
    "median_bandwidth",
    "mmd",
    "paramrel_plus_loss",
    "rbf_kernel",
    "resolve_bandwidth",
)

_logger = logging.getLogger(__name__)


@enum.unique
class MmdKernel(enum.Enum):
    RBF = "rbf"
    """fixed bandwidth (default sqrt of the latent dimension)"""
    MEDIAN_RBF = "median_rbf"
    """bandwidth from the median pairwise distance of the pooled samples"""


@dataclasses.dataclass(frozen=True)
class LossWeights:
    """weights of the rate/total-correlation split

    >>> w = LossWeights(mi_weight=0.0, tc_weight=1.0, T=10)
    >>> w.rate_coefficient, w.mmd_coefficient
    (0.1, 0.0)
    """

    mi_weight: float = 0.95
    tc_weight: float = 0.1
    T: int = 1000

    def __post_init__(self):
        if not 0.0 <= self.mi_weight < 1.0:
            raise exceptions.ConfigError(
                "loss.mi_weight", f"must lie in [0, 1) (got {self.mi_weight})"
            )
        if not self.tc_weight > 0.0:
            raise exceptions.ConfigError(
                "loss.tc_weight", f"must be positive (got {self.tc_weight})"
            )
        if self.mmd_coefficient < 0:
            _logger.warning(
                "mi_weight + tc_weight < 1 gives the MMD term a negative weight (%g);"
                " training will push the aggregate latent away from the prior",
                self.mmd_coefficient,
            )

    @property
    def rate_coefficient(self) -> float:
        return (1.0 - self.mi_weight) / self.T

    @property
    def mmd_coefficient(self) -> float:
        return (self.mi_weight + self.tc_weight - 1.0) / self.T


@dataclasses.dataclass(frozen=True)
class LossBreakdown:
    flow_kl: float
    latent_rate: float
    mmd: float
    distortion_nll: float
    total: float

    def is_finite(self) -> bool:
        return all(math.isfinite(_value) for _value in dataclasses.astuple(self))

    def as_row(self) -> dict[str, float]:
        return {
            "flow_kl": self.flow_kl,
            "latent_rate": self.latent_rate,
            "mmd": self.mmd,
            "distortion": self.distortion_nll,
            "total": self.total,
        }

    @classmethod
    def mean_of(cls, breakdowns: list[LossBreakdown]) -> LossBreakdown:
        return cls(
            *(
                float(np.mean([getattr(_b, _field.name) for _b in breakdowns]))
                for _field in dataclasses.fields(cls)
            )
        )


@dataclasses.dataclass(frozen=True)
class LossTerms:
    """the same terms as `LossBreakdown`, still attached to the graph"""

    flow_kl: Tensor
    latent_rate: Tensor
    mmd: Tensor
    distortion_nll: Tensor
    total: Tensor

    def breakdown(self) -> LossBreakdown:
        return LossBreakdown(
            flow_kl=self.flow_kl.item(),
            latent_rate=self.latent_rate.item(),
            mmd=self.mmd.item(),
            distortion_nll=self.distortion_nll.item(),
            total=self.total.item(),
        )


@dataclasses.dataclass(frozen=True)
class StepOutputs:
    """decoder outputs for one batch: at each example's drawn step and at `t = 0`

    continuous: point estimates, shape (B, D); discrete: log class
    probabilities, shape (B, D, K)
    """

    kind: DataKind
    at_step: Tensor
    at_zero: Tensor


###
# kernels and MMD


def rbf_kernel(a, b, bandwidth: float) -> float:
    """`exp(-|a - b|^2 / (2 bandwidth^2))`"""
    if not bandwidth > 0:
        raise exceptions.UsageError(f"bandwidth must be positive (got {bandwidth})")
    _diff = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    return float(np.exp(-np.dot(_diff, _diff) / (2.0 * bandwidth * bandwidth)))


def mmd(q_samples, p_samples, bandwidth: float) -> Tensor:
    """squared MMD between two sample sets, V-statistic (diagonal terms included)"""
    _q, _p = as_tensor(q_samples), as_tensor(p_samples)
    if _q.shape[0] < 2 or _p.shape[0] < 2:
        raise exceptions.UsageError("MMD needs at least two samples on each side")
    if not bandwidth > 0:
        raise exceptions.UsageError(f"bandwidth must be positive (got {bandwidth})")
    return (
        _kernel_matrix(_p, _p, bandwidth).mean()
        - 2.0 * _kernel_matrix(_q, _p, bandwidth).mean()
        + _kernel_matrix(_q, _q, bandwidth).mean()
    )


def median_bandwidth(q_samples, p_samples) -> float:
    """median pairwise distance over the pooled samples (1.0 when all coincide)"""
    _pooled = np.concatenate([np.asarray(q_samples), np.asarray(p_samples)], axis=0)
    _diff = _pooled[:, None, :] - _pooled[None, :, :]
    _distances = np.sqrt(np.sum(_diff * _diff, axis=-1))
    _upper = _distances[np.triu_indices(_pooled.shape[0], k=1)]
    _median = float(np.median(_upper))
    return _median if _median > 0 else 1.0


def resolve_bandwidth(
    kernel: MmdKernel, bandwidth: float, q_samples, p_samples
) -> float:
    """the bandwidth to use this step; a fixed bandwidth of 0 means sqrt(latent_dim)"""
    if kernel is MmdKernel.MEDIAN_RBF:
        return median_bandwidth(q_samples, p_samples)
    if bandwidth > 0:
        return bandwidth
    return math.sqrt(np.shape(p_samples)[-1])


def _kernel_matrix(x: Tensor, y: Tensor, bandwidth: float) -> Tensor:
    _n, _L = x.shape
    _m = y.shape[0]
    _diff = x.reshape(_n, 1, _L) - y.reshape(1, _m, _L)
    _squared = (_diff * _diff).sum(axis=-1)
    return (_squared * (-1.0 / (2.0 * bandwidth * bandwidth))).exp()


###
# the objective


def elbo_step_loss(
    x0,
    t,
    lg: LatentGaussian,
    outputs: StepOutputs,
    sched: AccuracySchedule,
    *,
    sender_noise: np.ndarray | None = None,
) -> LossTerms:
    """unweighted ELBO terms for a batch, each example at its own drawn step `t`

    `sender_noise` (shape (n_mc, B, D, K)) drives the monte carlo flow KL for
    discrete data; the MMD field is zero here
    """
    _t = np.asarray(t)
    _alpha = alpha_at(sched, _t)
    if outputs.kind is DataKind.CONTINUOUS:
        _flow_kl = _continuous_flow_kl(x0, outputs.at_step, _alpha)
        _distortion = _squared_error(x0, outputs.at_zero).mean(axis=-1)
    else:
        if sender_noise is None:
            raise exceptions.UsageError("discrete flow KL needs sender noise draws")
        _flow_kl = _discrete_flow_kl(x0, outputs.at_step, _alpha, sender_noise)
        _distortion = _cross_entropy(x0, outputs.at_zero)
    _flow_kl = _flow_kl.mean() * sched.T
    _latent_rate = kl_latent_prior(lg).mean() * sched.T
    _distortion = _distortion.mean()
    return LossTerms(
        flow_kl=_flow_kl,
        latent_rate=_latent_rate,
        mmd=Tensor(0.0),
        distortion_nll=_distortion,
        total=_flow_kl + _latent_rate + _distortion,
    )


def paramrel_plus_loss(
    step_terms: LossTerms,
    z_batch,
    prior_batch,
    weights: LossWeights,
    bandwidth: float,
) -> LossTerms:
    """ELBO with the rate split into a down-weighted per-sample rate and an MMD term"""
    _z = as_tensor(z_batch)
    if _z.shape[0] < 2:
        raise exceptions.UsageError("batch size must be at least 2 for the MMD term")
    _mmd = mmd(_z, prior_batch, bandwidth) * weights.T
    _total = (
        step_terms.flow_kl
        + step_terms.latent_rate * weights.rate_coefficient
        + _mmd * weights.mmd_coefficient
        + step_terms.distortion_nll
    )
    return LossTerms(
        flow_kl=step_terms.flow_kl,
        latent_rate=step_terms.latent_rate,
        mmd=_mmd,
        distortion_nll=step_terms.distortion_nll,
        total=_total,
    )


###
# local helpers


def _squared_error(x0, estimate: Tensor) -> Tensor:
    _diff = as_tensor(estimate) - np.asarray(x0, dtype=np.float64)
    return _diff * _diff


def _continuous_flow_kl(x0, estimate: Tensor, alpha: np.ndarray) -> Tensor:
    return _squared_error(x0, estimate).sum(axis=-1) * (0.5 * alpha)


def _discrete_flow_kl(
    x0, log_probs: Tensor, alpha: np.ndarray, sender_noise: np.ndarray
) -> Tensor:
    # with a shared covariance, every gaussian component's log density is a
    # common term plus y_k; the common term cancels between sender and receiver
    _K = log_probs.shape[-1]
    _onehot = one_hot(x0, _K)
    _alpha = np.asarray(alpha, dtype=np.float64)[:, None, None]
    _y = sender_mean_discrete(_onehot, _alpha[..., 0, 0]) + np.sqrt(_alpha * _K) * sender_noise
    _sender_term = np.sum(_y * _onehot, axis=-1)
    _receiver_term = (as_tensor(log_probs) + _y).logsumexp(axis=-1)
    return (_receiver_term * -1.0 + _sender_term).sum(axis=-1).mean(axis=0)


def _cross_entropy(x0, log_probs: Tensor) -> Tensor:
    _onehot = one_hot(x0, log_probs.shape[-1])
    return (as_tensor(log_probs) * _onehot).sum(axis=-1).sum(axis=-1) * -1.0
