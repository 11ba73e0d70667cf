"""minibatch training on the weighted objective, one uniformly drawn step per example"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.model import (
    ModelConfig,
    ParamRelModel,
    reparam_sample,
)
from paramrel_toolkit.nn import (
    AdamState,
    adam_step,
    backward,
    grad_check,
)
from paramrel_toolkit.objective import (
    LossBreakdown,
    LossTerms,
    LossWeights,
    MmdKernel,
    StepOutputs,
    elbo_step_loss,
    paramrel_plus_loss,
    resolve_bandwidth,
)
from paramrel_toolkit.schedules import AccuracySchedule


__all__ = (
    "METRICS_HEADER",
    "StepDraws",
    "TrainConfig",
    "TrainingResult",
    "batch_objective",
    "draw_step_noise",
    "objective_grad_check",
    "run_training",
    "train_step",
)

_logger = logging.getLogger(__name__)

METRICS_HEADER = ("step", "flow_kl", "latent_rate", "mmd", "distortion", "total")


@dataclasses.dataclass(frozen=True)
class TrainConfig:
    epochs: int = 5
    batch_size: int = 64
    max_steps: int = 5000
    """stop after this many optimizer steps (0: no cap)"""
    lr: float = 1e-4
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    weights: LossWeights = LossWeights(T=10)
    mmd_kernel: MmdKernel = MmdKernel.RBF
    mmd_bandwidth: float = 0.0
    n_mc: int = 1

    def __post_init__(self):
        if self.batch_size < 2:
            raise exceptions.ConfigError(
                "train.batch_size", f"must be at least 2 for the MMD term (got {self.batch_size})"
            )
        if self.epochs < 1:
            raise exceptions.ConfigError("train.epochs", f"must be at least 1 (got {self.epochs})")

    @classmethod
    def from_run_config(cls, cfg) -> TrainConfig:
        return cls(
            epochs=cfg["train.epochs"],
            batch_size=cfg["train.batch_size"],
            max_steps=cfg["train.max_steps"],
            lr=cfg["train.lr"],
            adam_beta1=cfg["train.adam_beta1"],
            adam_beta2=cfg["train.adam_beta2"],
            adam_eps=cfg["train.adam_eps"],
            weights=cfg.loss_weights(),
            mmd_kernel=MmdKernel(cfg["loss.mmd_kernel"]),
            mmd_bandwidth=cfg["loss.mmd_bandwidth"],
            n_mc=cfg["loss.n_mc"],
        )

    def optimizer(self, model: ParamRelModel) -> AdamState:
        return AdamState.for_params(
            model.store,
            lr=self.lr,
            beta1=self.adam_beta1,
            beta2=self.adam_beta2,
            eps=self.adam_eps,
        )


@dataclasses.dataclass(frozen=True)
class StepDraws:
    """every random number one objective evaluation needs"""

    t: np.ndarray
    theta: object
    theta_zero: object
    latent_noise: np.ndarray
    """(2, B, L): reparameterization noise at the drawn step and at `t = 0`"""
    prior: np.ndarray
    """(B, L) standard-normal draws for the MMD term"""
    sender_noise: np.ndarray | None = None
    """(n_mc, B, D, K), discrete data only"""


@dataclasses.dataclass(frozen=True)
class TrainingResult:
    step_rows: list[dict]
    epoch_means: list[LossBreakdown]
    steps: int


def draw_step_noise(
    x0, model: ParamRelModel, sched: AccuracySchedule, rng: np.random.Generator, n_mc: int = 1
) -> StepDraws:
    _x0 = np.asarray(x0)
    _B = _x0.shape[0]
    _L = model.config.latent_dim
    _t = rng.integers(1, sched.T + 1, size=_B)
    _theta = model.flow.sample_flow(_x0, _t, sched, rng)
    _theta_zero = model.flow.sample_flow(_x0, np.zeros(_B, dtype=np.int64), sched, rng)
    _latent_noise = rng.standard_normal((2, _B, _L))
    _prior = rng.standard_normal((_B, _L))
    _sender_noise = None
    if model.kind is DataKind.DISCRETE:
        _sender_noise = rng.standard_normal(
            (n_mc, _B, model.config.data_dim, model.config.num_classes)
        )
    return StepDraws(
        t=_t,
        theta=_theta,
        theta_zero=_theta_zero,
        latent_noise=_latent_noise,
        prior=_prior,
        sender_noise=_sender_noise,
    )


def batch_objective(
    model: ParamRelModel,
    sched: AccuracySchedule,
    x0,
    draws: StepDraws,
    weights: LossWeights,
    *,
    mmd_kernel: MmdKernel = MmdKernel.RBF,
    mmd_bandwidth: float = 0.0,
) -> LossTerms:
    """the weighted objective for one batch, as a deterministic function of `draws`"""
    _zero = np.zeros_like(draws.t)
    _lg = model.encode(draws.theta, draws.t)
    _z = reparam_sample(_lg, noise=draws.latent_noise[0])
    _z_zero = reparam_sample(model.encode(draws.theta_zero, _zero), noise=draws.latent_noise[1])
    _outputs = StepOutputs(
        model.kind,
        _outputs_of(model, sched, draws.theta, _z, draws.t),
        _outputs_of(model, sched, draws.theta_zero, _z_zero, _zero),
    )
    _step_terms = elbo_step_loss(
        x0, draws.t, _lg, _outputs, sched, sender_noise=draws.sender_noise
    )
    _bandwidth = resolve_bandwidth(mmd_kernel, mmd_bandwidth, _z.data, draws.prior)
    return paramrel_plus_loss(_step_terms, _z, draws.prior, weights, _bandwidth)


def train_step(
    batch,
    model: ParamRelModel,
    sched: AccuracySchedule,
    weights: LossWeights,
    opt_state: AdamState,
    rng: np.random.Generator,
    *,
    mmd_kernel: MmdKernel = MmdKernel.RBF,
    mmd_bandwidth: float = 0.0,
    n_mc: int = 1,
) -> LossBreakdown:
    """one optimizer step; the model's parameters change in place"""
    if model.config.T != sched.T or model.kind is not sched.kind:
        raise exceptions.UsageError("model and schedule disagree on T or data kind")
    _draws = draw_step_noise(batch, model, sched, rng, n_mc)
    _terms = batch_objective(
        model,
        sched,
        batch,
        _draws,
        weights,
        mmd_kernel=mmd_kernel,
        mmd_bandwidth=mmd_bandwidth,
    )
    _breakdown = _terms.breakdown()
    if not _breakdown.is_finite():
        _logger.error("non-finite loss at optimizer step %d: %s", opt_state.step + 1, _breakdown)
        raise exceptions.NonFiniteLoss(_breakdown)
    adam_step(model.store, backward(_terms.total, model.store), opt_state)
    return _breakdown


def run_training(
    model: ParamRelModel,
    sched: AccuracySchedule,
    data,
    config: TrainConfig,
    rng: np.random.Generator,
) -> TrainingResult:
    _data = np.asarray(data)
    _opt = config.optimizer(model)
    _rows: list[dict] = []
    _epoch_means: list[LossBreakdown] = []
    for _epoch in range(1, config.epochs + 1):
        _order = rng.permutation(_data.shape[0])
        _breakdowns = []
        for _start in range(0, _order.size, config.batch_size):
            _indices = _order[_start : _start + config.batch_size]
            if _indices.size < 2:
                continue
            _breakdown = train_step(
                _data[_indices],
                model,
                sched,
                config.weights,
                _opt,
                rng,
                mmd_kernel=config.mmd_kernel,
                mmd_bandwidth=config.mmd_bandwidth,
                n_mc=config.n_mc,
            )
            _breakdowns.append(_breakdown)
            _rows.append({"step": _opt.step, **_breakdown.as_row()})
            _logger.debug("step %d: %s", _opt.step, _breakdown)
            if config.max_steps and _opt.step >= config.max_steps:
                break
        if _breakdowns:
            _mean = LossBreakdown.mean_of(_breakdowns)
            _epoch_means.append(_mean)
            _logger.info(
                "epoch %d: total %.4f (flow %.4f, rate %.4f, mmd %.4f, distortion %.4f)",
                _epoch,
                _mean.total,
                _mean.flow_kl,
                _mean.latent_rate,
                _mean.mmd,
                _mean.distortion_nll,
            )
        if config.max_steps and _opt.step >= config.max_steps:
            _logger.info("reached train.max_steps = %d", config.max_steps)
            break
    return TrainingResult(step_rows=_rows, epoch_means=_epoch_means, steps=_opt.step)


def objective_grad_check(kind: DataKind, rng: np.random.Generator) -> float:
    """central differences against backprop through the whole objective on a tiny model"""
    _model = ParamRelModel.initialize(
        ModelConfig(
            kind=kind,
            data_dim=4,
            latent_dim=2,
            T=2,
            hidden=16,
            blocks=1,
            time_embed_dim=4,
        ),
        rng,
    )
    for _name, _param in _model.store.items():
        _model.store.assign(_name, rng.normal(scale=0.3, size=_param.shape))
    _sched = AccuracySchedule(T=2, kind=kind)
    if kind is DataKind.CONTINUOUS:
        _x0 = rng.uniform(-1.0, 1.0, size=(4, 4))
    else:
        _x0 = rng.integers(0, 2, size=(4, 4))
    _draws = dataclasses.replace(
        draw_step_noise(_x0, _model, _sched, rng, n_mc=2),
        t=np.array([1, 2, 1, 2]),
    )
    _draws = dataclasses.replace(
        _draws, theta=_model.flow.sample_flow(_x0, _draws.t, _sched, rng)
    )
    _weights = LossWeights(mi_weight=0.9, tc_weight=0.4, T=2)
    return grad_check(
        lambda store: batch_objective(
            _model, _sched, _x0, _draws, _weights, mmd_bandwidth=1.0
        ).total,
        _model.store,
    )


def _outputs_of(model: ParamRelModel, sched: AccuracySchedule, theta, z, t):
    if model.kind is DataKind.CONTINUOUS:
        return model.estimate(theta, z, t, sched)
    return model.output_logits(theta, z, t).log_softmax(axis=-1)
