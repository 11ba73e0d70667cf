from __future__ import annotations

import dataclasses

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.flows import (
    BayesianFlow,
    flow_for,
)
from paramrel_toolkit.nn import (
    ParamStore,
    Tensor,
    as_tensor,
    time_embed,
)
from paramrel_toolkit.schedules import (
    AccuracySchedule,
    gamma_at,
)

from .config import ModelConfig
from .latent import LatentGaussian
from .networks import (
    DecoderNet,
    EncoderNet,
)


__all__ = (
    "GAMMA_MIN",
    "ParamRelModel",
    "encode",
    "estimate_from_gamma",
    "output_estimate_continuous",
    "output_probs_discrete",
    "predict_noise",
)


GAMMA_MIN = 1e-4
"""below this flow coefficient the continuous output estimate is pinned to 0"""


@dataclasses.dataclass(frozen=True)
class ParamRelModel:
    """self-encoder q(z_t | theta_t, t) and decoder psi(theta_t, z_t) sharing one `ParamStore`

    every method takes input parameters `theta` (batched or not), a step
    index `t` (one per row, or one for all) and, for the decoder, a latent `z`
    """

    config: ModelConfig
    store: ParamStore
    encoder: EncoderNet
    decoder: DecoderNet
    flow: BayesianFlow

    @classmethod
    def initialize(cls, config: ModelConfig, rng: np.random.Generator) -> ParamRelModel:
        _store = ParamStore()
        return cls(
            config=config,
            store=_store,
            encoder=EncoderNet.create(config, _store, rng),
            decoder=DecoderNet.create(config, _store, rng),
            flow=flow_for(config.kind, config.num_classes),
        )

    @property
    def kind(self) -> DataKind:
        return self.config.kind

    def encode(self, theta, t) -> LatentGaussian:
        _features = self._features(theta)
        return self.encoder(_features, self._step_embedding(t, _features))

    def predict_noise(self, theta, z, t) -> Tensor:
        if self.kind is not DataKind.CONTINUOUS:
            raise exceptions.UsageError("predict_noise needs a continuous model")
        return self._decode(theta, z, t)

    def output_logits(self, theta, z, t) -> Tensor:
        if self.kind is not DataKind.DISCRETE:
            raise exceptions.UsageError("output distributions over classes need a discrete model")
        _flat = self._decode(theta, z, t)
        return _flat.reshape(
            *_flat.shape[:-1], self.config.data_dim, self.config.num_classes
        )

    def output_probs(self, theta, z, t) -> Tensor:
        return self.output_logits(theta, z, t).softmax(axis=-1)

    def estimate(self, theta, z, t, sched: AccuracySchedule) -> Tensor:
        """the output distribution as an estimate: a point (continuous) or class probabilities"""
        if self.kind is DataKind.CONTINUOUS:
            return output_estimate_continuous(
                theta.mu, t, self.predict_noise(theta, z, t), sched
            )
        return self.output_probs(theta, z, t)

    ###
    # local helpers

    def _decode(self, theta, z, t) -> Tensor:
        _features = self._features(theta)
        return self.decoder(_features, z, self._step_embedding(t, _features))

    def _features(self, theta) -> np.ndarray:
        _features = self.flow.features(theta)
        if _features.shape[-1] != self.config.feature_dim:
            raise exceptions.ConfigError(
                "model.data_dim",
                f"parameters give {_features.shape[-1]} features, model expects {self.config.feature_dim}",
            )
        return _features

    def _step_embedding(self, t, features: np.ndarray) -> np.ndarray:
        _t = np.asarray(t, dtype=np.float64)
        if np.any(_t < 0) or np.any(_t > self.config.T):
            raise exceptions.UsageError(f"step index out of range [0, {self.config.T}]")
        _t = np.broadcast_to(_t, features.shape[:-1])
        return time_embed(_t / self.config.T, self.config.time_embed_dim)


def estimate_from_gamma(mu, gamma, eps_hat):
    """`mu / gamma - sqrt((1 - gamma) / gamma) * eps_hat`, pinned to 0 where gamma <= GAMMA_MIN

    a `Tensor` noise prediction gives a `Tensor` estimate
    """
    _mu = np.asarray(mu, dtype=np.float64)
    _gamma = np.broadcast_to(np.asarray(gamma, dtype=np.float64), _mu.shape[:-1])[..., None]
    _informative = _gamma > GAMMA_MIN
    _safe_gamma = np.where(_informative, _gamma, 1.0)
    _mu_coef = np.where(_informative, 1.0 / _safe_gamma, 0.0)
    _noise_coef = np.where(_informative, np.sqrt((1.0 - _safe_gamma) / _safe_gamma), 0.0)
    _estimate = as_tensor(eps_hat) * -_noise_coef + _mu * _mu_coef
    return _estimate if isinstance(eps_hat, Tensor) else _estimate.data


def output_estimate_continuous(mu, t, eps_hat, sched: AccuracySchedule):
    return estimate_from_gamma(mu, gamma_at(sched, t), eps_hat)


###
# operation-style entry points


def encode(theta, t, model: ParamRelModel) -> LatentGaussian:
    return model.encode(theta, t)


def predict_noise(theta, z, t, model: ParamRelModel) -> Tensor:
    return model.predict_noise(theta, z, t)


def output_probs_discrete(theta, z, t, model: ParamRelModel) -> Tensor:
    return model.output_probs(theta, z, t)
