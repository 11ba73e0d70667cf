from __future__ import annotations

import dataclasses

import numpy as np

from paramrel_toolkit.nn import (
    Tensor,
    as_tensor,
)


__all__ = (
    "LOGVAR_BOUND",
    "LatentGaussian",
    "kl_latent_prior",
    "reparam_sample",
)


LOGVAR_BOUND = 10.0


@dataclasses.dataclass(frozen=True)
class LatentGaussian:
    """diagonal gaussian over the step-wise latent; shapes (..., L)"""

    mean: Tensor
    logvar: Tensor

    @classmethod
    def of(cls, mean, logvar) -> LatentGaussian:
        return cls(
            mean=as_tensor(mean),
            logvar=as_tensor(logvar).clip(-LOGVAR_BOUND, LOGVAR_BOUND),
        )

    @property
    def latent_dim(self) -> int:
        return self.mean.shape[-1]


def reparam_sample(
    lg: LatentGaussian,
    rng: np.random.Generator | None = None,
    *,
    noise: np.ndarray | None = None,
) -> Tensor:
    """`z = mean + exp(logvar / 2) * eps`; pass `noise` to fix `eps`"""
    _noise = rng.standard_normal(lg.mean.shape) if noise is None else noise
    return lg.mean + (lg.logvar * 0.5).exp() * _noise


def kl_latent_prior(lg: LatentGaussian) -> Tensor:
    """closed-form KL to the standard normal prior, summed over the last axis

    >>> float(kl_latent_prior(LatentGaussian.of([1.0], [0.0])))
    0.5
    """
    _terms = lg.logvar.exp() + lg.mean * lg.mean - 1.0 - lg.logvar
    return _terms.sum(axis=-1) * 0.5
