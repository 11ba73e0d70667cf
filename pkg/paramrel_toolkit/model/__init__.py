"""the self-encoder, latent prior and decoder"""

from .config import ModelConfig
from .latent import (
    LatentGaussian,
    kl_latent_prior,
    reparam_sample,
)
from .networks import (
    DecoderNet,
    EncoderNet,
)
from .paramrel import (
    GAMMA_MIN,
    ParamRelModel,
    encode,
    estimate_from_gamma,
    output_estimate_continuous,
    output_probs_discrete,
    predict_noise,
)


__all__ = (
    "GAMMA_MIN",
    "DecoderNet",
    "EncoderNet",
    "LatentGaussian",
    "ModelConfig",
    "ParamRelModel",
    "encode",
    "estimate_from_gamma",
    "kl_latent_prior",
    "output_estimate_continuous",
    "output_probs_discrete",
    "predict_noise",
    "reparam_sample",
)
