"""the self-encoder and the latent-conditioned decoder (mlp backbones)"""

from __future__ import annotations

import dataclasses

import numpy as np

from paramrel_toolkit.nn import (
    AdaGN,
    Linear,
    ParamStore,
    Tensor,
    as_tensor,
    concat,
)

from .config import ModelConfig
from .latent import LatentGaussian


__all__ = (
    "DecoderNet",
    "EncoderNet",
)


@dataclasses.dataclass(frozen=True)
class EncoderNet:
    """features (plus step embedding, when progressive) -> hidden -> hidden -> (mean, logvar)"""

    config: ModelConfig
    layers: tuple[Linear, ...]

    @classmethod
    def create(
        cls, config: ModelConfig, store: ParamStore, rng: np.random.Generator
    ) -> EncoderNet:
        _in = config.feature_dim + (
            config.time_embed_dim if config.progressive_encoder else 0
        )
        return cls(
            config,
            (
                Linear.create(store, "encoder.in", _in, config.hidden, rng),
                Linear.create(store, "encoder.mid", config.hidden, config.hidden, rng),
                Linear.create(
                    store,
                    "encoder.out",
                    config.hidden,
                    2 * config.latent_dim,
                    rng,
                    zero_init=True,
                ),
            ),
        )

    def __call__(self, features: np.ndarray, temb: np.ndarray) -> LatentGaussian:
        _h = as_tensor(features)
        if self.config.progressive_encoder:
            _h = concat([_h, temb], axis=-1)
        *_hidden, _out = self.layers
        for _layer in _hidden:
            _h = _layer(_h).silu()
        _stats = _out(_h)
        _L = self.config.latent_dim
        return LatentGaussian.of(_stats[..., :_L], _stats[..., _L:])


@dataclasses.dataclass(frozen=True)
class _DecoderBlock:
    latent_norm: AdaGN
    time_norm: AdaGN
    dense: Linear

    def __call__(self, h: Tensor, z: Tensor, temb: np.ndarray) -> Tensor:
        # inner conditioning on the latent, outer on the step
        _conditioned = self.time_norm(self.latent_norm(h, z), temb)
        return h + self.dense(_conditioned.silu())


@dataclasses.dataclass(frozen=True)
class DecoderNet:
    """residual mlp trunk with nested adaptive group norm; zero-initialized head"""

    config: ModelConfig
    stem: Linear
    blocks: tuple[_DecoderBlock, ...]
    head: Linear

    @classmethod
    def create(
        cls, config: ModelConfig, store: ParamStore, rng: np.random.Generator
    ) -> DecoderNet:
        _H = config.hidden
        return cls(
            config,
            stem=Linear.create(store, "decoder.stem", config.feature_dim, _H, rng),
            blocks=tuple(
                _DecoderBlock(
                    latent_norm=AdaGN.create(
                        store,
                        f"decoder.block{_i}.latent_norm",
                        config.latent_dim,
                        _H,
                        config.groups,
                        rng,
                    ),
                    time_norm=AdaGN.create(
                        store,
                        f"decoder.block{_i}.time_norm",
                        config.time_embed_dim,
                        _H,
                        config.groups,
                        rng,
                    ),
                    dense=Linear.create(store, f"decoder.block{_i}.dense", _H, _H, rng),
                )
                for _i in range(config.blocks)
            ),
            head=Linear.create(
                store, "decoder.head", _H, config.output_dim, rng, zero_init=True
            ),
        )

    def __call__(self, features: np.ndarray, z, temb: np.ndarray) -> Tensor:
        _z = as_tensor(z)
        _h = self.stem(features)
        for _block in self.blocks:
            _h = _block(_h, _z, temb)
        return self.head(_h.silu())
