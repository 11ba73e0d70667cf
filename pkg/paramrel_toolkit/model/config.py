from __future__ import annotations

import dataclasses

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.nn.layers import (
    DEFAULT_GROUPS,
    effective_groups,
)


__all__ = ("ModelConfig",)


@dataclasses.dataclass(frozen=True)
class ModelConfig:
    """shape of a self-encoder/decoder pair

    >>> ModelConfig(kind=DataKind.CONTINUOUS, data_dim=8, latent_dim=5, T=10)
    Traceback (most recent call last):
      ...
    paramrel_toolkit.exceptions.ConfigError: model.latent_dim: must be between 1 and data_dim/2 = 4 (got 5)
    """

    kind: DataKind
    data_dim: int
    latent_dim: int
    T: int
    num_classes: int = 2
    """classes per dimension (discrete kind only)"""
    hidden: int = 64
    blocks: int = 2
    groups: int = DEFAULT_GROUPS
    time_embed_dim: int = 16
    progressive_encoder: bool = True
    """encoder sees the step (q(z_t | theta_t, t)); otherwise only the parameters"""

    def __post_init__(self):
        if not 1 <= self.latent_dim <= self.data_dim / 2:
            raise exceptions.ConfigError(
                "model.latent_dim",
                f"must be between 1 and data_dim/2 = {self.data_dim // 2} (got {self.latent_dim})",
            )
        if self.kind is DataKind.DISCRETE and self.num_classes < 2:
            raise exceptions.ConfigError(
                "data.num_classes", f"need at least 2 classes (got {self.num_classes})"
            )
        if self.hidden < 1 or self.hidden % effective_groups(self.hidden, self.groups):
            raise exceptions.ConfigError(
                "model.groups",
                f"hidden width {self.hidden} does not split into {self.groups} groups",
            )
        if self.blocks < 1:
            raise exceptions.ConfigError("model.blocks", f"need at least 1 (got {self.blocks})")
        if self.time_embed_dim < 2 or self.time_embed_dim % 2:
            raise exceptions.ConfigError(
                "model.time_embed_dim", f"must be even (got {self.time_embed_dim})"
            )

    @property
    def feature_dim(self) -> int:
        """width of the flat parameter features fed to both networks"""
        if self.kind is DataKind.CONTINUOUS:
            return self.data_dim
        return self.data_dim * self.num_classes

    @property
    def output_dim(self) -> int:
        return self.feature_dim
