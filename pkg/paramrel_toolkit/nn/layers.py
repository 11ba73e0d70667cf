"""layers built from `Tensor` operations

every layer reads its weights from a `ParamStore` at call time, so weights
perturbed in place (gradient checks) or restored from a checkpoint take
effect without rebuilding anything
"""

from __future__ import annotations

import dataclasses
import math
from collections import abc

import numpy as np

from paramrel_toolkit import exceptions

from .params import ParamStore
from .tensor import (
    Tensor,
    as_tensor,
)


__all__ = (
    "AdaGN",
    "Linear",
    "ada_gn",
    "effective_groups",
    "group_norm",
    "linear_forward",
    "silu",
    "time_embed",
)


DEFAULT_GROUPS = 4
GROUP_NORM_EPS = 1e-5


def linear_forward(W, b, x) -> Tensor:
    """`y = W x + b`, applied to the last axis of `x`

    >>> linear_forward(np.array([[2.0]]), np.array([1.0]), np.array([3.0])).data
    array([7.])
    """
    _W, _b, _x = as_tensor(W), as_tensor(b), as_tensor(x)
    if _W.ndim != 2 or _b.shape != (_W.shape[0],) or _x.shape[-1:] != (_W.shape[1],):
        raise exceptions.DimensionError(
            f"linear: W{_W.shape}, b{_b.shape}, x{_x.shape} do not conform"
        )
    return _x @ _W.T + _b


def silu(x) -> Tensor:
    return as_tensor(x).silu()


def effective_groups(channels: int, groups: int = DEFAULT_GROUPS) -> int:
    """narrow layers (fewer channels than the default group count) normalize as one group"""
    return 1 if channels < DEFAULT_GROUPS else groups


def group_norm(x, groups: int, eps: float = GROUP_NORM_EPS) -> Tensor:
    """normalize each group of channels (last axis) to zero mean and unit variance"""
    _x = as_tensor(x)
    _channels = _x.shape[-1]
    if groups < 1 or _channels % groups != 0:
        raise exceptions.ConfigError(
            "model.groups", f"{_channels} channels do not split into {groups} groups"
        )
    if eps <= 0:
        raise exceptions.UsageError(f"group_norm eps must be positive (got {eps})")
    _grouped = _x.reshape(*_x.shape[:-1], groups, _channels // groups)
    _centered = _grouped - _grouped.mean(axis=-1, keepdims=True)
    _variance = (_centered * _centered).mean(axis=-1, keepdims=True)
    _normed = _centered * (_variance + eps) ** -0.5
    return _normed.reshape(_x.shape)


def ada_gn(
    h,
    cond,
    scale_net: abc.Callable[[Tensor], Tensor],
    shift_net: abc.Callable[[Tensor], Tensor],
    groups: int = DEFAULT_GROUPS,
    eps: float = GROUP_NORM_EPS,
) -> Tensor:
    """adaptive group norm: `(1 + scale_net(cond)) * group_norm(h) + shift_net(cond)`"""
    _h = as_tensor(h)
    _scale = as_tensor(scale_net(as_tensor(cond)))
    _shift = as_tensor(shift_net(as_tensor(cond)))
    if _scale.shape != _h.shape or _shift.shape != _h.shape:
        raise exceptions.DimensionError(
            f"ada_gn: conditioning gives {_scale.shape}/{_shift.shape} for h{_h.shape}"
        )
    return (1.0 + _scale) * group_norm(_h, groups, eps) + _shift


def time_embed(t_frac, dim: int) -> np.ndarray:
    """sinusoidal embedding of a step fraction, sin and cos interleaved

    >>> time_embed(0.0, 4)
    array([0., 1., 0., 1.])

    accepts an array of fractions, giving one row each
    """
    if dim < 2 or dim % 2:
        raise exceptions.ConfigError(
            "model.time_embed_dim", f"must be a positive even number (got {dim})"
        )
    _half = dim // 2
    _frequencies = 10000.0 ** (-np.arange(_half) / _half)
    _phase = np.asarray(t_frac, dtype=np.float64)[..., None] * 1000.0 * _frequencies
    _out = np.empty(_phase.shape[:-1] + (dim,))
    _out[..., 0::2] = np.sin(_phase)
    _out[..., 1::2] = np.cos(_phase)
    return _out


###
# parameterized layers


@dataclasses.dataclass(frozen=True)
class Linear:
    """a dense layer whose weights live in a `ParamStore` under `<name>.weight`, `<name>.bias`"""

    store: ParamStore
    name: str

    @classmethod
    def create(
        cls,
        store: ParamStore,
        name: str,
        in_features: int,
        out_features: int,
        rng: np.random.Generator,
        *,
        zero_init: bool = False,
    ) -> Linear:
        if zero_init:
            _weight = np.zeros((out_features, in_features))
        else:
            # kaiming-uniform for the silu/relu family
            _bound = math.sqrt(6.0 / in_features)
            _weight = rng.uniform(-_bound, _bound, size=(out_features, in_features))
        store.add(f"{name}.weight", _weight)
        store.add(f"{name}.bias", np.zeros(out_features))
        return cls(store, name)

    @property
    def weight(self) -> Tensor:
        return self.store[f"{self.name}.weight"]

    @property
    def bias(self) -> Tensor:
        return self.store[f"{self.name}.bias"]

    @property
    def out_features(self) -> int:
        return self.weight.shape[0]

    def __call__(self, x) -> Tensor:
        return linear_forward(self.weight, self.bias, x)


@dataclasses.dataclass(frozen=True)
class AdaGN:
    """`ada_gn` with zero-initialized scale and shift layers (identity conditioning at start)"""

    scale: Linear
    shift: Linear
    groups: int

    @classmethod
    def create(
        cls,
        store: ParamStore,
        name: str,
        cond_features: int,
        channels: int,
        groups: int,
        rng: np.random.Generator,
    ) -> AdaGN:
        return cls(
            scale=Linear.create(
                store, f"{name}.scale", cond_features, channels, rng, zero_init=True
            ),
            shift=Linear.create(
                store, f"{name}.shift", cond_features, channels, rng, zero_init=True
            ),
            groups=effective_groups(channels, groups),
        )

    def __call__(self, h, cond) -> Tensor:
        return ada_gn(h, cond, self.scale, self.shift, self.groups)
