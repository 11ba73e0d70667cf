from __future__ import annotations

import dataclasses
from collections import abc

import numpy as np

from paramrel_toolkit import exceptions

from .params import ParamStore


__all__ = (
    "AdamState",
    "adam_step",
)


@dataclasses.dataclass
class AdamState:
    """moment estimates and step count for one `ParamStore`; owned by a single training loop"""

    lr: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    first_moment: dict[str, np.ndarray] = dataclasses.field(default_factory=dict)
    second_moment: dict[str, np.ndarray] = dataclasses.field(default_factory=dict)

    @classmethod
    def for_params(cls, params: ParamStore, **hyperparameters) -> AdamState:
        return cls(
            first_moment={_name: np.zeros(_p.shape) for _name, _p in params.items()},
            second_moment={_name: np.zeros(_p.shape) for _name, _p in params.items()},
            **hyperparameters,
        )


def adam_step(
    params: ParamStore,
    grads: abc.Mapping[str, np.ndarray],
    state: AdamState,
) -> AdamState:
    """one bias-corrected adam update, applied to `params` in place"""
    if set(grads) != set(params) or set(state.first_moment) != set(params):
        raise exceptions.UsageError("gradients and optimizer state must cover every parameter")
    for _name, _param in params.items():
        if np.shape(grads[_name]) != _param.shape:
            raise exceptions.DimensionError(
                f"{_name}: gradient shape {np.shape(grads[_name])} != {_param.shape}"
            )
    state.step += 1
    _correction1 = 1.0 - state.beta1**state.step
    _correction2 = 1.0 - state.beta2**state.step
    for _name, _param in params.items():
        _grad = np.asarray(grads[_name], dtype=np.float64)
        _m = state.first_moment[_name]
        _v = state.second_moment[_name]
        _m *= state.beta1
        _m += (1.0 - state.beta1) * _grad
        _v *= state.beta2
        _v += (1.0 - state.beta2) * _grad * _grad
        _param.data -= (
            state.lr * (_m / _correction1) / (np.sqrt(_v / _correction2) + state.eps)
        )
    return state
