from __future__ import annotations

from collections import abc

import numpy as np

from .params import ParamStore
from .tensor import (
    Tensor,
    backward,
)


__all__ = ("grad_check",)


def grad_check(
    f: abc.Callable[[ParamStore], Tensor],
    params: ParamStore,
    eps: float = 1e-5,
) -> float:
    """max relative disagreement between analytic and central-difference gradients

    relative error per entry is `|a - n| / max(1e-8, |a| + |n|)`; `f` must be
    deterministic, and every parameter entry is perturbed (keep models tiny)
    """
    _analytic = backward(f(params), params)
    _worst = 0.0
    for _name, _param in params.items():
        _flat = _param.data.reshape(-1)  # a view: perturbations reach the store
        for _index in range(_flat.size):
            _original = _flat[_index]
            _flat[_index] = _original + eps
            _plus = f(params).item()
            _flat[_index] = _original - eps
            _minus = f(params).item()
            _flat[_index] = _original
            _numeric = (_plus - _minus) / (2.0 * eps)
            _exact = _analytic[_name].reshape(-1)[_index]
            _error = abs(_exact - _numeric) / max(1e-8, abs(_exact) + abs(_numeric))
            _worst = max(_worst, _error)
    return _worst
