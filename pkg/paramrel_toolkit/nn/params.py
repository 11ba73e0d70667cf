from __future__ import annotations

import typing
from collections import abc

import numpy as np

from paramrel_toolkit import exceptions

from .tensor import Tensor


__all__ = ("ParamStore",)


class ParamStore(abc.Mapping[str, Tensor]):
    """named trainable tensors, iterated in lexicographic name order

    >>> store = ParamStore()
    >>> _ = store.add("b.weight", np.zeros((2, 3)))
    >>> _ = store.add("a.bias", np.zeros(2))
    >>> list(store)
    ['a.bias', 'b.weight']
    >>> store.add("a.bias", np.ones(2))
    Traceback (most recent call last):
      ...
    paramrel_toolkit.exceptions.UsageError: duplicate parameter name 'a.bias'
    """

    def __init__(self) -> None:
        self._tensors: dict[str, Tensor] = {}

    def add(self, name: str, value: typing.Any) -> Tensor:
        if name in self._tensors:
            raise exceptions.UsageError(f"duplicate parameter name {name!r}")
        _tensor = Tensor(np.array(value, dtype=np.float64), requires_grad=True)
        self._tensors[name] = _tensor
        return _tensor

    def assign(self, name: str, value: typing.Any) -> None:
        """overwrite a parameter's values in place; shapes never change"""
        _tensor = self[name]
        _value = np.asarray(value, dtype=np.float64)
        if _value.shape != _tensor.shape:
            raise exceptions.DimensionError(
                f"{name}: expected shape {_tensor.shape}, got {_value.shape}"
            )
        _tensor.data[...] = _value

    def snapshot(self) -> dict[str, np.ndarray]:
        """copies of every parameter array (safe to read while training continues)"""
        return {_name: _tensor.data.copy() for _name, _tensor in self.items()}

    def subset(self, prefix: str) -> dict[str, Tensor]:
        return {_name: _t for _name, _t in self.items() if _name.startswith(prefix)}

    @property
    def total_size(self) -> int:
        return sum(_tensor.size for _tensor in self.values())

    ###
    # abc.Mapping

    def __getitem__(self, name: str) -> Tensor:
        try:
            return self._tensors[name]
        except KeyError:
            raise exceptions.UsageError(f"no parameter named {name!r}")

    def __iter__(self) -> abc.Iterator[str]:
        return iter(sorted(self._tensors))

    def __len__(self) -> int:
        return len(self._tensors)

    def __contains__(self, name: object) -> bool:
        return name in self._tensors
