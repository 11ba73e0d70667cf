"""dense float64 tensors with reverse-mode differentiation

a `Tensor` wraps a numpy array; every operation on tensors that require
gradients records its parents and a backward closure, so `backward` can walk
the graph from a scalar loss:

>>> w = Tensor([1.0, 2.0], requires_grad=True)
>>> loss = (w * w).sum()
>>> float(loss)
5.0
>>> backward(loss, {"w": w})["w"]
array([2., 4.])

forward operations are pure -- they never touch their inputs -- and the
gradients are returned rather than stored on the nodes.
"""

from __future__ import annotations

import typing
from collections import abc

import numpy as np

from paramrel_toolkit import exceptions


__all__ = (
    "Tensor",
    "as_tensor",
    "backward",
    "concat",
    "matmul",
)


_BackwardFn = abc.Callable[[np.ndarray], tuple[np.ndarray | None, ...]]


class Tensor:
    """a float64 array that remembers how it was computed"""

    __slots__ = ("data", "requires_grad", "_parents", "_backward")

    # let numpy defer to our reflected operators (`ndarray + Tensor` -> Tensor.__radd__)
    __array_ufunc__ = None

    def __init__(
        self,
        data: typing.Any,
        *,
        requires_grad: bool = False,
        _parents: tuple[Tensor, ...] = (),
        _backward: _BackwardFn | None = None,
    ):
        self.data = np.asarray(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self._parents = _parents
        self._backward = _backward

    def __repr__(self) -> str:
        return f"Tensor({self.data!r}, requires_grad={self.requires_grad})"

    ###
    # plain-array conveniences

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    def numpy(self) -> np.ndarray:
        return self.data.copy()

    def item(self) -> float:
        return float(self.data.item())

    def __float__(self) -> float:
        return self.item()

    def detach(self) -> Tensor:
        return Tensor(self.data)

    ###
    # arithmetic

    def __add__(self, other) -> Tensor:
        _other = as_tensor(other)
        return _make(
            self.data + _other.data,
            (self, _other),
            lambda g: (_unbroadcast(g, self.shape), _unbroadcast(g, _other.shape)),
        )

    __radd__ = __add__

    def __sub__(self, other) -> Tensor:
        _other = as_tensor(other)
        return _make(
            self.data - _other.data,
            (self, _other),
            lambda g: (_unbroadcast(g, self.shape), _unbroadcast(-g, _other.shape)),
        )

    def __rsub__(self, other) -> Tensor:
        return as_tensor(other) - self

    def __mul__(self, other) -> Tensor:
        _other = as_tensor(other)
        return _make(
            self.data * _other.data,
            (self, _other),
            lambda g: (
                _unbroadcast(g * _other.data, self.shape),
                _unbroadcast(g * self.data, _other.shape),
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> Tensor:
        _other = as_tensor(other)
        return _make(
            self.data / _other.data,
            (self, _other),
            lambda g: (
                _unbroadcast(g / _other.data, self.shape),
                _unbroadcast(-g * self.data / (_other.data**2), _other.shape),
            ),
        )

    def __rtruediv__(self, other) -> Tensor:
        return as_tensor(other) / self

    def __neg__(self) -> Tensor:
        return _make(-self.data, (self,), lambda g: (-g,))

    def __pow__(self, exponent: float) -> Tensor:
        if isinstance(exponent, Tensor):
            raise exceptions.UsageError("only constant exponents are supported")
        _exponent = float(exponent)
        return _make(
            self.data**_exponent,
            (self,),
            lambda g: (g * _exponent * self.data ** (_exponent - 1.0),),
        )

    def __matmul__(self, other) -> Tensor:
        return matmul(self, other)

    def __getitem__(self, index) -> Tensor:
        _parts = index if isinstance(index, tuple) else (index,)
        _fancy = any(isinstance(_part, (list, np.ndarray)) for _part in _parts)

        def _backward(g):
            _grad = np.zeros_like(self.data)
            if _fancy:
                np.add.at(_grad, index, g)
            else:
                _grad[index] += g
            return (_grad,)

        return _make(self.data[index], (self,), _backward)

    ###
    # reductions and shape

    def sum(self, axis=None, keepdims: bool = False) -> Tensor:
        def _backward(g):
            if axis is not None and not keepdims:
                g = np.expand_dims(g, axis)
            return (np.broadcast_to(g, self.shape).copy(),)

        return _make(self.data.sum(axis=axis, keepdims=keepdims), (self,), _backward)

    def mean(self, axis=None, keepdims: bool = False) -> Tensor:
        _count = self.data.size if axis is None else _axis_size(self.shape, axis)
        return self.sum(axis=axis, keepdims=keepdims) / _count

    def reshape(self, *shape) -> Tensor:
        _shape = shape[0] if len(shape) == 1 and isinstance(shape[0], tuple) else shape
        return _make(
            self.data.reshape(_shape),
            (self,),
            lambda g: (g.reshape(self.shape),),
        )

    @property
    def T(self) -> Tensor:
        return _make(self.data.T, (self,), lambda g: (g.T,))

    ###
    # elementwise functions

    def exp(self) -> Tensor:
        _out = np.exp(self.data)
        return _make(_out, (self,), lambda g: (g * _out,))

    def log(self) -> Tensor:
        return _make(np.log(self.data), (self,), lambda g: (g / self.data,))

    def sigmoid(self) -> Tensor:
        _out = _stable_sigmoid(self.data)
        return _make(_out, (self,), lambda g: (g * _out * (1.0 - _out),))

    def silu(self) -> Tensor:
        _sig = _stable_sigmoid(self.data)
        return _make(
            self.data * _sig,
            (self,),
            lambda g: (g * (_sig + self.data * _sig * (1.0 - _sig)),),
        )

    def clip(self, low: float, high: float) -> Tensor:
        _inside = (self.data >= low) & (self.data <= high)
        return _make(
            np.clip(self.data, low, high),
            (self,),
            lambda g: (g * _inside,),
        )

    def logsumexp(self, axis: int = -1, keepdims: bool = False) -> Tensor:
        _max = np.max(self.data, axis=axis, keepdims=True)
        _shifted = np.exp(self.data - _max)
        _total = _shifted.sum(axis=axis, keepdims=True)
        _out = np.log(_total) + _max
        _softmax = _shifted / _total

        def _backward(g):
            if not keepdims:
                g = np.expand_dims(g, axis)
            return (g * _softmax,)

        return _make(
            _out if keepdims else np.squeeze(_out, axis=axis), (self,), _backward
        )

    def log_softmax(self, axis: int = -1) -> Tensor:
        return self - self.logsumexp(axis=axis, keepdims=True)

    def softmax(self, axis: int = -1) -> Tensor:
        return self.log_softmax(axis=axis).exp()


def as_tensor(value: typing.Any) -> Tensor:
    """wrap arrays and numbers as constant tensors; pass tensors through"""
    if isinstance(value, Tensor):
        return value
    return Tensor(value)


def matmul(a, b) -> Tensor:
    """`a @ b` for `a` of shape `(..., n)` and 2-d `b` of shape `(n, m)`"""
    _a, _b = as_tensor(a), as_tensor(b)
    if _b.ndim != 2 or _a.ndim < 1 or _a.shape[-1] != _b.shape[0]:
        raise exceptions.DimensionError(f"cannot matmul {_a.shape} by {_b.shape}")

    def _backward(g):
        _grad_a = g @ _b.data.T
        _grad_b = _a.data.reshape(-1, _a.shape[-1]).T @ g.reshape(-1, _b.shape[1])
        return (_grad_a, _grad_b)

    return _make(_a.data @ _b.data, (_a, _b), _backward)


def concat(tensors: abc.Sequence, axis: int = -1) -> Tensor:
    _tensors = tuple(as_tensor(_t) for _t in tensors)
    _sizes = [_t.shape[axis] for _t in _tensors]
    _splits = np.cumsum(_sizes)[:-1]

    def _backward(g):
        return tuple(np.split(g, _splits, axis=axis))

    return _make(
        np.concatenate([_t.data for _t in _tensors], axis=axis), _tensors, _backward
    )


def backward(loss: Tensor, params: abc.Mapping[str, Tensor]) -> dict[str, np.ndarray]:
    """gradients of a scalar `loss` with respect to each named parameter

    parameters the loss does not reach get exactly-zero gradients
    """
    if loss.size != 1:
        raise exceptions.UsageError(f"loss must be scalar (got shape {loss.shape})")
    _grads: dict[int, np.ndarray] = {id(loss): np.ones_like(loss.data)}
    for _node in reversed(_topological_order(loss)):
        _grad = _grads.get(id(_node))
        if _grad is None or _node._backward is None:
            continue
        for _parent, _parent_grad in zip(_node._parents, _node._backward(_grad)):
            if _parent_grad is None or not _parent.requires_grad:
                continue
            if id(_parent) in _grads:
                _grads[id(_parent)] = _grads[id(_parent)] + _parent_grad
            else:
                _grads[id(_parent)] = _parent_grad
    return {
        _name: (
            _grads[id(_param)].reshape(_param.shape)
            if id(_param) in _grads
            else np.zeros_like(_param.data)
        )
        for _name, _param in params.items()
    }


###
# local helpers


def _make(data, parents: tuple[Tensor, ...], backward_fn: _BackwardFn) -> Tensor:
    if any(_parent.requires_grad for _parent in parents):
        return Tensor(data, requires_grad=True, _parents=parents, _backward=backward_fn)
    return Tensor(data)


def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """sum `grad` down to `shape`, undoing numpy broadcasting"""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for _axis, _size in enumerate(shape):
        if _size == 1 and grad.shape[_axis] != 1:
            grad = grad.sum(axis=_axis, keepdims=True)
    return grad


def _axis_size(shape: tuple[int, ...], axis) -> int:
    _axes = axis if isinstance(axis, tuple) else (axis,)
    return int(np.prod([shape[_a] for _a in _axes]))


def _stable_sigmoid(x: np.ndarray) -> np.ndarray:
    _exp = np.exp(-np.abs(x))
    return np.where(x >= 0, 1.0 / (1.0 + _exp), _exp / (1.0 + _exp))


def _topological_order(root: Tensor) -> list[Tensor]:
    _order: list[Tensor] = []
    _seen: set[int] = set()
    _stack: list[tuple[Tensor, bool]] = [(root, False)]
    while _stack:
        _node, _expanded = _stack.pop()
        if _expanded:
            _order.append(_node)
            continue
        if id(_node) in _seen:
            continue
        _seen.add(id(_node))
        _stack.append((_node, True))
        for _parent in _node._parents:
            if _parent.requires_grad and id(_parent) not in _seen:
                _stack.append((_parent, False))
    return _order
