"""latent-space walks: interpolation between noise codes and single-coordinate traversals

>>> lerp(np.array([0.0, 2.0]), np.array([4.0, 2.0]), 0.25)
array([1., 2.])
>>> np.round(slerp(np.array([1.0, 0.0]), np.array([0.0, 1.0]), 0.5), 6)
array([0.707107, 0.707107])
"""

from __future__ import annotations

import dataclasses
import enum
import logging

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.model import ParamRelModel
from paramrel_toolkit.schedules import AccuracySchedule

from .reverse import (
    decode,
    noise_code,
    reverse_sample,
)


__all__ = (
    "Interpolation",
    "InterpolationMode",
    "TRAVERSAL_RANGE",
    "Traversal",
    "interpolate",
    "lerp",
    "slerp",
    "traverse",
)

_logger = logging.getLogger(__name__)

TRAVERSAL_RANGE = (-3.0, 3.0)
DEGENERATE_ANGLE = 1e-7
"""slerp falls back to lerp when the angle's sine is below this"""


@enum.unique
class InterpolationMode(enum.Enum):
    LINEAR = "linear"
    SLERP = "slerp"


@dataclasses.dataclass(frozen=True)
class Interpolation:
    lambdas: np.ndarray
    codes: np.ndarray
    """(M, code_dim) interpolated noise codes"""
    outputs: np.ndarray
    """(M, D) decoded outputs"""
    mode: InterpolationMode


@dataclasses.dataclass(frozen=True)
class Traversal:
    dim: int
    values: np.ndarray
    latents: np.ndarray
    """(M, L): identical rows apart from column `dim`"""
    outputs: np.ndarray


def lerp(a, b, lam: float) -> np.ndarray:
    return (1.0 - lam) * np.asarray(a, dtype=np.float64) + lam * np.asarray(b, dtype=np.float64)


def slerp(a, b, lam: float) -> np.ndarray:
    """spherical interpolation along the great circle through `a` and `b`"""
    _a, _b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    _angle = _angle_between(_a, _b)
    if _angle is None:
        _logger.warning("slerp between (anti)parallel or zero vectors; interpolating linearly")
        return lerp(_a, _b, lam)
    _sin = np.sin(_angle)
    return (np.sin((1.0 - lam) * _angle) / _sin) * _a + (np.sin(lam * _angle) / _sin) * _b


def interpolate(
    model: ParamRelModel,
    sched: AccuracySchedule,
    x_a,
    x_b,
    mode: InterpolationMode,
    steps: int,
    rng: np.random.Generator | None = None,
) -> Interpolation:
    """walk between the noise codes of two inputs and decode every point"""
    if steps < 2:
        raise exceptions.UsageError(f"need at least 2 interpolation steps (got {steps})")
    _code_a, _code_b = (
        noise_code(model, reverse_sample(model, sched, np.asarray(_x)[None], rng))[0]
        for _x in (x_a, x_b)
    )
    _mode = mode
    if mode is InterpolationMode.SLERP and _angle_between(_code_a, _code_b) is None:
        _logger.warning("noise codes are (anti)parallel; interpolating linearly")
        _mode = InterpolationMode.LINEAR
    _walk = lerp if _mode is InterpolationMode.LINEAR else slerp
    _lambdas = np.linspace(0.0, 1.0, steps)
    _codes = np.stack([_walk(_code_a, _code_b, _lam) for _lam in _lambdas])
    return Interpolation(
        lambdas=_lambdas,
        codes=_codes,
        outputs=decode(model, sched, _codes),
        mode=_mode,
    )


def traverse(
    model: ParamRelModel,
    sched: AccuracySchedule,
    x0,
    dim: int,
    lo: float = TRAVERSAL_RANGE[0],
    hi: float = TRAVERSAL_RANGE[1],
    steps: int = 7,
    rng: np.random.Generator | None = None,
    *,
    z_step: int | None = None,
) -> Traversal:
    """sweep latent coordinate `dim` over [lo, hi] with the rest held at the input's latent

    the held latent is the reverse chain's encoder mean at `z_step` (default
    `T // 2`); every point decodes the input's noise code with that latent
    """
    _L = model.config.latent_dim
    if not 0 <= dim < _L:
        raise exceptions.UsageError(f"latent dimension {dim} outside [0, {_L})")
    if steps < 2:
        raise exceptions.UsageError(f"need at least 2 traversal steps (got {steps})")
    _z_step = sched.T // 2 if z_step is None else z_step
    if not 0 <= _z_step <= sched.T:
        raise exceptions.UsageError(f"z_step must lie in [0, {sched.T}] (got {z_step})")
    _trajectory = reverse_sample(model, sched, np.asarray(x0)[None], rng)
    _code = noise_code(model, _trajectory)[0]
    _values = np.linspace(lo, hi, steps)
    _latents = np.tile(_trajectory.at(_z_step).z[0], (steps, 1))
    _latents[:, dim] = _values
    return Traversal(
        dim=dim,
        values=_values,
        latents=_latents,
        outputs=decode(model, sched, np.tile(_code, (steps, 1)), _latents),
    )


def _angle_between(a: np.ndarray, b: np.ndarray) -> float | None:
    _norms = np.linalg.norm(a) * np.linalg.norm(b)
    if _norms == 0:
        return None
    _angle = float(np.arccos(np.clip(np.dot(a.ravel(), b.ravel()) / _norms, -1.0, 1.0)))
    if np.sin(_angle) < DEGENERATE_ANGLE:
        return None
    return _angle
