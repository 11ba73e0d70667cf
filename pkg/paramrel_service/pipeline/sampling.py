"""generation: run the bayesian flow forward from the prior on the model's own outputs"""

from __future__ import annotations

import dataclasses
import enum
import logging

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.model import (
    ParamRelModel,
    reparam_sample,
)
from paramrel_toolkit.schedules import (
    AccuracySchedule,
    alpha_at,
)

from ._steps import (
    draw_from_output,
    estimate_of,
)
from .trajectory import (
    Trajectory,
    TrajectoryStep,
)


__all__ = (
    "Generation",
    "ZMode",
    "generate",
)

_logger = logging.getLogger(__name__)


@enum.unique
class ZMode(enum.Enum):
    PRIOR = "prior"
    """a fresh standard-normal latent at every step"""
    ENCODER = "encoder"
    """a draw from the self-encoder at every step"""
    FIXED = "fixed"
    """one given latent at every step; only the sender noise varies"""


@dataclasses.dataclass(frozen=True)
class Generation:
    samples: np.ndarray
    """(n, D): floats (continuous) or class indices (discrete)"""
    trajectory: Trajectory


def generate(
    model: ParamRelModel,
    sched: AccuracySchedule,
    n: int,
    rng: np.random.Generator,
    z_mode: ZMode = ZMode.PRIOR,
    *,
    z_fixed: np.ndarray | None = None,
) -> Generation:
    """sample `n` examples, recording the chain from `t = T` down to `t = 0`

    the chain starts from the prior parameters, whose output distribution
    gives the first pseudo-observation; each step then sends that
    observation at accuracy `alpha_t`, updates the parameters (now at
    `t - 1`) and draws the next observation from the model's output
    """
    if n < 1:
        raise exceptions.UsageError(f"need at least one sample (got {n})")
    _z_of = _latent_source(model, n, rng, z_mode, z_fixed)
    _flow = model.flow
    _theta = _flow.prior(model.config.data_dim, (n,))
    _z = _z_of(_theta, sched.T)
    _estimate = estimate_of(model, _theta, _z, sched.T, sched)
    _steps = [TrajectoryStep(t=sched.T, theta=_theta, z=_z, estimate=_estimate)]
    _x = draw_from_output(model.kind, _estimate, rng)
    for _t in sched.steps:
        _alpha = float(alpha_at(sched, _t))
        _y = _flow.sender_sample(_x, _alpha, rng).y
        _theta = _flow.update(_theta, _y, _alpha)
        _z = _z_of(_theta, _t - 1)
        _estimate = estimate_of(model, _theta, _z, _t - 1, sched)
        _steps.append(
            TrajectoryStep(
                t=int(_t) - 1,
                theta=_theta,
                z=_z,
                estimate=_estimate,
                sender=_y,
                alpha=_alpha,
            )
        )
        _x = draw_from_output(model.kind, _estimate, rng)
    _logger.debug("generated %d samples over %d steps (z: %s)", n, sched.T, z_mode.value)
    return Generation(samples=_x, trajectory=Trajectory(tuple(_steps)))


def _latent_source(model, n, rng, z_mode: ZMode, z_fixed):
    _L = model.config.latent_dim
    if z_mode is ZMode.PRIOR:
        return lambda theta, t: rng.standard_normal((n, _L))
    if z_mode is ZMode.ENCODER:
        return lambda theta, t: reparam_sample(model.encode(theta, t), rng).data
    if z_fixed is None:
        raise exceptions.UsageError("fixed latent mode needs z_fixed")
    _z = np.asarray(z_fixed, dtype=np.float64)
    if _z.shape[-1] != _L:
        raise exceptions.DimensionError(
            f"fixed latent has {_z.shape[-1]} dimensions, model has {_L}"
        )
    _z = np.broadcast_to(_z, (n, _L)).copy()
    return lambda theta, t: _z
