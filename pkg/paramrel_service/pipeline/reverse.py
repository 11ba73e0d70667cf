"""reverse sampling: undo the bayesian updates from full information back to the prior

the parameters reached at `t = T` are the input's noise code; decoding runs
the updates forward again from a code, steered by the model's estimates
"""

from __future__ import annotations

import logging

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.model import ParamRelModel
from paramrel_toolkit.schedules import (
    AccuracySchedule,
    alpha_at,
)

from ._steps import (
    encoder_mean,
    estimate_of,
    most_likely,
)
from .trajectory import (
    Trajectory,
    TrajectoryStep,
)


__all__ = (
    "decode",
    "encode_series",
    "noise_code",
    "reconstruct",
    "reverse_sample",
)

_logger = logging.getLogger(__name__)


def reverse_sample(
    model: ParamRelModel,
    sched: AccuracySchedule,
    x0,
    rng: np.random.Generator | None = None,
) -> Trajectory:
    """the chain from `t = 0` up to `t = T`, latents taken as encoder means

    starts from the flow mean at `t = 0`, or from a flow draw when `rng` is
    given; the step into `t` inverts the update at accuracy `alpha_t` with the
    sender mean of the previous observation (the data itself first, then the
    model's estimate at `t - 1`)
    """
    _flow = model.flow
    _x0 = np.asarray(x0)
    _theta = (
        _flow.flow_mean(_x0, 0, sched)
        if rng is None
        else _flow.sample_flow(_x0, 0, sched, rng)
    )
    _z = encoder_mean(model, _theta, 0)
    _estimate = estimate_of(model, _theta, _z, 0, sched)
    _steps = [TrajectoryStep(t=0, theta=_theta, z=_z, estimate=_estimate)]
    _observed = _flow.as_estimate(_x0)
    _truncated = False
    for _t in range(1, sched.T + 1):
        _alpha = float(alpha_at(sched, _t))
        _y = _flow.sender_mean(_observed, _alpha)
        try:
            _theta = _flow.inverse_update(_theta, _y, _alpha)
        except exceptions.SingularInverse as _error:
            _logger.warning("reverse chain stopped before step %d: %s", _t, _error)
            _truncated = True
            break
        _z = encoder_mean(model, _theta, _t)
        _estimate = estimate_of(model, _theta, _z, _t, sched)
        _steps.append(
            TrajectoryStep(
                t=_t, theta=_theta, z=_z, estimate=_estimate, sender=_y, alpha=_alpha
            )
        )
        _observed = _estimate
    return Trajectory(tuple(_steps), truncated=_truncated)


def noise_code(model: ParamRelModel, trajectory: Trajectory) -> np.ndarray:
    """the flat code of a complete reverse chain's final parameters"""
    if trajectory.truncated:
        raise exceptions.SingularInverse(
            f"reverse chain ended at step {trajectory.final.t}, not at the prior"
        )
    return model.flow.to_code(trajectory.final.theta)


def decode(
    model: ParamRelModel,
    sched: AccuracySchedule,
    code,
    z: np.ndarray | None = None,
) -> np.ndarray:
    """deterministic forward pass from noise codes (B, code_dim) at `t = T`

    each step sends the sender mean of the model's estimate; latents are
    encoder means unless `z` (B, L) is given, which is then used at every
    step; returns points (continuous) or most likely classes (discrete)
    """
    _flow = model.flow
    _theta = _flow.from_code(code, model.config.data_dim)
    for _t in sched.steps:
        _z = encoder_mean(model, _theta, _t) if z is None else z
        _estimate = estimate_of(model, _theta, _z, _t, sched)
        _alpha = float(alpha_at(sched, _t))
        _theta = _flow.update(_theta, _flow.sender_mean(_estimate, _alpha), _alpha)
    _z = encoder_mean(model, _theta, 0) if z is None else z
    return most_likely(model.kind, estimate_of(model, _theta, _z, 0, sched))


def reconstruct(
    model: ParamRelModel,
    sched: AccuracySchedule,
    x0,
    rng: np.random.Generator | None = None,
    *,
    z_step: int | None = None,
) -> np.ndarray:
    """reverse-sample `x0` to its noise code, then decode it

    with `z_step`, the latent the reverse chain recorded at that step
    conditions every decoding step
    """
    if z_step is not None and not 0 <= z_step <= sched.T:
        raise exceptions.UsageError(f"z_step must lie in [0, {sched.T}] (got {z_step})")
    _trajectory = reverse_sample(model, sched, x0, rng)
    _code = noise_code(model, _trajectory)
    _z = None if z_step is None else _trajectory.at(z_step).z
    return decode(model, sched, _code, _z)


def encode_series(
    model: ParamRelModel,
    sched: AccuracySchedule,
    x0,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """latents {z_t} for t = 0..T, shape (T + 1, B, L)"""
    _trajectory = reverse_sample(model, sched, x0, rng)
    if _trajectory.truncated:
        raise exceptions.SingularInverse(
            f"reverse chain ended at step {_trajectory.final.t}, not at the prior"
        )
    return _trajectory.latents()
