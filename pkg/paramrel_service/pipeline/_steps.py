"""single-step model calls shared by the samplers (plain arrays in, plain arrays out)"""

import numpy as np

from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.model import ParamRelModel
from paramrel_toolkit.schedules import AccuracySchedule


def encoder_mean(model: ParamRelModel, theta, t) -> np.ndarray:
    return model.encode(theta, t).mean.data


def estimate_of(model: ParamRelModel, theta, z, t, sched: AccuracySchedule) -> np.ndarray:
    return model.estimate(theta, z, t, sched).data


def draw_from_output(
    kind: DataKind, estimate: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """a sample of the output distribution: the point itself, or one class per dimension"""
    if kind is DataKind.CONTINUOUS:
        return estimate
    _cumulative = np.cumsum(estimate, axis=-1)
    _u = rng.random(estimate.shape[:-1] + (1,))
    _classes = np.sum(_cumulative < _u, axis=-1)
    return np.minimum(_classes, estimate.shape[-1] - 1)


def most_likely(kind: DataKind, estimate: np.ndarray) -> np.ndarray:
    if kind is DataKind.CONTINUOUS:
        return estimate
    return np.argmax(estimate, axis=-1)
