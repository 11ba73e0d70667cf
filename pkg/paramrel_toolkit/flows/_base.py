from __future__ import annotations

import dataclasses
import typing

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.schedules import AccuracySchedule


__all__ = (
    "BayesianFlow",
    "SenderSample",
    "column",
    "require_finite",
)


@dataclasses.dataclass(frozen=True)
class SenderSample:
    y: np.ndarray
    """shape (..., D) for continuous data, (..., D, K) for discrete"""
    alpha: np.ndarray


class BayesianFlow(typing.Protocol):
    """what the model and the samplers need from one family of input distributions

    `x0` is data in its native form (floats for continuous, class indices
    for discrete); an "estimate" is the model's output in the space the
    sender works in (a point for continuous, class probabilities for discrete)
    """

    kind: DataKind

    def prior(self, D: int, batch: tuple[int, ...] = ()) -> typing.Any: ...

    def update(self, p, y, alpha) -> typing.Any: ...

    def inverse_update(self, p_next, y, alpha) -> typing.Any: ...

    def sample_flow(
        self, x0, t, sched: AccuracySchedule, rng: np.random.Generator
    ) -> typing.Any: ...

    def flow_mean(self, x0, t, sched: AccuracySchedule) -> typing.Any: ...

    def sender_sample(self, x0, alpha, rng: np.random.Generator) -> SenderSample: ...

    def sender_mean(self, estimate, alpha) -> np.ndarray:
        """the sender's mean message for an estimate (deterministic decoding)"""
        ...

    def as_estimate(self, x0) -> np.ndarray:
        """data expressed as an exact estimate"""
        ...

    def features(self, p) -> np.ndarray:
        """network input features, one flat row per batch entry"""
        ...

    def to_code(self, p) -> np.ndarray:
        """flat vector for latent-space arithmetic (interpolation)"""
        ...

    def from_code(self, code, D: int) -> typing.Any: ...


def column(values) -> np.ndarray:
    """per-row values shaped to broadcast against (..., D) arrays"""
    return np.asarray(values, dtype=np.float64)[..., None]


def require_finite(values, what: str) -> np.ndarray:
    _values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(_values)):
        raise exceptions.DataError(f"{what} has non-finite entries")
    return _values
