from __future__ import annotations

import dataclasses
import typing

import numpy as np

from paramrel_toolkit import exceptions


__all__ = (
    "Trajectory",
    "TrajectoryStep",
)


@dataclasses.dataclass(frozen=True)
class TrajectoryStep:
    t: int
    theta: typing.Any
    """input-distribution parameters at step `t` (a snapshot, never mutated)"""
    z: np.ndarray
    """latent the decoder saw at `t` (encoder mean when reverse-sampling)"""
    estimate: np.ndarray
    """the model's estimate at `t`: points (continuous) or class probabilities"""
    sender: np.ndarray | None = None
    """message that moved the chain into this step (none for the first record)"""
    alpha: float | None = None


@dataclasses.dataclass(frozen=True)
class Trajectory:
    steps: tuple[TrajectoryStep, ...]
    truncated: bool = False
    """reverse sampling stopped early at a singular inverse update"""

    def __post_init__(self):
        _ts = self.ts
        _gaps = np.diff(_ts)
        if len(_ts) > 1 and not (np.all(_gaps < 0) or np.all(_gaps > 0)):
            raise exceptions.UsageError(f"trajectory steps must be strictly monotone: {_ts}")

    @property
    def ts(self) -> list[int]:
        return [_step.t for _step in self.steps]

    @property
    def first(self) -> TrajectoryStep:
        return self.steps[0]

    @property
    def final(self) -> TrajectoryStep:
        return self.steps[-1]

    def at(self, t: int) -> TrajectoryStep:
        for _step in self.steps:
            if _step.t == t:
                return _step
        raise KeyError(f"no step {t} in trajectory {self.ts}")

    def latents(self) -> np.ndarray:
        """every recorded latent, stacked in trajectory order: (steps, ..., L)"""
        return np.stack([_step.z for _step in self.steps])
