"""accuracy schedules over the reversed step index

steps count down: `t = T` is the prior (no information) and `t = 0` is full
information, so `info_time(t) = 1 - t/T` runs the other way

>>> sched = AccuracySchedule(T=4, kind=DataKind.DISCRETE, beta1=4.0)
>>> float(info_time(sched, 2))
0.5
>>> float(beta_at(sched, 2))
1.0
>>> [float(alpha_at(sched, t)) for t in (4, 3, 2, 1)]
[0.25, 0.75, 1.25, 1.75]
"""

from __future__ import annotations

import dataclasses

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind


__all__ = (
    "AccuracySchedule",
    "alpha_at",
    "beta_at",
    "gamma_at",
    "info_time",
)


@dataclasses.dataclass(frozen=True)
class AccuracySchedule:
    T: int
    kind: DataKind
    sigma1: float = 0.02
    """continuous kind: standard deviation of the flow at full information"""
    beta1: float = 4.0
    """discrete kind: accumulated accuracy at full information"""

    def __post_init__(self):
        if self.T < 1:
            raise exceptions.ConfigError("schedule.T", f"must be at least 1 (got {self.T})")
        if self.kind is DataKind.CONTINUOUS and not (0.0 < self.sigma1 < 1.0):
            raise exceptions.ConfigError(
                "schedule.sigma1", f"must lie in (0, 1) (got {self.sigma1})"
            )
        if self.kind is DataKind.DISCRETE and not self.beta1 > 0.0:
            raise exceptions.ConfigError(
                "schedule.beta1", f"must be positive (got {self.beta1})"
            )

    @property
    def steps(self) -> np.ndarray:
        """every step index a sampler visits, in visiting order (T down to 1)"""
        return np.arange(self.T, 0, -1)


def info_time(sched: AccuracySchedule, t) -> np.ndarray:
    _t = _checked_steps(sched, t, low=0)
    return 1.0 - _t / sched.T


def beta_at(sched: AccuracySchedule, t) -> np.ndarray:
    return _beta_of_info(sched, info_time(sched, t))


def alpha_at(sched: AccuracySchedule, t) -> np.ndarray:
    """accuracy of the sender step taken at `t` (from `1` to `T`)"""
    _t = _checked_steps(sched, t, low=1)
    return _beta_of_info(sched, 1.0 - (_t - 1) / sched.T) - _beta_of_info(
        sched, 1.0 - _t / sched.T
    )


def gamma_at(sched: AccuracySchedule, t) -> np.ndarray:
    """continuous flow mean coefficient `beta / (1 + beta)`"""
    if sched.kind is not DataKind.CONTINUOUS:
        raise exceptions.UsageError("gamma is defined for continuous schedules only")
    _beta = beta_at(sched, t)
    return _beta / (1.0 + _beta)


###
# local helpers


def _beta_of_info(sched: AccuracySchedule, u: np.ndarray) -> np.ndarray:
    if sched.kind is DataKind.CONTINUOUS:
        # sigma1 ** (-2u) - 1, without cancellation near u = 0
        return np.expm1(-2.0 * u * np.log(sched.sigma1))
    return sched.beta1 * u * u


def _checked_steps(sched: AccuracySchedule, t, *, low: int) -> np.ndarray:
    _t = np.asarray(t, dtype=np.float64)
    if np.any(_t < low) or np.any(_t > sched.T):
        raise exceptions.UsageError(
            f"step index out of range [{low}, {sched.T}]: {np.asarray(t)!r}"
        )
    return _t
