"""
.. include:: README.md
"""

from . import (
    exceptions,
    flows,
    model,
    nn,
    objective,
    schedules,
)
from .data_kinds import DataKind
from .flows import (
    BayesianFlow,
    ContinuousParams,
    DiscreteParams,
)
from .model import (
    LatentGaussian,
    ModelConfig,
    ParamRelModel,
)
from .objective import (
    LossBreakdown,
    LossWeights,
)
from .schedules import AccuracySchedule


__all__ = (
    "AccuracySchedule",
    "BayesianFlow",
    "ContinuousParams",
    "DataKind",
    "DiscreteParams",
    "LatentGaussian",
    "LossBreakdown",
    "LossWeights",
    "ModelConfig",
    "ParamRelModel",
    # whole modules:
    "exceptions",
    "flows",
    "model",
    "nn",
    "objective",
    "schedules",
)
