"""ranking, reconstruction and informativeness scores

>>> auroc([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1])
0.75
>>> reconstruction_error([0, 0, 0, 0], [1, 1, 1, 1], "mse")
1.0
"""

from __future__ import annotations

import dataclasses
import enum
import logging

import numpy as np
from scipy import stats

from paramrel_toolkit import exceptions


__all__ = (
    "FactorScore",
    "ReconstructionMetric",
    "auroc",
    "informativeness",
    "reconstruction_error",
)

_logger = logging.getLogger(__name__)


@enum.unique
class ReconstructionMetric(enum.Enum):
    MSE = "mse"
    BIT_ACCURACY = "bit_accuracy"


@dataclasses.dataclass(frozen=True)
class FactorScore:
    factor: str
    score: float | None
    """R^2 of the best linear fit, clipped to [0, 1]; None for a constant factor"""

    @property
    def omitted(self) -> bool:
        return self.score is None


def auroc(scores, labels) -> float:
    """Mann-Whitney area under the ROC curve, ties counted as half"""
    _scores = np.asarray(scores, dtype=np.float64).ravel()
    _labels = np.asarray(labels).ravel()
    if _scores.shape != _labels.shape:
        raise exceptions.DimensionError(
            f"{_scores.size} scores for {_labels.size} labels"
        )
    if not np.all(np.isin(_labels, (0, 1))):
        raise exceptions.UsageError("labels must be 0 or 1")
    _positive = _labels == 1
    _n_pos = int(_positive.sum())
    _n_neg = _labels.size - _n_pos
    if _n_pos == 0 or _n_neg == 0:
        raise exceptions.UndefinedMetric("AUROC needs both classes present")
    _ranks = stats.rankdata(_scores)
    _u = _ranks[_positive].sum() - _n_pos * (_n_pos + 1) / 2.0
    return float(_u / (_n_pos * _n_neg))


def reconstruction_error(x, xhat, kind: ReconstructionMetric | str) -> float:
    _kind = ReconstructionMetric(kind)
    _x, _xhat = np.asarray(x), np.asarray(xhat)
    if _x.shape != _xhat.shape:
        raise exceptions.DimensionError(f"shapes differ: {_x.shape} vs {_xhat.shape}")
    if _kind is ReconstructionMetric.MSE:
        _diff = _x.astype(np.float64) - _xhat.astype(np.float64)
        return float(np.mean(_diff * _diff))
    if not (np.all(np.isin(_x, (0, 1))) and np.all(np.isin(_xhat, (0, 1)))):
        raise exceptions.UsageError("bit accuracy needs binary data on both sides")
    return float(np.mean(_x == _xhat))


def informativeness(z, factors, names=None) -> list[FactorScore]:
    """how much of each factor a linear read-out of `z` recovers"""
    _z = np.asarray(z, dtype=np.float64)
    _factors = np.asarray(factors, dtype=np.float64)
    if _factors.ndim == 1:
        _factors = _factors[:, None]
    if _z.shape[0] != _factors.shape[0]:
        raise exceptions.DimensionError(
            f"{_z.shape[0]} latents for {_factors.shape[0]} factor rows"
        )
    _names = names or [f"factor_{_i}" for _i in range(_factors.shape[1])]
    _design = np.hstack([_z, np.ones((_z.shape[0], 1))])
    _scores = []
    for _name, _factor in zip(_names, _factors.T):
        if np.unique(_factor).size < 2:
            _logger.warning("factor %s takes a single value; informativeness omitted", _name)
            _scores.append(FactorScore(_name, None))
            continue
        _coef, *_ = np.linalg.lstsq(_design, _factor, rcond=None)
        _residual = _factor - _design @ _coef
        _centered = _factor - _factor.mean()
        _r2 = 1.0 - float(_residual @ _residual) / float(_centered @ _centered)
        _scores.append(FactorScore(_name, float(np.clip(_r2, 0.0, 1.0))))
    return _scores
