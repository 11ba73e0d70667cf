"""linear probes on latents: stratified k-fold logistic regression scored by AUROC"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np
from scipy import (
    optimize,
    special,
)

from paramrel_toolkit import exceptions

from .metrics import (
    auroc,
    informativeness,
)


__all__ = (
    "MIN_PER_CLASS",
    "OMITTED",
    "ProbeResult",
    "binarize_factor",
    "fit_logistic",
    "latent_probe",
    "probe_factors",
)

_logger = logging.getLogger(__name__)

MIN_PER_CLASS = 100
L2_PENALTY = 1e-4
# value of a score that could not be computed
OMITTED = "NA"
TOLERANCE = 1e-6


@dataclasses.dataclass(frozen=True)
class ProbeResult:
    mean: float
    std: float
    fold_aurocs: tuple[float, ...]


def latent_probe(z, labels, folds: int = 5, seed: int = 0) -> ProbeResult:
    """held-out AUROC of a logistic probe, mean and std over `folds` stratified folds"""
    _z = np.asarray(z, dtype=np.float64)
    _labels = np.asarray(labels).ravel()
    if _z.ndim != 2 or _z.shape[0] != _labels.size:
        raise exceptions.DimensionError(
            f"latents of shape {_z.shape} for {_labels.size} labels"
        )
    if not np.all(np.isin(_labels, (0, 1))):
        raise exceptions.UsageError("probe labels must be 0 or 1")
    _counts = np.bincount(_labels.astype(np.int64), minlength=2)
    if _counts.min() == 0:
        raise exceptions.UndefinedMetric("probe labels hold a single class")
    if _counts.min() < MIN_PER_CLASS:
        raise exceptions.UsageError(
            f"need at least {MIN_PER_CLASS} examples per class (got {_counts.tolist()})"
        )
    if folds < 2:
        raise exceptions.UsageError(f"need at least 2 folds (got {folds})")
    _aurocs = []
    for _held_out in _stratified_folds(_labels, folds, np.random.default_rng(seed)):
        _train = np.ones(_labels.size, dtype=bool)
        _train[_held_out] = False
        _mean = _z[_train].mean(axis=0)
        _scale = _z[_train].std(axis=0)
        _scale[_scale == 0] = 1.0
        _weights, _bias = fit_logistic((_z[_train] - _mean) / _scale, _labels[_train])
        _scores = ((_z[_held_out] - _mean) / _scale) @ _weights + _bias
        _aurocs.append(auroc(_scores, _labels[_held_out]))
    _result = ProbeResult(
        mean=float(np.mean(_aurocs)),
        std=float(np.std(_aurocs)),
        fold_aurocs=tuple(_aurocs),
    )
    _logger.debug("probe AUROC %.4f +- %.4f over %d folds", _result.mean, _result.std, folds)
    return _result


def fit_logistic(x, y) -> tuple[np.ndarray, float]:
    """minimize the mean logistic loss plus a small L2 penalty on the weights"""
    _x = np.asarray(x, dtype=np.float64)
    _y = np.asarray(y, dtype=np.float64)
    _n, _L = _x.shape

    def _loss(params):
        _w, _b = params[:_L], params[_L]
        _logits = _x @ _w + _b
        # log(1 + exp(l)) - y l
        _value = np.mean(np.logaddexp(0.0, _logits) - _y * _logits)
        _value += 0.5 * L2_PENALTY * float(_w @ _w)
        _residual = (special.expit(_logits) - _y) / _n
        _grad = np.append(_x.T @ _residual + L2_PENALTY * _w, _residual.sum())
        return _value, _grad

    _fit = optimize.minimize(
        _loss,
        np.zeros(_L + 1),
        jac=True,
        method="L-BFGS-B",
        options={"gtol": TOLERANCE, "maxiter": 1000},
    )
    if not _fit.success:
        _logger.warning("logistic probe did not converge: %s", _fit.message)
    return _fit.x[:_L], float(_fit.x[_L])


def binarize_factor(values) -> np.ndarray:
    """1 for the upper half of a factor's integer range, 0 for the lower half

    >>> binarize_factor([0, 1, 2, 3]).tolist()
    [0, 0, 1, 1]
    """
    _values = np.asarray(values, dtype=np.int64)
    _threshold = (_values.min() + _values.max() + 1) // 2
    return (_values >= _threshold).astype(np.int64)


def probe_factors(
    z, factors, names, folds: int = 5, seed: int = 0
) -> list[dict]:
    """one row per score: each factor's probe, its label-permuted control, its informativeness

    a factor with a single value gets no probe rows and an `OMITTED` informativeness
    """
    _z = np.asarray(z, dtype=np.float64)
    _factors = np.asarray(factors)
    _rows = []
    _rng = np.random.default_rng(seed)
    for _name, _factor in zip(names, _factors.T):
        _labels = binarize_factor(_factor)
        try:
            _real = latent_probe(_z, _labels, folds, seed)
            _control = latent_probe(_z, _rng.permutation(_labels), folds, seed)
        except (exceptions.UndefinedMetric, exceptions.UsageError) as _error:
            _logger.warning("probe on %s skipped: %s", _name, _error)
            continue
        _rows.append({"metric": f"auroc_{_name}", "value": _real.mean, "std": _real.std})
        _rows.append(
            {"metric": f"auroc_{_name}_permuted", "value": _control.mean, "std": _control.std}
        )
    for _score in informativeness(_z, _factors, list(names)):
        _rows.append(
            {
                "metric": f"informativeness_{_score.factor}",
                "value": OMITTED if _score.omitted else _score.score,
                "std": "",
            }
        )
    return _rows


def _stratified_folds(labels: np.ndarray, folds: int, rng: np.random.Generator):
    _assigned = [[] for _ in range(folds)]
    for _class in (0, 1):
        _members = rng.permutation(np.flatnonzero(labels == _class))
        for _fold, _chunk in enumerate(np.array_split(_members, folds)):
            _assigned[_fold].extend(_chunk.tolist())
    return [np.sort(np.array(_fold, dtype=np.int64)) for _fold in _assigned]
