"""8x8 toy images with known generative factors

every factor combination appears equally often (up to one example), so
with `N >= 200` each factor value is seen at least 20 times
"""

from __future__ import annotations

import dataclasses
import enum
import itertools

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind


__all__ = (
    "IMAGE_SHAPE",
    "MIN_EXAMPLES",
    "FactorDataset",
    "SyntheticKind",
    "make_synthetic",
)

IMAGE_SHAPE = (8, 8)
MIN_EXAMPLES = 200
BLOB_NOISE = 0.05
_POSITIONS = np.arange(4)


@enum.unique
class SyntheticKind(enum.Enum):
    BLOBS_CONTINUOUS = "blobs_continuous"
    SHAPES_BINARY = "shapes_binary"

    @property
    def data_kind(self) -> DataKind:
        if self is SyntheticKind.BLOBS_CONTINUOUS:
            return DataKind.CONTINUOUS
        return DataKind.DISCRETE

    @property
    def factor_names(self) -> tuple[str, ...]:
        if self is SyntheticKind.BLOBS_CONTINUOUS:
            return ("x", "y", "intensity")
        return ("shape", "x", "y")


@dataclasses.dataclass(frozen=True)
class FactorDataset:
    samples: np.ndarray
    """(N, 64): floats in [-1, 1] or {0, 1} classes"""
    factors: np.ndarray
    """(N, F) integer factor values"""
    factor_names: tuple[str, ...]
    kind: SyntheticKind
    image_shape: tuple[int, int] = IMAGE_SHAPE

    @property
    def data_kind(self) -> DataKind:
        return self.kind.data_kind

    def factor(self, name: str) -> np.ndarray:
        try:
            return self.factors[:, self.factor_names.index(name)]
        except ValueError:
            raise exceptions.UsageError(f"no factor {name!r} in {self.factor_names}")


def make_synthetic(kind: SyntheticKind | str, N: int, seed: int) -> FactorDataset:
    try:
        _kind = SyntheticKind(kind)
    except ValueError:
        raise exceptions.UsageError(f"unknown synthetic dataset {kind!r}")
    if N < MIN_EXAMPLES:
        raise exceptions.UsageError(f"need at least {MIN_EXAMPLES} examples (got {N})")
    _rng = np.random.default_rng(seed)
    _factors = _balanced_factors(_kind, N, _rng)
    if _kind is SyntheticKind.BLOBS_CONTINUOUS:
        _samples = _blobs(_factors, _rng)
    else:
        _samples = _shapes(_factors)
    return FactorDataset(
        samples=_samples,
        factors=_factors,
        factor_names=_kind.factor_names,
        kind=_kind,
    )


###
# local helpers


def _balanced_factors(kind: SyntheticKind, N: int, rng: np.random.Generator) -> np.ndarray:
    # 4 x 4 positions times 2 of the remaining factor: 32 combinations
    if kind is SyntheticKind.BLOBS_CONTINUOUS:
        _grid = list(itertools.product(_POSITIONS, _POSITIONS, (0, 1)))
    else:
        _grid = list(itertools.product((0, 1), _POSITIONS, _POSITIONS))
    _combos = np.array(_grid, dtype=np.int64)
    return _combos[rng.permutation(np.arange(N) % len(_combos))]


def _blobs(factors: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    _rows, _cols = np.mgrid[0:8, 0:8]
    _centers = 1.0 + (5.0 / 3.0) * factors[:, :2].astype(np.float64)
    _dx = _cols[None] - _centers[:, 0, None, None]
    _dy = _rows[None] - _centers[:, 1, None, None]
    _bump = np.exp(-0.5 * (_dx * _dx + _dy * _dy))
    _amplitude = 1.0 + factors[:, 2].astype(np.float64)
    _images = -1.0 + _amplitude[:, None, None] * _bump
    _images = _images + BLOB_NOISE * rng.standard_normal(_images.shape)
    return np.clip(_images, -1.0, 1.0).reshape(len(factors), -1)


_OFFSETS = np.array([0, 2, 3, 5])
_SQUARE = np.ones((3, 3), dtype=np.int64)
_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=np.int64)


def _shapes(factors: np.ndarray) -> np.ndarray:
    _images = np.zeros((len(factors),) + IMAGE_SHAPE, dtype=np.int64)
    for _image, (_shape, _x, _y) in zip(_images, factors):
        _top, _left = _OFFSETS[_y], _OFFSETS[_x]
        _image[_top : _top + 3, _left : _left + 3] = _SQUARE if _shape == 0 else _CROSS
    return _images.reshape(len(factors), -1)
