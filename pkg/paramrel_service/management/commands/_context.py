"""what every subcommand needs: resolved config, rng streams, data, model, output directory"""

from __future__ import annotations

import dataclasses
import functools
import logging
from pathlib import Path

import numpy as np
from django.conf import settings

from paramrel_service.common.checkpoint import restore_checkpoint
from paramrel_service.common.config import RunConfig
from paramrel_service.common.emit import (
    tile_images,
    write_pgm,
)
from paramrel_service.common.idx import load_idx
from paramrel_service.common.logs import configure_run_logging
from paramrel_service.common.rng import (
    RngStreams,
    Stream,
)
from paramrel_service.evaluation import make_synthetic
from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.model import ParamRelModel
from paramrel_toolkit.schedules import AccuracySchedule


__all__ = (
    "CHECKPOINT_NAME",
    "CONFIG_NAME",
    "LoadedData",
    "METRICS_NAME",
    "RunContext",
)

_logger = logging.getLogger(__name__)

CONFIG_NAME = "config.txt"
CHECKPOINT_NAME = "checkpoint.prlc"
METRICS_NAME = "metrics.csv"


@dataclasses.dataclass(frozen=True)
class LoadedData:
    samples: np.ndarray
    image_shape: tuple[int, int]
    factors: np.ndarray | None
    """(N, F) integer factors (labels for IDX data); None when unknown"""
    factor_names: tuple[str, ...] = ()

    @property
    def data_dim(self) -> int:
        return self.samples.shape[1]


@dataclasses.dataclass
class RunContext:
    command_name: str
    config: RunConfig
    out: Path | None = None
    """explicit --out; otherwise a directory under the output root named by command and hash"""
    run_dir: Path | None = None
    """a finished training run to load the model from"""
    expects_trained_model: bool = True

    @functools.cached_property
    def streams(self) -> RngStreams:
        return RngStreams(self.config["seed"])

    @functools.cached_property
    def schedule(self) -> AccuracySchedule:
        return self.config.schedule()

    @functools.cached_property
    def out_dir(self) -> Path:
        """created on first use, with the run log attached and the resolved config written"""
        _dir = self.out or (
            settings.PARAMREL_OUT_ROOT / f"{self.command_name}-{self.config.config_hash}"
        )
        _dir.mkdir(parents=True, exist_ok=True)
        configure_run_logging(_dir / settings.PARAMREL_RUN_LOG_NAME)
        self.config.write(_dir / CONFIG_NAME)
        _logger.info(
            "%s: writing to %s (config %s)", self.command_name, _dir, self.config.config_hash
        )
        return _dir

    @functools.cached_property
    def data(self) -> LoadedData:
        if self.config.is_synthetic:
            _dataset = make_synthetic(
                self.config["data.source"], self.config["data.n"], self.config["seed"]
            )
            return LoadedData(
                samples=_dataset.samples,
                image_shape=_dataset.image_shape,
                factors=_dataset.factors,
                factor_names=_dataset.factor_names,
            )
        _labels_path = self.config["data.idx_labels_path"] or None
        _idx = load_idx(Path(self.config["data.idx_path"]), self.config.data_kind, _labels_path)
        return LoadedData(
            samples=_idx.samples,
            image_shape=_idx.image_shape,
            factors=None if _idx.labels is None else _idx.labels[:, None],
            factor_names=("label",) if _idx.labels is not None else (),
        )

    @functools.cached_property
    def model(self) -> ParamRelModel:
        _model = ParamRelModel.initialize(
            self.config.model_config(self.data.data_dim),
            self.streams.generator(Stream.INIT),
        )
        if self.run_dir is None:
            if self.expects_trained_model:
                _logger.warning("no --run given; using an untrained model")
        else:
            restore_checkpoint(_model.store, self.run_dir / CHECKPOINT_NAME)
        return _model

    @property
    def value_range(self) -> tuple[float, float]:
        """pixel values mapped to black and white in image dumps"""
        if self.config.data_kind is DataKind.CONTINUOUS:
            return (-1.0, 1.0)
        return (0.0, 1.0)

    def output_path(self, name: str) -> Path:
        return self.out_dir / name

    def write_grid(self, name: str, images, columns: int) -> Path:
        _path = self.output_path(name)
        write_pgm(
            tile_images(images, self.data.image_shape, columns, fill=self.value_range[0]),
            _path,
            self.value_range,
        )
        return _path

    def example(self, index: int) -> np.ndarray:
        _count = self.data.samples.shape[0]
        if not 0 <= index < _count:
            raise exceptions.UsageError(f"example index {index} outside [0, {_count})")
        return self.data.samples[index]
