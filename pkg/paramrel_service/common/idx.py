"""IDX (MNIST-style) files: big-endian header, unsigned-byte payload, optionally gzipped"""

import dataclasses
import gzip
import logging
from pathlib import Path

import numpy as np

from paramrel_toolkit.data_kinds import DataKind

from .exceptions import FormatError


__all__ = (
    "IMAGES_MAGIC",
    "LABELS_MAGIC",
    "IdxData",
    "load_idx",
    "parse_idx",
    "scale_pixels",
)

_logger = logging.getLogger(__name__)

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801
BINARIZE_THRESHOLD = 0.5


@dataclasses.dataclass(frozen=True)
class IdxData:
    samples: np.ndarray
    """(N, rows * cols): floats in [-1, 1] (continuous) or classes {0, 1} (discrete)"""
    image_shape: tuple[int, int]
    labels: np.ndarray | None = None


def parse_idx(raw: bytes, expected_magic: int) -> np.ndarray:
    """the unsigned-byte array an IDX buffer holds, shaped by its header dims"""
    if len(raw) < 4:
        raise FormatError("missing IDX magic", offset=len(raw))
    _magic = int.from_bytes(raw[:4], "big")
    if _magic != expected_magic:
        raise FormatError(
            f"IDX magic 0x{_magic:08x} (expected 0x{expected_magic:08x})", offset=0
        )
    _rank = expected_magic & 0xFF
    _header_size = 4 + 4 * _rank
    if len(raw) < _header_size:
        raise FormatError("truncated IDX header", offset=len(raw))
    _dims = tuple(int(_d) for _d in np.frombuffer(raw, dtype=">u4", count=_rank, offset=4))
    _expected = _header_size + int(np.prod(_dims, dtype=np.int64))
    if len(raw) < _expected:
        raise FormatError(
            f"IDX payload truncated ({_expected - len(raw)} bytes missing)",
            offset=len(raw),
        )
    if len(raw) > _expected:
        _logger.warning("ignoring %d bytes after the IDX payload", len(raw) - _expected)
    return np.frombuffer(raw, dtype=np.uint8, count=_expected - _header_size, offset=_header_size).reshape(_dims)


def scale_pixels(pixels: np.ndarray, kind: DataKind) -> np.ndarray:
    """bytes to [-1, 1] floats, or to {0, 1} classes thresholded at 0.5 of full scale"""
    _unit = pixels.astype(np.float64) / 255.0
    if kind is DataKind.CONTINUOUS:
        return 2.0 * _unit - 1.0
    return (_unit > BINARIZE_THRESHOLD).astype(np.int64)


def load_idx(
    path: Path, kind: DataKind, labels_path: Path | None = None
) -> IdxData:
    _images = parse_idx(_read(path), IMAGES_MAGIC)
    _count, _rows, _cols = _images.shape
    _labels = None
    if labels_path is not None:
        _labels = parse_idx(_read(labels_path), LABELS_MAGIC).astype(np.int64)
        if _labels.shape[0] != _count:
            raise FormatError(
                f"{labels_path} has {_labels.shape[0]} labels for {_count} images",
                offset=4,
            )
    _logger.info("loaded %d images of %dx%d from %s", _count, _rows, _cols, path)
    return IdxData(
        samples=scale_pixels(_images.reshape(_count, _rows * _cols), kind),
        image_shape=(_rows, _cols),
        labels=_labels,
    )


def _read(path: Path) -> bytes:
    _path = Path(path)
    if _path.suffix == ".gz":
        with gzip.open(_path, "rb") as _file:
            return _file.read()
    return _path.read_bytes()
