"""figures as data: binary PGM (P5) grids and RFC 4180 CSV"""

import csv
import logging
from collections import abc
from pathlib import Path

import numpy as np

from paramrel_toolkit import exceptions

from .exceptions import EmitError


__all__ = (
    "pgm_bytes",
    "tile_images",
    "write_csv",
    "write_pgm",
)

_logger = logging.getLogger(__name__)


def pgm_bytes(image, value_range: tuple[float, float] = (-1.0, 1.0)) -> bytes:
    """an (h, w) image as P5 bytes, `value_range` mapped linearly onto 0..255

    >>> pgm_bytes([[-1.0, 1.0]])
    b'P5\\n2 1\\n255\\n\\x00\\xff'
    """
    _image = np.asarray(image, dtype=np.float64)
    if _image.ndim != 2:
        raise exceptions.DimensionError(f"expected a 2-d image, got shape {_image.shape}")
    _lo, _hi = value_range
    if not _hi > _lo:
        raise exceptions.UsageError(f"empty value range {value_range}")
    _scaled = np.clip(np.rint((_image - _lo) / (_hi - _lo) * 255.0), 0, 255)
    _height, _width = _image.shape
    return b"P5\n%d %d\n255\n" % (_width, _height) + _scaled.astype(np.uint8).tobytes()


def write_pgm(image, path: Path, value_range: tuple[float, float] = (-1.0, 1.0)) -> None:
    _write_bytes(Path(path), pgm_bytes(image, value_range))


def tile_images(
    images, image_shape: tuple[int, int], columns: int, *, pad: int = 1, fill: float = 0.0
) -> np.ndarray:
    """lay flat images out row-major on one canvas, `pad` pixels of `fill` between them"""
    _images = np.asarray(images, dtype=np.float64).reshape((-1,) + tuple(image_shape))
    _count = _images.shape[0]
    if _count == 0 or columns < 1:
        raise exceptions.UsageError("need at least one image and one column")
    _rows = -(-_count // columns)
    _h, _w = image_shape
    _canvas = np.full(
        (_rows * (_h + pad) + pad, columns * (_w + pad) + pad), fill, dtype=np.float64
    )
    for _index, _image in enumerate(_images):
        _top = pad + (_index // columns) * (_h + pad)
        _left = pad + (_index % columns) * (_w + pad)
        _canvas[_top : _top + _h, _left : _left + _w] = _image
    return _canvas


def write_csv(
    header: abc.Sequence[str], rows: abc.Iterable[abc.Mapping | abc.Sequence], path: Path
) -> None:
    """CRLF-terminated rows, fields quoted only when they must be"""
    _path = Path(path)
    try:
        with _path.open("w", newline="", encoding="utf-8") as _file:
            _writer = csv.writer(_file, lineterminator="\r\n")
            _writer.writerow(header)
            for _row in rows:
                _writer.writerow(
                    [_row[_key] for _key in header]
                    if isinstance(_row, abc.Mapping)
                    else _row
                )
    except OSError as _error:
        raise EmitError(_path, _error.strerror or str(_error)) from _error
    _logger.debug("wrote %s", _path)


def _write_bytes(path: Path, payload: bytes) -> None:
    try:
        path.write_bytes(payload)
    except OSError as _error:
        raise EmitError(path, _error.strerror or str(_error)) from _error
    _logger.debug("wrote %s", path)
