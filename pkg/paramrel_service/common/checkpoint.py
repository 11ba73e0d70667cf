"""PRLC checkpoints: named float32 tensors behind a CRC32 footer

layout (all integers unsigned 32-bit little-endian):
```
b"PRLC" | version | tensor count
per tensor: name length | utf-8 name | rank | dims... | float32 payload
CRC32 of every preceding byte
```
"""

import logging
import struct
import zlib
from pathlib import Path

import numpy as np

from paramrel_toolkit.nn import ParamStore

from .exceptions import (
    CheckpointCorrupted,
    CheckpointMismatch,
    EmitError,
)


__all__ = (
    "FORMAT_VERSION",
    "MAGIC",
    "decode_checkpoint",
    "encode_checkpoint",
    "load_checkpoint",
    "restore_checkpoint",
    "save_checkpoint",
)

_logger = logging.getLogger(__name__)

MAGIC = b"PRLC"
FORMAT_VERSION = 1
_U32 = struct.Struct("<I")
_HEADER = struct.Struct("<4sII")


def encode_checkpoint(store: ParamStore) -> bytes:
    _chunks = [_HEADER.pack(MAGIC, FORMAT_VERSION, len(store))]
    for _name, _tensor in store.items():
        _name_bytes = _name.encode("utf-8")
        _chunks.append(_U32.pack(len(_name_bytes)))
        _chunks.append(_name_bytes)
        _chunks.append(_U32.pack(_tensor.ndim))
        _chunks.extend(_U32.pack(_dim) for _dim in _tensor.shape)
        _chunks.append(_tensor.data.astype("<f4").tobytes())
    _body = b"".join(_chunks)
    return _body + _U32.pack(zlib.crc32(_body))


def decode_checkpoint(raw: bytes) -> ParamStore:
    if len(raw) < _HEADER.size + _U32.size:
        raise CheckpointCorrupted("file too short for a checkpoint", offset=len(raw))
    _body, (_expected_crc,) = raw[:-_U32.size], _U32.unpack(raw[-_U32.size:])
    _magic, _version, _count = _HEADER.unpack_from(_body)
    if _magic != MAGIC:
        raise CheckpointCorrupted(f"bad magic {_magic!r}", offset=0)
    if zlib.crc32(_body) != _expected_crc:
        raise CheckpointCorrupted("CRC mismatch", offset=len(_body))
    if _version != FORMAT_VERSION:
        raise CheckpointCorrupted(
            f"format version {_version} (expected {FORMAT_VERSION})", offset=4
        )
    _reader = _Reader(_body, _HEADER.size)
    _store = ParamStore()
    for _ in range(_count):
        _name = _reader.take(_reader.u32()).decode("utf-8")
        _shape = tuple(_reader.u32() for _ in range(_reader.u32()))
        _size = int(np.prod(_shape, dtype=np.int64))
        _payload = np.frombuffer(_reader.take(4 * _size), dtype="<f4")
        _store.add(_name, _payload.astype(np.float64).reshape(_shape))
    if _reader.offset != len(_body):
        raise CheckpointCorrupted("trailing bytes after last tensor", offset=_reader.offset)
    return _store


def save_checkpoint(store: ParamStore, path: Path) -> None:
    try:
        Path(path).write_bytes(encode_checkpoint(store))
    except OSError as _error:
        raise EmitError(path, _error.strerror or str(_error)) from _error
    _logger.info("saved %d tensors to %s", len(store), path)


def load_checkpoint(path: Path) -> ParamStore:
    return decode_checkpoint(Path(path).read_bytes())


def restore_checkpoint(store: ParamStore, path: Path) -> None:
    """copy a checkpoint's tensors into an existing store with the same layout"""
    _loaded = load_checkpoint(path)
    if set(_loaded) != set(store):
        raise CheckpointMismatch(
            f"{path} holds tensors {sorted(set(_loaded) ^ set(store))} the model does not"
            " share"
        )
    for _name, _tensor in _loaded.items():
        if _tensor.shape != store[_name].shape:
            raise CheckpointMismatch(
                f"{_name}: checkpoint shape {_tensor.shape}, model shape {store[_name].shape}"
            )
        store.assign(_name, _tensor.data)


class _Reader:
    def __init__(self, raw: bytes, offset: int):
        self._raw = raw
        self.offset = offset

    def take(self, count: int) -> bytes:
        _end = self.offset + count
        if _end > len(self._raw):
            raise CheckpointCorrupted("truncated tensor record", offset=len(self._raw))
        _chunk = self._raw[self.offset : _end]
        self.offset = _end
        return _chunk

    def u32(self) -> int:
        return _U32.unpack(self.take(_U32.size))[0]
