import gzip
import struct
import tempfile
import unittest
import zlib
from pathlib import Path

import numpy as np

from paramrel_service.common.checkpoint import (
    MAGIC,
    decode_checkpoint,
    encode_checkpoint,
    load_checkpoint,
    restore_checkpoint,
    save_checkpoint,
)
from paramrel_service.common.config import (
    parse_config,
    parse_lines,
)
from paramrel_service.common.emit import (
    pgm_bytes,
    tile_images,
    write_csv,
    write_pgm,
)
from paramrel_service.common.exceptions import (
    CheckpointCorrupted,
    CheckpointMismatch,
    EmitError,
    FormatError,
)
from paramrel_service.common.idx import (
    IMAGES_MAGIC,
    LABELS_MAGIC,
    load_idx,
    parse_idx,
)
from paramrel_service.common.rng import (
    RngStreams,
    Stream,
)
from paramrel_service.pipeline import TrainConfig
from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.nn import ParamStore


def _idx_bytes(magic: int, dims: tuple[int, ...], payload: bytes) -> bytes:
    return struct.pack(">I", magic) + struct.pack(f">{len(dims)}I", *dims) + payload


class TestRunConfig(unittest.TestCase):
    def test_defaults(self):
        _cfg = parse_config(None)
        self.assertEqual(_cfg["schedule.T"], 10)
        self.assertEqual(_cfg["data.source"], "blobs_continuous")
        self.assertIs(_cfg.data_kind, DataKind.CONTINUOUS)
        self.assertEqual(_cfg.t_probe, 5)

    def test_hash_stable(self):
        _hash = parse_config(None).config_hash
        self.assertEqual(len(_hash), 16)
        self.assertEqual(parse_config(None).config_hash, _hash)
        self.assertNotEqual(parse_config(None, ["seed=1"]).config_hash, _hash)

    def test_override(self):
        _cfg = parse_config(None, ["schedule.T=7", "model.progressive_encoder=false"])
        self.assertEqual(_cfg["schedule.T"], 7)
        self.assertIs(_cfg["model.progressive_encoder"], False)
        self.assertEqual(_cfg.schedule().T, 7)

    def test_empty_file_is_defaults(self):
        with tempfile.TemporaryDirectory() as _tmp:
            _path = Path(_tmp) / "empty.txt"
            _path.write_text("")
            self.assertEqual(parse_config(_path).config_hash, parse_config(None).config_hash)

    def test_rendered_config_parses_back(self):
        _cfg = parse_config(None, ["train.lr=0.0005", "loss.mmd_kernel=median_rbf"])
        with tempfile.TemporaryDirectory() as _tmp:
            _path = Path(_tmp) / "config.txt"
            _cfg.write(_path)
            self.assertTrue(_path.read_text().endswith(f"# hash: {_cfg.config_hash}\n"))
            self.assertEqual(dict(parse_config(_path)), dict(_cfg))

    def test_duplicate_key_last_wins(self):
        with self.assertLogs("paramrel_service.common.config", "WARNING"):
            _values = parse_lines(["train.lr = 0.1", "# a comment", "", "train.lr = 0.2"])
        self.assertEqual(_values, {"train.lr": 0.2})

    def test_hash_sign_inside_value(self):
        _values = parse_lines(
            [
                "data.idx_path = /data/run#2/images-idx3-ubyte",
                "seed = 3  # trailing comment",
                "#seed = 4",
            ]
        )
        self.assertEqual(
            _values, {"data.idx_path": "/data/run#2/images-idx3-ubyte", "seed": 3}
        )

    def test_default_learning_rate(self):
        self.assertEqual(parse_config(None)["train.lr"], 1e-4)
        self.assertEqual(TrainConfig.from_run_config(parse_config(None)).lr, 1e-4)

    def test_errors_name_the_key(self):
        _cases = {
            "nope=1": "nope",
            "schedule.T=ten": "schedule.T",
            "train.batch_size=1": "train.batch_size",
            "model.latent_dim=33": "model.latent_dim",
            "probe.t_probe=11": "probe.t_probe",
            "data.source=idx": "data.idx_path",
        }
        for _override, _key in _cases.items():
            with self.subTest(_override):
                with self.assertRaises(exceptions.ConfigError) as _context:
                    parse_config(None, [_override])
                self.assertEqual(_context.exception.key, _key)

    def test_synthetic_source_fixes_kind(self):
        self.assertIs(
            parse_config(None, ["data.source=shapes_binary"]).data_kind, DataKind.DISCRETE
        )
        with self.assertRaises(exceptions.ConfigError) as _context:
            parse_config(None, ["data.source=shapes_binary", "schedule.kind=continuous"])
        self.assertEqual(_context.exception.key, "schedule.kind")

    def test_unreadable_file(self):
        with self.assertRaises(exceptions.ConfigError) as _context:
            parse_config(Path("/nonexistent/config.txt"))
        self.assertEqual(_context.exception.key, "--config")


class TestRngStreams(unittest.TestCase):
    def test_name_or_member(self):
        _by_name = RngStreams(3).generator("probe").random(4)
        _by_member = RngStreams(3).generator(Stream.PROBE).random(4)
        np.testing.assert_array_equal(_by_name, _by_member)

    def test_spawned_generators_differ(self):
        _first, _second = RngStreams(3).spawn(Stream.TRAIN, 2)
        self.assertFalse(np.array_equal(_first.random(4), _second.random(4)))


class TestCheckpoint(unittest.TestCase):
    def _store(self) -> ParamStore:
        _rng = np.random.default_rng(0)
        _store = ParamStore()
        _store.add("encoder.weight", _rng.normal(size=(3, 4)))
        _store.add("decoder.bias", _rng.normal(size=5))
        return _store

    def test_round_trip(self):
        _store = self._store()
        _loaded = decode_checkpoint(encode_checkpoint(_store))
        self.assertEqual(list(_loaded), list(_store))
        for _name in _store:
            np.testing.assert_allclose(
                _loaded[_name].data, _store[_name].data, rtol=6e-8, atol=0
            )

    def test_flipped_byte(self):
        _raw = bytearray(encode_checkpoint(self._store()))
        _raw[len(_raw) // 2] ^= 0x01
        with self.assertRaises(CheckpointCorrupted):
            decode_checkpoint(bytes(_raw))

    def test_wrong_version(self):
        _raw = encode_checkpoint(self._store())
        _body = bytearray(_raw[:-4])
        _body[4:8] = struct.pack("<I", 2)
        with self.assertRaises(CheckpointCorrupted) as _context:
            decode_checkpoint(bytes(_body) + struct.pack("<I", zlib.crc32(_body)))
        self.assertEqual(_context.exception.offset, 4)

    def test_empty_store(self):
        _raw = encode_checkpoint(ParamStore())
        self.assertEqual(_raw[:4], MAGIC)
        self.assertEqual(struct.unpack("<I", _raw[8:12])[0], 0)
        self.assertEqual(len(decode_checkpoint(_raw)), 0)

    def test_save_and_restore(self):
        _store = self._store()
        _target = ParamStore()
        _target.add("encoder.weight", np.zeros((3, 4)))
        _target.add("decoder.bias", np.zeros(5))
        with tempfile.TemporaryDirectory() as _tmp:
            _path = Path(_tmp) / "checkpoint.prlc"
            save_checkpoint(_store, _path)
            self.assertEqual(len(load_checkpoint(_path)), 2)
            restore_checkpoint(_target, _path)
            np.testing.assert_allclose(
                _target["decoder.bias"].data, _store["decoder.bias"].data, rtol=6e-8
            )
            _other = ParamStore()
            _other.add("encoder.weight", np.zeros((4, 3)))
            _other.add("decoder.bias", np.zeros(5))
            with self.assertRaises(CheckpointMismatch):
                restore_checkpoint(_other, _path)

    def test_unwritable_path(self):
        with self.assertRaises(EmitError):
            save_checkpoint(self._store(), Path("/nonexistent/dir/checkpoint.prlc"))


class TestIdx(unittest.TestCase):
    _payload = bytes([0, 255, 127, 128, 10, 20, 30, 40])

    def test_fixture(self):
        _raw = _idx_bytes(IMAGES_MAGIC, (2, 2, 2), self._payload)
        self.assertEqual(len(_raw), 24)
        np.testing.assert_array_equal(
            parse_idx(_raw, IMAGES_MAGIC),
            np.array([[[0, 255], [127, 128]], [[10, 20], [30, 40]]], dtype=np.uint8),
        )

    def test_wrong_magic(self):
        with self.assertRaises(FormatError) as _context:
            parse_idx(_idx_bytes(LABELS_MAGIC, (8,), self._payload), IMAGES_MAGIC)
        self.assertEqual(_context.exception.offset, 0)

    def test_truncated(self):
        _raw = _idx_bytes(IMAGES_MAGIC, (2, 2, 2), self._payload)[:-3]
        with self.assertRaises(FormatError) as _context:
            parse_idx(_raw, IMAGES_MAGIC)
        self.assertEqual(_context.exception.offset, 21)
        with self.assertRaises(FormatError) as _context:
            parse_idx(_raw[:10], IMAGES_MAGIC)
        self.assertEqual(_context.exception.offset, 10)

    def test_load_scaled_and_binarized(self):
        with tempfile.TemporaryDirectory() as _tmp:
            _images = Path(_tmp) / "images.idx.gz"
            _labels = Path(_tmp) / "labels.idx"
            with gzip.open(_images, "wb") as _file:
                _file.write(_idx_bytes(IMAGES_MAGIC, (2, 2, 2), self._payload))
            _labels.write_bytes(_idx_bytes(LABELS_MAGIC, (2,), bytes([3, 7])))
            _binary = load_idx(_images, DataKind.DISCRETE, _labels)
            _continuous = load_idx(_images, DataKind.CONTINUOUS)
        self.assertEqual(_binary.image_shape, (2, 2))
        np.testing.assert_array_equal(_binary.samples, [[0, 1, 0, 1], [0, 0, 0, 0]])
        np.testing.assert_array_equal(_binary.labels, [3, 7])
        self.assertEqual(_continuous.samples[0, 0], -1.0)
        self.assertEqual(_continuous.samples[0, 1], 1.0)
        self.assertIsNone(_continuous.labels)


class TestEmit(unittest.TestCase):
    def test_pgm(self):
        _bytes = pgm_bytes(np.array([[-1.0, 1.0], [1.0, -1.0]]))
        self.assertEqual(_bytes, b"P5\n2 2\n255\n\x00\xff\xff\x00")

    def test_pgm_rejects_empty_range(self):
        with self.assertRaises(exceptions.UsageError):
            pgm_bytes(np.zeros((2, 2)), (1.0, 1.0))

    def test_tile(self):
        _canvas = tile_images(np.ones((3, 4)), (2, 2), columns=2, pad=1, fill=0.0)
        self.assertEqual(_canvas.shape, (7, 7))
        self.assertEqual(_canvas.sum(), 12.0)
        self.assertEqual(_canvas[1, 1], 1.0)
        self.assertEqual(_canvas[0, 0], 0.0)

    def test_csv_quoting(self):
        with tempfile.TemporaryDirectory() as _tmp:
            _path = Path(_tmp) / "rows.csv"
            write_csv(("metric", "value"), [{"metric": "a,b", "value": 1.5}, ("c", 2)], _path)
            self.assertEqual(_path.read_bytes(), b'metric,value\r\n"a,b",1.5\r\nc,2\r\n')

    def test_write_pgm(self):
        with tempfile.TemporaryDirectory() as _tmp:
            _path = Path(_tmp) / "image.pgm"
            write_pgm(np.zeros((1, 3)), _path, (0.0, 1.0))
            self.assertEqual(_path.read_bytes(), b"P5\n3 1\n255\n\x00\x00\x00")


if __name__ == "__main__":
    unittest.main()
